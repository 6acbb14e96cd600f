"""Brute-force finite-group oracle.

Everything in this module works by explicit enumeration inside a pattern
group: matrices are built, orbits are closed by breadth-first search, and
the defining double sums are evaluated term by term.  Nothing here shares
code with the symbolic rules in :mod:`superchar.ring`; that independence is
the point -- the oracle is the referee for every symbolic identity, at desk
scale only.

Budgets are hard: a job larger than its budget raises :class:`BudgetError`
instead of grinding.  The default enumeration bound is 3^6 = 729 elements
(U_4(3)); the default bound for double-sum superinduction is 2^6 = 64
(U_4(2)), with larger runs available by passing an explicit budget.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .qcoeff import Cyclotomic, is_prime
from .setpart import LabeledSetPartition, PartitionIndex, enumerate_compatible

__all__ = [
    "BudgetError",
    "PatternGroup",
    "SuperclassTable",
    "brute_superinduce",
    "brute_inner_product",
    "z_value",
    "sg_matrices",
    "sg_ones",
    "sg_sow",
    "sg_identity_a",
    "sg_identity_b",
    "permchar_hypothesis_check",
    "DEFAULT_MAX_GROUP",
    "DEFAULT_MAX_BRUTE",
]

DEFAULT_MAX_GROUP = 3 ** 6
DEFAULT_MAX_BRUTE = 2 ** 6


class BudgetError(RuntimeError):
    """A brute-force request exceeded its enumeration budget."""


def _is_transitively_closed(positions):
    ps = set(positions)
    for (i, j) in ps:
        for (k, l) in ps:
            if j == k and (i, l) not in ps:
                return False
    return True


class PatternGroup:
    """A pattern group: unipotent matrices over F_p supported on a
    transitively closed set of strictly-upper positions.

    Elements are indexed 0..size-1 by reading the entries at the sorted
    position list as base-p digits; index 0 is the identity (resp. the zero
    algebra element).
    """

    def __init__(self, n, positions, p, max_size=None, index=None):
        if not is_prime(p):
            raise ValueError("p must be prime, got %r" % (p,))
        positions = tuple(sorted((int(i), int(j)) for (i, j) in positions))
        for (i, j) in positions:
            if not (1 <= i < j <= n):
                raise ValueError("position (%d,%d) is not strictly upper in 1..%d" % (i, j, n))
        if len(set(positions)) != len(positions):
            raise ValueError("repeated position")
        if not _is_transitively_closed(positions):
            raise ValueError("position set is not transitively closed")
        size = p ** len(positions)
        bound = DEFAULT_MAX_GROUP if max_size is None else max_size
        if size > bound:
            raise BudgetError(
                "pattern group of size %d^%d = %d exceeds the budget %d"
                % (p, len(positions), size, bound)
            )
        self.n = n
        self.p = p
        self.positions = positions
        self.pos_at = {pos: k for k, pos in enumerate(positions)}
        self.size = size
        self.index = index  # PartitionIndex when built as a parabolic
        self._group_mats = None
        self._class_table = None
        self._dual = None
        self._ltab = None
        self._rtab = None
        self._char_rows = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def full(cls, n, p, max_size=None):
        """The full unipotent group U_n(p)."""
        positions = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        return cls(n, positions, p, max_size=max_size, index=PartitionIndex.full(n))

    @classmethod
    def parabolic(cls, index, p, max_size=None):
        """U_K for a partition index K: positions are the pairs inside parts."""
        positions = []
        for part in index.parts:
            for i in part:
                for j in part:
                    if i < j:
                        positions.append((i, j))
        return cls(index.n, positions, p, max_size=max_size, index=index)

    @classmethod
    def from_subset(cls, subset, n, p, max_size=None):
        return cls.parabolic(PartitionIndex.from_subset(subset, n), p, max_size=max_size)

    # -- element encoding ----------------------------------------------------

    def vec_of_index(self, idx):
        p = self.p
        vec = []
        for _ in self.positions:
            vec.append(idx % p)
            idx //= p
        return tuple(vec)

    def index_of_vec(self, vec):
        idx = 0
        for v in reversed(vec):
            idx = idx * self.p + v
        return idx

    def matrix_of_vec(self, vec, unipotent):
        n = self.n
        rows = [[1 if (unipotent and i == j) else 0 for j in range(n)] for i in range(n)]
        for (i, j), v in zip(self.positions, vec):
            rows[i - 1][j - 1] = v
        return tuple(tuple(r) for r in rows)

    def group_matrix(self, idx):
        return self.matrix_of_vec(self.vec_of_index(idx), True)

    def algebra_matrix(self, idx):
        return self.matrix_of_vec(self.vec_of_index(idx), False)

    def vec_of_matrix(self, mat):
        """Read the mask coordinates; None when an off-mask strictly-upper
        entry is nonzero (i.e. the matrix is not supported on this group)."""
        n = self.n
        mask = self.pos_at
        vec = [0] * len(self.positions)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                v = mat[i - 1][j - 1] % self.p
                if v:
                    k = mask.get((i, j))
                    if k is None:
                        return None
                    vec[k] = v
        return tuple(vec)

    def group_index(self, mat):
        vec = self.vec_of_matrix(mat)
        return None if vec is None else self.index_of_vec(vec)

    algebra_index = group_index  # same coordinates, different diagonal

    def group_matrices(self):
        if self._group_mats is None:
            self._group_mats = [self.group_matrix(i) for i in range(self.size)]
        return self._group_mats

    def matmul(self, A, B):
        """Product of two upper-triangular matrices mod p."""
        n, p = self.n, self.p
        out = []
        for i in range(n):
            row = [0] * n
            Ai = A[i]
            for j in range(i, n):
                s = 0
                for k in range(i, j + 1):
                    a = Ai[k]
                    if a:
                        s += a * B[k][j]
                row[j] = s % p
            out.append(tuple(row))
        return tuple(out)

    def group_inverse(self, A):
        """Inverse of a unipotent matrix: alternating geometric series of the
        strictly upper part."""
        n, p = self.n, self.p
        N = tuple(tuple((A[i][j] if j > i else 0) for j in range(n)) for i in range(n))
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        out = ident
        term = ident
        sign = -1
        for _ in range(n - 1):
            term = self.matmul(term, N)
            out = tuple(
                tuple((out[i][j] + sign * term[i][j]) % p for j in range(n)) for i in range(n)
            )
            sign = -sign
        return out

    def elementary(self, pos, a):
        """The group element 1 + a*E_pos."""
        n = self.n
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        rows[pos[0] - 1][pos[1] - 1] = a % self.p
        return tuple(tuple(r) for r in rows)

    # -- superclasses --------------------------------------------------------

    def superclass_table(self):
        """Orbits of the algebra under two-sided multiplication by the group,
        closed by BFS over one-sided elementary moves.

        When the group carries a partition index, classes are listed in the
        enumeration order of their labeled set partitions and represented by
        the corresponding u_mu - 1; otherwise by their minimal element.
        """
        if self._class_table is not None:
            return self._class_table
        p = self.p
        gens = [self.elementary(pos, a) for pos in self.positions for a in range(1, p)]
        seen = [False] * self.size
        orbits = []
        class_of = [-1] * self.size
        for start in range(self.size):
            if seen[start]:
                continue
            cid = len(orbits)
            frontier = [start]
            seen[start] = True
            members = [start]
            class_of[start] = cid
            while frontier:
                new = []
                for idx in frontier:
                    A = self.algebra_matrix(idx)
                    for g in gens:
                        for B in (self.matmul(g, A), self.matmul(A, g)):
                            j = self.algebra_index(B)
                            if not seen[j]:
                                seen[j] = True
                                class_of[j] = cid
                                members.append(j)
                                new.append(j)
                frontier = new
            orbits.append(sorted(members))

        if self.index is not None:
            labels = list(enumerate_compatible(self.index, p))
            if len(labels) != len(orbits):
                raise AssertionError(
                    "superclass count %d does not match label count %d"
                    % (len(orbits), len(labels))
                )
            reps, ordered, label_list = [], [], []
            taken = set()
            for lam in labels:
                rep = self.index_of_superclass_label(lam)
                cid = class_of[rep]
                if cid in taken:
                    raise AssertionError("two labels landed in one superclass")
                taken.add(cid)
                reps.append(rep)
                ordered.append(orbits[cid])
                label_list.append(lam)
            remap = {}
            for new_cid, members in enumerate(ordered):
                for m in members:
                    remap[m] = new_cid
            class_of = [remap[i] for i in range(self.size)]
            orbits = ordered
        else:
            order = sorted(range(len(orbits)), key=lambda c: orbits[c][0])
            orbits = [orbits[c] for c in order]
            remap = {}
            for new_cid, members in enumerate(orbits):
                for m in members:
                    remap[m] = new_cid
            class_of = [remap[i] for i in range(self.size)]
            reps = [members[0] for members in orbits]
            label_list = [None] * len(orbits)

        self._class_table = SuperclassTable(self, reps, orbits, class_of, label_list)
        return self._class_table

    def index_of_superclass_label(self, lam):
        """Algebra index of u_mu - 1 for a labeled partition mu."""
        vec = [0] * len(self.positions)
        for arc in lam.arcs:
            k = self.pos_at.get((arc.left, arc.right))
            if k is None:
                raise ValueError("arc %d-%d is not a position of this group" % (arc.left, arc.right))
            vec[k] = arc.label % self.p
            if vec[k] == 0:
                raise ValueError("arc label vanishes mod p")
        return self.index_of_vec(tuple(vec))

    # -- supercharacters (two-sided dual orbits) ------------------------------

    def _dual_orbits(self):
        """Orbits of the dual space under (x.lam.y)(A) = lam(x^-1 A y^-1),
        closed over elementary moves; returns (orbits, orbit_of, right_sizes).

        For e = 1 + a E_(u,v):  (e.lam)(E_ij) = lam(E_ij) - a [v==i] lam(E_uj)
        and (lam.e)(E_ij) = lam(E_ij) - a [j==u] lam(E_iv).
        """
        if self._dual is not None:
            return self._dual
        p = self.p
        positions = self.positions
        pos_at = self.pos_at

        def left_move(vec, u, v, a):
            out = list(vec)
            for k, (i, j) in enumerate(positions):
                if i == v:
                    src = pos_at.get((u, j))
                    if src is not None and vec[src]:
                        out[k] = (out[k] - a * vec[src]) % p
            return tuple(out)

        def right_move(vec, u, v, a):
            out = list(vec)
            for k, (i, j) in enumerate(positions):
                if j == u:
                    src = pos_at.get((i, v))
                    if src is not None and vec[src]:
                        out[k] = (out[k] - a * vec[src]) % p
            return tuple(out)

        moves = [(u, v, a) for (u, v) in positions for a in range(1, p)]
        all_vecs = [self.vec_of_index(i) for i in range(self.size)]
        orbit_of = {}
        orbits = []
        for vec in all_vecs:
            if vec in orbit_of:
                continue
            oid = len(orbits)
            frontier = [vec]
            orbit_of[vec] = oid
            members = [vec]
            while frontier:
                new = []
                for f in frontier:
                    for (u, v, a) in moves:
                        for g in (left_move(f, u, v, a), right_move(f, u, v, a)):
                            if g not in orbit_of:
                                orbit_of[g] = oid
                                members.append(g)
                                new.append(g)
                frontier = new
            orbits.append(members)

        right_sizes = []
        for members in orbits:
            rep = members[0]
            seen = {rep}
            frontier = [rep]
            while frontier:
                new = []
                for f in frontier:
                    for (u, v, a) in moves:
                        g = right_move(f, u, v, a)
                        if g not in seen:
                            seen.add(g)
                            new.append(g)
                frontier = new
            right_sizes.append(len(seen))
        self._dual = (orbits, orbit_of, right_sizes)
        return self._dual

    def character_table(self):
        """The supercharacters as value rows over the superclass table.

        chi_lam = (|lam.G| / |G.lam.G|) * sum over the orbit of theta o mu,
        evaluated at the class representatives.  Returns a list of rows
        ``{"functional": vec, "values": tuple[Cyclotomic]}`` ordered to match
        the superclass labels when the group has them (so row i is the
        supercharacter of label i), else by minimal functional.
        """
        if self._char_rows is not None:
            return self._char_rows
        p = self.p
        table = self.superclass_table()
        orbits, orbit_of, right_sizes = self._dual_orbits()

        def value_at(members, rsize, rep_idx):
            X = self.vec_of_index(rep_idx)
            counts = [0] * p
            for mu in members:
                r = sum(a * x for a, x in zip(mu, X)) % p
                counts[r] += 1
            total = Cyclotomic.zero(p)
            for r, c in enumerate(counts):
                if c:
                    total = total + c * Cyclotomic.zeta_power(p, r)
            return Fraction(rsize, len(members)) * total

        rows = []
        for oid, members in enumerate(orbits):
            values = tuple(
                value_at(members, right_sizes[oid], rep) for rep in table.reps
            )
            rows.append({"functional": min(members), "values": values, "orbit": oid})

        if self.index is not None:
            ordered = []
            taken = set()
            for lam in table.labels:
                vec = [0] * len(self.positions)
                for arc in lam.arcs:
                    vec[self.pos_at[(arc.left, arc.right)]] = arc.label % p
                oid = orbit_of[tuple(vec)]
                if oid in taken:
                    raise AssertionError("two labels map to one dual orbit")
                taken.add(oid)
                ordered.append(rows[oid])
            rows = ordered
        else:
            rows.sort(key=lambda row: row["functional"])
        self._char_rows = rows
        return rows

    def char_values_of_functional(self, coords):
        """Supercharacter values (per superclass) of the dual orbit through
        the functional given as {(i,j): value}."""
        vec = [0] * len(self.positions)
        for pos, v in coords.items():
            vec[self.pos_at[pos]] = v % self.p
        orbits, orbit_of, right_sizes = self._dual_orbits()
        oid = orbit_of[tuple(vec)]
        table = self.superclass_table()
        p = self.p
        out = []
        for rep in table.reps:
            X = self.vec_of_index(rep)
            counts = [0] * p
            for mu in orbits[oid]:
                counts[sum(a * x for a, x in zip(mu, X)) % p] += 1
            total = Cyclotomic.zero(p)
            for r, c in enumerate(counts):
                if c:
                    total = total + c * Cyclotomic.zeta_power(p, r)
            out.append(Fraction(right_sizes[oid], len(orbits[oid])) * total)
        return tuple(out)

    # -- composition tables ---------------------------------------------------

    def action_tables(self):
        """(L, R): L[g][a] = algebra index of g*A, R[a][g] = index of A*g,
        for g a group index and a an algebra index."""
        if self._ltab is None:
            mats = self.group_matrices()
            algs = [self.algebra_matrix(i) for i in range(self.size)]
            L = [[0] * self.size for _ in range(self.size)]
            R = [[0] * self.size for _ in range(self.size)]
            for g, gm in enumerate(mats):
                for a, am in enumerate(algs):
                    L[g][a] = self.algebra_index(self.matmul(gm, am))
                    R[a][g] = self.algebra_index(self.matmul(am, gm))
            self._ltab, self._rtab = L, R
        return self._ltab, self._rtab


class SuperclassTable:
    """Superclasses of a pattern group.

    ``reps`` are algebra indices (u_mu - 1 when labels exist), ``members``
    the full orbits, ``class_of`` maps every algebra index to its class id,
    ``labels`` the labeled set partitions (or Nones).
    """

    def __init__(self, group, reps, members, class_of, labels):
        self.group = group
        self.reps = list(reps)
        self.members = [list(m) for m in members]
        self.class_of = list(class_of)
        self.labels = list(labels)

    def __len__(self):
        return len(self.reps)

    def sizes(self):
        return [len(m) for m in self.members]

    def class_of_label(self, lam):
        return self.class_of[self.group.index_of_superclass_label(lam)]

    def to_json(self):
        return {
            "n": self.group.n,
            "p": self.group.p,
            "positions": [list(pos) for pos in self.group.positions],
            "classes": [
                {
                    "rep": self.group.vec_of_index(rep),
                    "size": len(members),
                    "label": (lam.to_text() if lam is not None else None),
                }
                for rep, members, lam in zip(self.reps, self.members, self.labels)
            ],
        }


# ---------------------------------------------------------------------------
# Brute-force operations
# ---------------------------------------------------------------------------

def z_value(group, lam):
    """|G| divided by the size of the superclass of u_lam."""
    table = group.superclass_table()
    cid = table.class_of_label(lam)
    return Fraction(group.size, len(table.members[cid]))


def brute_superinduce(G, H, chi_vals, budget=None):
    """Superinduction by the defining double sum.

    ``H`` must be a pattern subgroup of ``G`` (same n and p, positions a
    subset).  ``chi_vals`` gives one Cyclotomic per H-superclass.  Returns a
    tuple of Cyclotomics, one per G-superclass:

        SInd(chi)(g) = 1/(|G||H|) * sum over x,y in G with x(g-1)y + 1 in H
                       of chi(1 + x(g-1)y).
    """
    bound = DEFAULT_MAX_BRUTE if budget is None else budget
    if G.size > bound:
        raise BudgetError(
            "brute superinduction over a group of size %d exceeds the budget %d"
            % (G.size, bound)
        )
    if (G.n, G.p) != (H.n, H.p) or not set(H.positions) <= set(G.positions):
        raise ValueError("H must be a pattern subgroup of G")

    g_table = G.superclass_table()
    h_table = H.superclass_table()
    if len(chi_vals) != len(h_table):
        raise ValueError("need one value per H-superclass")

    # Map every G-algebra index to its H-superclass (or None when the
    # element is not supported on H).
    h_pos_at = {pos: k for k, pos in enumerate(H.positions)}
    g_to_h_class = []
    for idx in range(G.size):
        vec = G.vec_of_index(idx)
        hvec = [0] * len(H.positions)
        ok = True
        for coord, pos in zip(vec, G.positions):
            if coord:
                k = h_pos_at.get(pos)
                if k is None:
                    ok = False
                    break
                hvec[k] = coord
        g_to_h_class.append(h_table.class_of[H.index_of_vec(tuple(hvec))] if ok else None)

    L, R = G.action_tables()
    scale = Fraction(1, G.size * H.size)
    out = []
    for rep in g_table.reps:
        counts = [0] * len(h_table)
        for x in range(G.size):
            xa = L[x][rep]
            row = R[xa]
            for y in range(G.size):
                c = g_to_h_class[row[y]]
                if c is not None:
                    counts[c] += 1
        total = Cyclotomic.zero(G.p)
        for c, cnt in enumerate(counts):
            if cnt:
                total = total + cnt * chi_vals[c]
        out.append(scale * total)
    return tuple(out)


def brute_inner_product(group, f_vals, g_vals):
    """<f, g> = 1/|G| sum over the group of f * conj(g), via class sizes."""
    table = group.superclass_table()
    total = Cyclotomic.zero(group.p)
    for size, a, b in zip(table.sizes(), f_vals, g_vals):
        total = total + size * (a * b.conj())
    return Fraction(1, group.size) * total


# ---------------------------------------------------------------------------
# Partial permutation matrices and the two power-sum identities
# ---------------------------------------------------------------------------

def sg_matrices(m, n):
    """All m x n 0-1 matrices with at most one 1 per row and per column,
    as tuples of row-tuples, deterministically ordered."""
    out = []
    for k in range(min(m, n) + 1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.permutations(range(n), k):
                w = [[0] * n for _ in range(m)]
                for r, c in zip(rows, cols):
                    w[r][c] = 1
                out.append(tuple(tuple(r) for r in w))
    out.sort()
    return out


def sg_ones(w):
    return sum(sum(row) for row in w)


def sg_sow(w):
    """Zeros of w lying below a 1 in their column or left of a 1 in their row."""
    m, n = len(w), len(w[0]) if w else 0
    count = 0
    for j in range(m):
        for k in range(n):
            if w[j][k]:
                continue
            if any(w[i][k] for i in range(j)) or any(w[j][l] for l in range(k + 1, n)):
                count += 1
    return count


def sg_identity_a(m, n):
    """sum over w of (q-1)^ones(w) q^sow(w), as a Laurent polynomial.
    Equals q^(mn)."""
    from .qcoeff import LaurentPoly

    total = LaurentPoly.zero()
    qm1 = LaurentPoly.q_minus_one()
    for w in sg_matrices(m, n):
        total = total + (qm1 ** sg_ones(w)).shift(sg_sow(w))
    return total


def sg_identity_b(m, n):
    """The signed sum over w of (-1)^(w_1n) (q-1)^(ones(w) - w_1n) q^sow(w).

    Shapes whose top-right corner carries a 1 enter with one fewer label
    factor (the corner label is summed against theta, contributing -1), so
    the signed sum vanishes identically in q.
    """
    from .qcoeff import LaurentPoly

    total = LaurentPoly.zero()
    qm1 = LaurentPoly.q_minus_one()
    for w in sg_matrices(m, n):
        corner = w[0][n - 1]
        term = (qm1 ** (sg_ones(w) - corner)).shift(sg_sow(w))
        total = total + (-term if corner else term)
    return total


# ---------------------------------------------------------------------------
# Permutation-character factorization of superinduction
# ---------------------------------------------------------------------------

def permchar_hypothesis_check(G, H, mu_coords, budget=None):
    """Check, by enumeration, the proportionality hypothesis and the
    factorization conclusion for a supercharacter of H inside G.

    mu_coords: functional on the H-mask as {(i,j): value}.

    hypothesis: chi(1) * Sinf(chi)(h) == Sinf(chi)(1) * chi(h) for all h in H,
    where Sinf(chi) is the G-supercharacter of the functional extended by 0.

    conclusion: SInd(chi) == (chi(1)/Sinf(chi)(1)) * Sinf(chi) * SInd(triv),
    compared on every G-superclass.

    Returns (hypothesis_holds, conclusion_holds, ratio).
    """
    p = G.p
    g_table = G.superclass_table()
    h_table = H.superclass_table()

    chi_h = H.char_values_of_functional(mu_coords)
    sinf_g = G.char_values_of_functional(mu_coords)

    # identity sits in class of the zero algebra element
    id_class_h = h_table.class_of[0]
    id_class_g = g_table.class_of[0]
    chi_deg = chi_h[id_class_h]
    sinf_deg = sinf_g[id_class_g]

    hypothesis = True
    for h_idx in range(H.size):
        # h as an element of G: same algebra support
        coords = {
            pos: v for pos, v in zip(H.positions, H.vec_of_index(h_idx)) if v
        }
        g_alg = [0] * len(G.positions)
        for pos, v in coords.items():
            g_alg[G.pos_at[pos]] = v
        g_cid = g_table.class_of[G.index_of_vec(tuple(g_alg))]
        h_cid = h_table.class_of[h_idx]
        if chi_deg * sinf_g[g_cid] != sinf_deg * chi_h[h_cid]:
            hypothesis = False
            break

    triv = tuple(Cyclotomic.one(p) for _ in range(len(h_table)))
    sind_triv = brute_superinduce(G, H, triv, budget=budget)
    sind_chi = brute_superinduce(G, H, chi_h, budget=budget)

    ratio_cyc = chi_deg * sinf_deg.inv()
    conclusion = all(
        sind_chi[c] == ratio_cyc * sinf_g[c] * sind_triv[c]
        for c in range(len(g_table))
    )
    ratio = chi_deg.as_rational() / sinf_deg.as_rational()
    return hypothesis, conclusion, ratio
