"""The supercharacter calculus.

Supercharacters of U_n(q) and its parabolic subgroups U_K are indexed by
F_q-labeled set partitions.  This module implements the symbolic layer:
exact character values, degrees, restriction to parabolic subgroups, tensor
products with diagram straightening, superinflation, superinduction, the
glued ``star`` products, inner products, and conversion between the
supercharacter and superclass-indicator bases.

Coefficients are Laurent polynomials in a formal q even though arc labels
live in a concrete F_p; every structural rule here keeps its coefficients in
Z[q, q^-1], and all cross-checks against the brute-force oracle evaluate at
q = p.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction

from .qcoeff import Cyclotomic, LaurentPoly
from .setpart import (
    Arc,
    LabeledSetPartition,
    PartitionIndex,
    enumerate_compatible,
    enumerate_labeled,
    union_K,
)

__all__ = [
    "CharCombo",
    "degree",
    "degree_in",
    "char_value",
    "char_value_in",
    "combo_value",
    "restrict_arc_interval",
    "restrict_arc_subset",
    "tensor_pair",
    "straighten",
    "tensor",
    "restrict",
    "restrict_combo",
    "sinf",
    "sinf_combo",
    "inner_product",
    "superinduce",
    "superinduce_trivial_twoblock",
    "superinduce_via_permchar",
    "star_K",
    "chi_to_kappa",
    "kappa_to_chi",
    "sinfres_identities_check",
    "reflect_combo",
]


class CharCombo:
    """A finite linear combination of supercharacters of U_K with Laurent
    polynomial coefficients.

    ``ambient`` is the PartitionIndex K (a single part means the full group);
    ``terms`` maps labeled set partitions, each with arcs inside parts of K,
    to nonzero LaurentPoly coefficients.  Instances are immutable.
    """

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient, terms=()):
        items = terms.items() if hasattr(terms, "items") else terms
        full_support = frozenset(range(1, ambient.n + 1))
        acc = {}
        for lam, c in items:
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c)
            if not c:
                continue
            if lam.support != full_support:
                raise ValueError("term support does not match ambient n=%d" % ambient.n)
            lookup = ambient.part_lookup()
            for arc in lam.arcs:
                if lookup[arc.left] != lookup[arc.right]:
                    raise ValueError(
                        "arc %d-%d straddles parts of the ambient" % (arc.left, arc.right)
                    )
            if lam in acc:
                c = acc[lam] + c
                if c:
                    acc[lam] = c
                else:
                    del acc[lam]
            else:
                acc[lam] = c
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "terms", acc)

    def __setattr__(self, name, value):
        raise AttributeError("CharCombo is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ambient):
        return cls(ambient)

    @classmethod
    def one(cls, ambient):
        """The trivial character."""
        return cls(ambient, [(LabeledSetPartition(range(1, ambient.n + 1), ()), 1)])

    @classmethod
    def of(cls, lam, ambient=None, coeff=1):
        if ambient is None:
            ambient = PartitionIndex.full(len(lam.support))
        return cls(ambient, [(lam, coeff)])

    # -- ring-module structure ------------------------------------------------

    def _same_ambient(self, other):
        if self.ambient.grouping() != other.ambient.grouping():
            raise ValueError("ambient mismatch")

    def __add__(self, other):
        self._same_ambient(other)
        acc = dict(self.terms)
        for lam, c in other.terms.items():
            s = acc.get(lam, LaurentPoly.zero()) + c
            if s:
                acc[lam] = s
            else:
                acc.pop(lam, None)
        return CharCombo(self.ambient, acc)

    def __neg__(self):
        return CharCombo(self.ambient, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly.const(c)
        if not c:
            return CharCombo.zero(self.ambient)
        return CharCombo(self.ambient, {t: k * c for t, k in self.terms.items()})

    def coeff(self, lam):
        return self.terms.get(lam, LaurentPoly.zero())

    def __eq__(self, other):
        if not isinstance(other, CharCombo):
            return NotImplemented
        return (
            self.ambient.grouping() == other.ambient.grouping()
            and self.terms == other.terms
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].arcs)

    # -- rendering -------------------------------------------------------------

    def to_text(self):
        if not self.terms:
            return "0"
        return " + ".join(
            "(%s)*chi[%s]" % (c, lam.to_text()) for lam, c in self.sorted_terms()
        )

    __str__ = to_text

    def __repr__(self):
        return "CharCombo(%s, %s)" % (self.ambient.to_text(), self.to_text())

    def to_json(self):
        return {
            "ambient": self.ambient.to_text(),
            "terms": [
                {"partition": lam.to_text(), "coeff": c.to_json()}
                for lam, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj):
        ambient = PartitionIndex.from_text(obj["ambient"])
        terms = [
            (LabeledSetPartition.from_text(t["partition"]), LaurentPoly.from_json(t["coeff"]))
            for t in obj["terms"]
        ]
        return cls(ambient, terms)

    _TERM_RE = None

    @classmethod
    def from_text(cls, s, ambient):
        """Parse the canonical rendering back into a combination."""
        import re

        if cls._TERM_RE is None:
            CharCombo._TERM_RE = re.compile(r"\(([^()]*)\)\*chi\[([^\]]*)\]")
        s = s.strip()
        if s == "0":
            return cls.zero(ambient)
        matches = cls._TERM_RE.findall(s)
        rebuilt = " + ".join("(%s)*chi[%s]" % m for m in matches)
        if rebuilt != s:
            raise ValueError("unparseable combination text")
        terms = [
            (LabeledSetPartition.from_text(part, n=ambient.n), LaurentPoly.from_text(c))
            for c, part in matches
        ]
        return cls(ambient, terms)


# ---------------------------------------------------------------------------
# Degrees and character values
# ---------------------------------------------------------------------------

def degree(lam):
    """chi^lam(1) = q to the number of support elements strictly under arcs:
    the product over arcs i-l of q^(#support strictly between i and l)."""
    support = lam.support
    e = sum(
        sum(1 for m in support if arc.left < m < arc.right) for arc in lam.arcs
    )
    return LaurentPoly.q_power(e)


def degree_in(lam, index):
    """Degree of chi^lam inside U_K: between-counts only see the arc's own
    part."""
    lookup = index.part_lookup()
    e = 0
    for arc in lam.arcs:
        part = index.parts[lookup[arc.left]]
        e += sum(1 for m in part if arc.left < m < arc.right)
    return LaurentPoly.q_power(e)


@functools.lru_cache(maxsize=None)
def _char_value_std(arcs_lam, arcs_mu, p):
    """Character value for standardized supports {1..n}; arcs as Arc tuples."""
    mu_left = {}
    mu_right = {}
    mu_label = {}
    for arc in arcs_mu:
        mu_left[arc.left] = arc
        mu_right[arc.right] = arc
        mu_label[(arc.left, arc.right)] = arc.label
    total = Cyclotomic.one(p)
    for (i, l, a) in arcs_lam:
        blocker = mu_left.get(i)
        if blocker is not None and blocker.right < l:
            return Cyclotomic.zero(p)
        blocker = mu_right.get(l)
        if blocker is not None and blocker.left > i:
            return Cyclotomic.zero(p)
        inside = sum(1 for b in arcs_mu if i < b.left and b.right < l)
        exponent = (l - i - 1) - inside
        t = mu_label.get((i, l), 0)
        factor = Cyclotomic.zeta_power(p, (a * t) % p)
        if exponent:
            factor = Fraction(p) ** exponent * factor
        total = total * factor
    return total


def char_value(lam, mu, p):
    """chi^lam(u_mu), exact in Q(zeta_p).

    The two partitions must share a support; it is standardized so the
    formula's position counts see only support elements.
    """
    if lam.support != mu.support:
        raise ValueError("character and superclass supports differ")
    n = len(lam.support)
    if lam.support == frozenset(range(1, n + 1)):
        return _char_value_std(lam.arcs, mu.arcs, p)
    lam_std, _ = lam.standardize()
    mu_std, _ = mu.standardize()
    return _char_value_std(lam_std.arcs, mu_std.arcs, p)


def char_value_in(lam, mu, index, p):
    """chi^lam(u_mu) inside U_K: the product of per-part values.

    Each factor lives on the part alone, so the support is cut down to the
    part before standardizing -- gap positions of a non-contiguous part do
    not exist inside U_K and must not enter the exponent counts.
    """
    total = Cyclotomic.one(p)
    for part in index.parts:
        ps = set(part)
        sub_l = LabeledSetPartition(
            part, [a for a in lam.arcs if a.left in ps and a.right in ps]
        ).standardize()[0]
        sub_m = LabeledSetPartition(
            part, [a for a in mu.arcs if a.left in ps and a.right in ps]
        ).standardize()[0]
        total = total * _char_value_std(sub_l.arcs, sub_m.arcs, p)
    return total


def combo_value(x, mu, p):
    """Pointwise value of a combination at the superclass of u_mu."""
    total = Cyclotomic.zero(p)
    for lam, c in x.terms.items():
        v = char_value_in(lam, mu, x.ambient, p)
        if v:
            total = total + c.eval_at(p) * v
    return total


def crossings_in(lam, index):
    """Crossing pairs whose two arcs lie in a common part of the index."""
    lookup = index.part_lookup()
    count = 0
    for (a, b) in lam.crossing_pairs():
        if lookup[a.left] == lookup[b.left]:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Restriction of a single arc character
# ---------------------------------------------------------------------------

def _single(n, arcs):
    return LabeledSetPartition(range(1, n + 1), arcs)


def _subset_bracket(i, l, a, S, n, p):
    """The parenthesized factor of the subset restriction rule (the rule's
    full value is q^{#{i<k<l, k not in S}} times this bracket)."""
    S = sorted(set(S))
    ambient = PartitionIndex.from_subset(S, n)
    between = [m for m in S if i < m < l]
    units = range(1, p)
    i_in, l_in = i in S, l in S
    terms = []
    if i_in and l_in:
        terms.append((_single(n, [(i, l, a)]), LaurentPoly.one()))
    elif (not i_in) and l_in:
        terms.append((_single(n, ()), LaurentPoly.one()))
        for j in between:
            for b in units:
                terms.append((_single(n, [(j, l, b)]), LaurentPoly.one()))
    elif i_in and not l_in:
        terms.append((_single(n, ()), LaurentPoly.one()))
        for k in between:
            for b in units:
                terms.append((_single(n, [(i, k, b)]), LaurentPoly.one()))
    else:
        s = len(between)
        const = LaurentPoly.q_minus_one() * s + LaurentPoly.one()
        terms.append((_single(n, ()), const))
        qm1 = LaurentPoly.q_minus_one()
        for jj, kk in itertools.combinations(between, 2):
            for c in units:
                terms.append((_single(n, [(jj, kk, c)]), qm1))
    return CharCombo(ambient, terms)


def restrict_arc_subset(i, l, a, S, n, p):
    """Restriction of a single-arc supercharacter to U_S, by the case rule:
    an overall q-power (counting the removed interior columns) times a
    bracket depending on which of the endpoints survive in S."""
    if not (1 <= i < l <= n):
        raise ValueError("need 1 <= i < l <= n")
    S = sorted(set(S))
    if not S or S[0] < 1 or S[-1] > n:
        raise ValueError("subset out of range")
    e = sum(1 for k in range(i + 1, l) if k not in set(S))
    return _subset_bracket(i, l, a, S, n, p).scale(LaurentPoly.q_power(e))


def restrict_arc_interval(i, l, a, j, k, n, p):
    """Restriction of a single-arc supercharacter to an interval subgroup
    U_[j,k], by the five-way case analysis (kept literal, as an independent
    path from the subset rule)."""
    if not (1 <= i < l <= n):
        raise ValueError("need 1 <= i < l <= n")
    if not (1 <= j < k <= n):
        raise ValueError("need 1 <= j < k <= n")
    ambient = PartitionIndex.from_subset(range(j, k + 1), n)
    units = range(1, p)
    one = LaurentPoly.one()
    terms = []
    if j <= i and l <= k:
        terms.append((_single(n, [(i, l, a)]), one))
    elif i < j < l <= k:
        q_pow = LaurentPoly.q_power(j - i - 1)
        terms.append((_single(n, ()), q_pow))
        for jp in range(j, l):
            for b in units:
                terms.append((_single(n, [(jp, l, b)]), q_pow))
    elif j <= i < k < l:
        q_pow = LaurentPoly.q_power(l - k - 1)
        terms.append((_single(n, ()), q_pow))
        for kp in range(i + 1, k + 1):
            for b in units:
                terms.append((_single(n, [(i, kp, b)]), q_pow))
    elif i < j and k < l:
        base = LaurentPoly.q_power(l - i - 1 - (k - j + 1))
        const = (LaurentPoly.q_minus_one() * (k - j) + LaurentPoly.q_power(1)) * base
        terms.append((_single(n, ()), const))
        side = LaurentPoly.q_minus_one() * base
        for jp in range(j, k + 1):
            for kp in range(jp + 1, k + 1):
                for b in units:
                    terms.append((_single(n, [(jp, kp, b)]), side))
    else:
        terms.append((_single(n, ()), LaurentPoly.q_power(l - i - 1)))
    return CharCombo(ambient, terms)


# ---------------------------------------------------------------------------
# Tensor products and straightening
# ---------------------------------------------------------------------------

def tensor_pair(arc1, arc2, n, p):
    """Product of two single-arc supercharacters of U_n as a combination.

    Compatible arcs (all endpoints distinct, or meeting head-to-tail) simply
    superimpose; arcs sharing a left endpoint, a right endpoint, or both
    rewrite into strictly smaller diagrams.
    """
    a1, a2 = Arc(*arc1), Arc(*arc2)
    units = range(1, p)
    one = LaurentPoly.one()
    full = PartitionIndex.full(n)

    def combo(terms):
        return CharCombo(full, terms)

    if (a1.left, a1.right) == (a2.left, a2.right):
        i, l = a1.left, a1.right
        if (a1.label + a2.label) % p == 0:
            terms = [(_single(n, ()), one)]
            for jp in range(i + 1, l):
                for c in units:
                    terms.append((_single(n, [(i, jp, c)]), one))
            for kp in range(i + 1, l):
                for c in units:
                    terms.append((_single(n, [(kp, l, c)]), one))
            for jp in range(i + 1, l):
                for kp in range(i + 1, l):
                    for c in units:
                        for d in units:
                            terms.append(
                                (_single(n, [(i, jp, c), (kp, l, d)]), one)
                            )
            return combo(terms)
        s = a1.right - a1.left - 1
        merged = (i, l, (a1.label + a2.label) % p)
        const = LaurentPoly.q_minus_one() * s + LaurentPoly.one()
        terms = [(_single(n, [merged]), const)]
        qm1 = LaurentPoly.q_minus_one()
        for jp in range(i + 1, l):
            for kp in range(jp + 1, l):
                for c in units:
                    terms.append((_single(n, [(jp, kp, c), merged]), qm1))
        return combo(terms)

    if a1.left == a2.left:
        short, long_ = (a1, a2) if a1.right < a2.right else (a2, a1)
        i, k, l = short.left, short.right, long_.right
        keep = (i, l, long_.label)
        terms = [(_single(n, [keep]), one)]
        for jp in range(i + 1, k):
            for c in units:
                terms.append((_single(n, [(jp, k, c), keep]), one))
        return combo(terms)

    if a1.right == a2.right:
        long_, short = (a1, a2) if a1.left < a2.left else (a2, a1)
        i, j, l = long_.left, short.left, long_.right
        keep = (i, l, long_.label)
        terms = [(_single(n, [keep]), one)]
        for kp in range(j + 1, l):
            for c in units:
                terms.append((_single(n, [(j, kp, c), keep]), one))
        return combo(terms)

    # head-to-tail chains and disjoint arcs superimpose directly
    return combo([(_single(n, sorted((tuple(a1), tuple(a2)))), one)])


def _conflicting_pair(arcs):
    """Lexicographically least pair sharing a left or a right endpoint."""
    for x, y in itertools.combinations(arcs, 2):
        if x.left == y.left or x.right == y.right:
            return x, y
    return None


def straighten(arcs, n, p):
    """Expand a multiset of labeled arcs on {1..n} into the supercharacter
    basis by repeatedly rewriting the least conflicting pair."""
    full = PartitionIndex.full(n)
    arcs = tuple(sorted(Arc(*a) for a in arcs))
    acc = {}
    work = [(arcs, LaurentPoly.one())]
    while work:
        cur, coeff = work.pop()
        pair = _conflicting_pair(cur)
        if pair is None:
            lam = _single(n, cur)
            s = acc.get(lam, LaurentPoly.zero()) + coeff
            if s:
                acc[lam] = s
            else:
                acc.pop(lam, None)
            continue
        x, y = pair
        rest = list(cur)
        rest.remove(x)
        rest.remove(y)
        measure = (len(cur), sum(a.right - a.left for a in cur))
        expansion = tensor_pair(x, y, n, p)
        for lam, c in expansion.terms.items():
            new = tuple(sorted(rest + list(lam.arcs)))
            new_measure = (len(new), sum(a.right - a.left for a in new))
            assert new_measure < measure, "straightening measure must drop"
            work.append((new, coeff * c))
    return CharCombo(full, acc)


def _transport_arcs(arcs, mapping):
    return tuple(Arc(mapping[a.left], mapping[a.right], a.label) for a in arcs)


def tensor(x, y, p):
    """Pointwise product of two combinations over the same ambient, expanded
    back into the supercharacter basis part by part."""
    x._same_ambient(y)
    K = x.ambient
    n = K.n
    acc = CharCombo.zero(K)
    for lam1, c1 in x.terms.items():
        for lam2, c2 in y.terms.items():
            coeff = c1 * c2
            partial = [((), LaurentPoly.one())]
            for part in K.parts:
                fwd = {v: t + 1 for t, v in enumerate(part)}
                back = {t + 1: v for t, v in enumerate(part)}
                arcs = [a for a in lam1.arcs if a.left in fwd] + [
                    a for a in lam2.arcs if a.left in fwd
                ]
                local = straighten(_transport_arcs(arcs, fwd), len(part), p)
                nxt = []
                for base_arcs, base_c in partial:
                    for lam_loc, c_loc in local.terms.items():
                        nxt.append(
                            (
                                base_arcs + _transport_arcs(lam_loc.arcs, back),
                                base_c * c_loc,
                            )
                        )
                partial = nxt
            acc = acc + CharCombo(
                K,
                [
                    (_single(n, sorted(arcs_all)), coeff * c_all)
                    for arcs_all, c_all in partial
                ],
            )
    return acc


# ---------------------------------------------------------------------------
# Restriction to parabolic subgroups
# ---------------------------------------------------------------------------

def restrict(lam, K, p):
    """Restriction of chi^lam from U_n to the parabolic U_K.

    Each arc factors over the parts of K (each part's subset-rule bracket);
    within every part the per-arc brackets multiply by straightening, and
    parts combine by superimposition.
    """
    n = K.n
    if lam.support != frozenset(range(1, n + 1)):
        raise ValueError("partition support must be {1..%d}" % n)
    acc_parts = []
    for part in K.parts:
        factor = CharCombo.one(PartitionIndex.from_subset(part, n))
        fwd = {v: t + 1 for t, v in enumerate(part)}
        back = {t + 1: v for t, v in enumerate(part)}
        for arc in lam.arcs:
            bracket = _subset_bracket(arc.left, arc.right, arc.label, part, n, p)
            # multiply factor by bracket inside U_part (transport to {1..m})
            m = len(part)
            acc = {}
            for l1, c1 in factor.terms.items():
                for l2, c2 in bracket.terms.items():
                    merged = straighten(
                        _transport_arcs(l1.arcs, fwd) + _transport_arcs(l2.arcs, fwd),
                        m,
                        p,
                    )
                    for lam_loc, c_loc in merged.terms.items():
                        key = _single(n, sorted(_transport_arcs(lam_loc.arcs, back)))
                        s = acc.get(key, LaurentPoly.zero()) + c1 * c2 * c_loc
                        if s:
                            acc[key] = s
                        else:
                            acc.pop(key, None)
            factor = CharCombo(factor.ambient, acc)
        acc_parts.append(factor)
    # superimpose across parts
    combined = [((), LaurentPoly.one())]
    for factor in acc_parts:
        nxt = []
        for base_arcs, base_c in combined:
            for lam_t, c_t in factor.terms.items():
                nxt.append((base_arcs + lam_t.arcs, base_c * c_t))
        combined = nxt
    return CharCombo(
        K, [(_single(n, sorted(arcs)), c) for arcs, c in combined]
    )


def restrict_combo(x, K, p):
    """Restrict a combination on U_L to a finer parabolic U_K (every part of
    K inside a part of L), working part of L by part of L."""
    L = x.ambient
    if not K.refines(L):
        raise ValueError("target index must refine the ambient")
    n = L.n
    acc = CharCombo.zero(K)
    for lam, c in x.terms.items():
        partial = [((), c)]
        for part in L.parts:
            fwd = {v: t + 1 for t, v in enumerate(part)}
            back = {t + 1: v for t, v in enumerate(part)}
            m = len(part)
            sub = LabeledSetPartition(
                range(1, m + 1),
                _transport_arcs(
                    tuple(a for a in lam.arcs if a.left in fwd), fwd
                ),
            )
            K_part = PartitionIndex(
                m,
                [
                    tuple(sorted(fwd[v] for v in kp))
                    for kp in K.parts
                    if kp and kp[0] in fwd
                ],
            )
            local = restrict(sub, K_part, p)
            nxt = []
            for base_arcs, base_c in partial:
                for lam_loc, c_loc in local.terms.items():
                    nxt.append(
                        (base_arcs + _transport_arcs(lam_loc.arcs, back), base_c * c_loc)
                    )
            partial = nxt
        acc = acc + CharCombo(
            K, [(_single(n, sorted(arcs)), cc) for arcs, cc in partial]
        )
    return acc


# ---------------------------------------------------------------------------
# Superinflation, inner products, superinduction
# ---------------------------------------------------------------------------

def sinf(lam, K, L):
    """Superinflation at the index level: the same arcs, read in the coarser
    group.  Validates that K refines L and that lam is K-compatible."""
    if not K.refines(L):
        raise ValueError("superinflation needs the source index to refine the target")
    lookup = K.part_lookup()
    for arc in lam.arcs:
        if lookup[arc.left] != lookup[arc.right]:
            raise ValueError("partition is not compatible with the source index")
    return lam


def sinf_combo(x, L):
    """Lift a combination on U_K to U_L (K must refine L): identical terms,
    coarser ambient."""
    if not x.ambient.refines(L):
        raise ValueError("ambient must refine the inflation target")
    return CharCombo(L, dict(x.terms))


def inner_product(x, y):
    """<x, y> over the common ambient: supercharacters are orthogonal with
    squared norm q^(number of same-part crossings)."""
    x._same_ambient(y)
    total = LaurentPoly.zero()
    for lam, cx in x.terms.items():
        cy = y.terms.get(lam)
        if cy is not None:
            total = total + (cx * cy).shift(crossings_in(lam, x.ambient))
    return total


def superinduce(mu, K, p, L=None):
    """Superinduction from U_K up to U_L (default: the full group), computed
    through its adjointness with restriction: the coefficient of chi^nu is
    q^(crossings of mu in K minus crossings of nu in L) times the coefficient
    of chi^mu in the restriction of chi^nu."""
    n = K.n
    if L is None:
        L = PartitionIndex.full(n)
    if not K.refines(L):
        raise ValueError("superinduction needs the source index to refine the target")
    if K.grouping() == L.grouping():
        return CharCombo.of(mu, L)
    c_mu = crossings_in(mu, K)
    terms = []
    for nu in enumerate_compatible(L, p):
        if not _containment_prune(mu, nu):
            continue
        b = restrict_combo(CharCombo.of(nu, L), K, p).coeff(mu)
        if b:
            terms.append((nu, b.shift(c_mu - crossings_in(nu, L))))
    return CharCombo(L, terms)


def _containment_prune(mu, nu):
    """Necessary condition for chi^mu to appear in the restriction of
    chi^nu: every arc of mu lies inside the closed interval of some arc of
    nu (the restriction cases only ever shrink arcs)."""
    for a in mu.arcs:
        if not any(b.left <= a.left and a.right <= b.right for b in nu.arcs):
            return False
    return True


def superinduce_trivial_twoblock(k, n, p):
    """Closed form for superinducing the trivial character from the parabolic
    with parts {1..k} and {k+1..n}: one term per partition whose arcs all
    straddle the cut, weighted by an inverse q-power of its crossings."""
    if not (1 <= k < n):
        raise ValueError("need 1 <= k < n")
    K = PartitionIndex(n, [tuple(range(1, k + 1)), tuple(range(k + 1, n + 1))])
    terms = []
    for lam in enumerate_labeled(range(1, n + 1), p):
        if all(a.left <= k < a.right for a in lam.arcs):
            terms.append((lam, LaurentPoly.q_power(-lam.num_crossings())))
    return CharCombo(PartitionIndex.full(n), terms)


def _is_contiguous_twoblock(K):
    if len(K.parts) != 2:
        return None
    first, second = K.parts
    k = len(first)
    if first == tuple(range(1, k + 1)) and second == tuple(range(k + 1, K.n + 1)):
        return k
    return None


def _parts_are_intervals_within(K, L):
    """True when every part of K occupies consecutive positions of its
    enclosing L-part."""
    lookup = L.part_lookup()
    for part in K.parts:
        ambient = sorted(L.parts[lookup[part[0]]])
        first = ambient.index(part[0])
        if list(part) != ambient[first : first + len(part)]:
            return False
    return True


def superinduce_via_permchar(mu, K, p, L=None):
    """Superinduction through the permutation-character factorization: the
    degree ratio (a q-power) times the inflated character tensored with the
    superinduced trivial character.

    The factorization is an identity only when every part of K is an
    interval inside its L-part.  With a gap in a part, positions of U_L
    sitting under one of its arcs belong to other parts, and the inflated
    character is no longer proportional to the original on U_K (the
    enumeration oracle exhibits failures at n = 4: K = {1,4|2,3} with a
    1-4 arc).  Such indices are refused; ``superinduce`` handles them.
    """
    n = K.n
    if L is None:
        L = PartitionIndex.full(n)
    if not _parts_are_intervals_within(K, L):
        raise ValueError(
            "the factorization needs each part of %s to be an interval "
            "inside its part of %s; use superinduce for general indices"
            % (K.to_text(), L.to_text())
        )
    deg_K = degree_in(mu, K)
    deg_L = degree_in(sinf(mu, K, L), L)
    (ek, ck), = deg_K.coeffs.items() if deg_K.coeffs else [(0, 0)]
    (el, cl), = deg_L.coeffs.items() if deg_L.coeffs else [(0, 0)]
    assert ck == 1 and cl == 1, "degrees are monic q-powers"
    k = _is_contiguous_twoblock(K)
    if k is not None and L.grouping() == PartitionIndex.full(n).grouping():
        sind_triv = superinduce_trivial_twoblock(k, n, p)
    else:
        sind_triv = superinduce(
            LabeledSetPartition(range(1, n + 1), ()), K, p, L
        )
    lifted = CharCombo.of(mu, L)
    return tensor(lifted, sind_triv, p).scale(LaurentPoly.q_power(ek - el))


def star_K(lam, mu, K, p):
    """The glued product: transport lam (degree m) and mu (degree n) onto the
    two blocks of K and superinduce up to U_(m+n)."""
    if len(K.parts) != 2:
        raise ValueError("the glued product needs a two-block index")
    if (len(K.parts[0]), len(K.parts[1])) != (len(lam.support), len(mu.support)):
        raise ValueError("block sizes must match the two degrees")
    nu = union_K(lam, mu, K)
    return superinduce(nu, K, p)


# ---------------------------------------------------------------------------
# Basis conversion
# ---------------------------------------------------------------------------

def chi_to_kappa(x, p):
    """Value vector of a combination on the full group: superclass label ->
    exact value, i.e. the coefficients on the superclass-indicator basis."""
    if len(x.ambient.parts) != 1:
        raise ValueError("basis conversion lives on the full group")
    n = x.ambient.n
    out = {}
    for mu in enumerate_labeled(range(1, n + 1), p):
        total = Cyclotomic.zero(p)
        for lam, c in x.terms.items():
            v = _char_value_std(lam.arcs, mu.arcs, p)
            if v:
                total = total + c.eval_at(p) * v
        out[mu] = total
    return out


def kappa_to_chi(values, p):
    """Inverse conversion: given one exact value per superclass label of
    U_n, solve the square supercharacter-table system by exact elimination
    over Q(zeta_p).  Returns superchar label -> Cyclotomic coefficient."""
    labels = sorted(values.keys(), key=lambda lam: (len(lam.support), lam.arcs))
    if not labels:
        return {}
    n = len(labels[0].support)
    expect = list(enumerate_labeled(range(1, n + 1), p))
    if set(labels) != set(expect):
        raise ValueError("need a value for every superclass label of U_%d" % n)
    labels = expect
    size = len(labels)
    # rows: superclasses mu; columns: characters lam; augmented with values
    mat = [
        [_char_value_std(lam.arcs, mu.arcs, p) for lam in labels] + [values[mu]]
        for mu in labels
    ]
    zero = Cyclotomic.zero(p)
    for col in range(size):
        piv = next(r for r in range(col, size) if mat[r][col] != zero)
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = mat[col][col].inv()
        mat[col] = [v * inv for v in mat[col]]
        for r in range(size):
            if r != col and mat[r][col] != zero:
                f = mat[r][col]
                mat[r] = [vr - f * vc for vr, vc in zip(mat[r], mat[col])]
    return {lam: mat[i][size] for i, lam in enumerate(labels) if mat[i][size] != zero}


# ---------------------------------------------------------------------------
# Identity checks and symmetries
# ---------------------------------------------------------------------------

def _sinfres_single(arc, lo, hi, n, p):
    """Restrict a single-arc character to the interval subgroup on [lo,hi]
    and read the result back in the full group (inflation keeps the arcs)."""
    sub = restrict_arc_subset(arc[0], arc[1], arc[2], range(lo, hi + 1), n, p)
    return sinf_combo(sub, PartitionIndex.full(n))


def sinfres_identities_check(i, j, k, l, a, b, n, p):
    """Check the four restriction-inflation product identities for the
    quadruple i<j<k<l by exhaustive pointwise evaluation."""
    if not (1 <= i < j < k < l <= n):
        raise ValueError("need 1 <= i < j < k < l <= n")
    full = PartitionIndex.full(n)
    neg_a = (-a) % p

    def chi(*arcs):
        return CharCombo.of(_single(n, arcs), full)

    checks = [
        (
            tensor_values(chi((i, k, a)), chi((i, l, b)), n, p),
            tensor_values(_sinfres_single((i, k, a), i + 1, l, n, p), chi((i, l, b)), n, p),
        ),
        (
            tensor_values(chi((i, l, a)), chi((j, l, b)), n, p),
            tensor_values(chi((i, l, a)), _sinfres_single((j, l, b), i, l - 1, n, p), n, p),
        ),
        (
            tensor_values(chi((i, l, a)), chi((i, l, neg_a)), n, p),
            tensor_values(
                _sinfres_single((i, l, a), i + 1, l, n, p),
                _sinfres_single((i, l, neg_a), i, l - 1, n, p),
                n,
                p,
            ),
        ),
    ]
    if (a + b) % p != 0:
        ab = (a + b) % p
        checks.append(
            (
                tensor_values(chi((i, l, a)), chi((i, l, b)), n, p),
                tensor_values(
                    chi((i, l, ab)), _sinfres_single((i, l, ab), i + 1, l - 1, n, p), n, p
                ),
            )
        )
    return all(lhs == rhs for lhs, rhs in checks)


def tensor_values(x, y, n, p):
    """Value vector of a pointwise product over all superclass labels (no
    straightening involved -- tensor values are plain products)."""
    out = []
    for mu in enumerate_labeled(range(1, n + 1), p):
        out.append(combo_value(x, mu, p) * combo_value(y, mu, p))
    return tuple(out)


def reflect_combo(x):
    """Conjugate a combination by the order-reversing symmetry."""
    n = x.ambient.n
    return CharCombo(
        x.ambient.reflect(),
        [(lam.reflect(n), c) for lam, c in x.terms.items()],
    )
