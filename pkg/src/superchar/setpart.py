"""Labeled set partitions and subgroup index partitions.

A labeled set partition on a finite support S of positive integers is a set
of labeled arcs ``i-j:a`` (i < j, label a a nonzero residue) such that every
vertex is the left endpoint of at most one arc and the right endpoint of at
most one arc.  The parts are the chains traced out by the arcs, and the arcs
connect consecutive elements of their part, so this degree condition is the
whole validity story.

Labels are stored as plain positive ints and interpreted mod a prime p; the
prime is passed to whichever operation enumerates labels or evaluates
characters (see qcoeff.FieldElem for the arithmetic boundary).

A :class:`PartitionIndex` names a parabolic subgroup: an ordered list of
disjoint parts covering {1..n}.  Part order matters for the two-block glue
and product operations, so it is preserved as given.
"""

from __future__ import annotations

import itertools
import math
import re
from typing import NamedTuple

__all__ = [
    "Arc",
    "LabeledSetPartition",
    "PartitionIndex",
    "set_partitions",
    "enumerate_labeled",
    "count_sn",
    "count_sn_poly",
    "union_K",
]

from .qcoeff import LaurentPoly


class Arc(NamedTuple):
    """A labeled arc ``left-right:label`` with left < right, label >= 1."""
    left: int
    right: int
    label: int


class LabeledSetPartition:
    """An F_q-labeled set partition: a support plus labeled arcs.

    Immutable and hashable; arcs are kept sorted by (left, right).
    """

    __slots__ = ("support", "arcs")

    def __init__(self, support, arcs=()):
        support = frozenset(int(v) for v in support)
        if not all(v >= 1 for v in support):
            raise ValueError("support must consist of positive integers")
        clean = []
        lefts, rights = set(), set()
        for arc in arcs:
            a = Arc(int(arc[0]), int(arc[1]), int(arc[2]))
            if a.left >= a.right:
                raise ValueError("arc %d-%d is not increasing" % (a.left, a.right))
            if a.label < 1:
                raise ValueError("arc label must be a nonzero residue")
            if a.left not in support or a.right not in support:
                raise ValueError("arc %d-%d leaves the support" % (a.left, a.right))
            if a.left in lefts:
                raise ValueError("vertex %d starts two arcs" % a.left)
            if a.right in rights:
                raise ValueError("vertex %d ends two arcs" % a.right)
            lefts.add(a.left)
            rights.add(a.right)
            clean.append(a)
        clean.sort()
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "arcs", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("LabeledSetPartition is immutable")

    # -- structure ----------------------------------------------------------

    def n(self):
        return len(self.support)

    def parts(self):
        """The parts, as sorted tuples, ordered by minimum element.

        Parts are the chains: follow arcs from each vertex that is not the
        right endpoint of any arc.
        """
        nxt = {a.left: a.right for a in self.arcs}
        has_in = {a.right for a in self.arcs}
        out = []
        for v in sorted(self.support):
            if v in has_in:
                continue
            chain = [v]
            while chain[-1] in nxt:
                chain.append(nxt[chain[-1]])
            out.append(tuple(chain))
        return tuple(sorted(out, key=lambda part: part[0]))

    def arc_dict(self):
        """{(left, right): label} for fast lookups."""
        return {(a.left, a.right): a.label for a in self.arcs}

    def crossing_pairs(self):
        """All pairs of arcs (i-k, j-l) with i < j < k < l."""
        out = []
        for a, b in itertools.combinations(self.arcs, 2):
            first, second = (a, b) if a.left < b.left else (b, a)
            if first.left < second.left < first.right < second.right:
                out.append((first, second))
        return out

    def num_crossings(self):
        return len(self.crossing_pairs())

    def crossings_within(self, index):
        """Number of crossings computed inside the parts of a PartitionIndex.

        Every arc must stay inside a single part of ``index``; a straddling
        arc is an error.
        """
        part_of = index.part_lookup()
        for a in self.arcs:
            if part_of[a.left] != part_of[a.right]:
                raise ValueError("arc %d-%d straddles the parts of %s" % (a.left, a.right, index))
        total = 0
        for a, b in self.crossing_pairs():
            if part_of[a.left] == part_of[b.left]:
                total += 1
        return total

    # -- transformations ----------------------------------------------------

    def extend(self, new_support):
        """The same arcs viewed on a larger support."""
        new_support = frozenset(int(v) for v in new_support)
        if not self.support <= new_support:
            raise ValueError("extension support must contain the old support")
        return LabeledSetPartition(new_support, self.arcs)

    def relabel(self, mapping):
        """Push the partition through an increasing bijection of supports."""
        vals = [mapping[v] for v in sorted(self.support)]
        if sorted(vals) != vals or len(set(vals)) != len(vals):
            raise ValueError("relabeling must be an increasing bijection")
        arcs = [(mapping[a.left], mapping[a.right], a.label) for a in self.arcs]
        return LabeledSetPartition(vals, arcs)

    def standardize(self):
        """Transport onto {1..m} via the unique increasing bijection.

        Returns (partition on {1..m}, mapping old->new).
        """
        mapping = {v: i + 1 for i, v in enumerate(sorted(self.support))}
        return self.relabel(mapping), mapping

    def reflect(self, n=None):
        """Mirror through the vertical axis of {1..n}: arc i-j:a goes to
        (n+1-j)-(n+1-i):a.  The support must sit inside {1..n}."""
        if n is None:
            n = max(self.support) if self.support else 0
        if self.support and max(self.support) > n:
            raise ValueError("support exceeds n")
        support = [n + 1 - v for v in self.support]
        arcs = [(n + 1 - a.right, n + 1 - a.left, a.label) for a in self.arcs]
        return LabeledSetPartition(support, arcs)

    def restrict_arcs_to(self, vertices):
        """Keep only the arcs with both endpoints in ``vertices`` (support
        unchanged)."""
        vs = set(vertices)
        return LabeledSetPartition(
            self.support, [a for a in self.arcs if a.left in vs and a.right in vs]
        )

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, LabeledSetPartition)
            and self.support == other.support
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((self.support, self.arcs))

    def __repr__(self):
        return "LabeledSetPartition(%r)" % self.to_text()

    # -- serialization ------------------------------------------------------

    def to_text(self):
        """Canonical text: ``"n=9; 1-5:1, 5-7:2"`` (arcs sorted).

        Only supports of the form {1..n} have a text form.
        """
        n = len(self.support)
        if self.support != frozenset(range(1, n + 1)):
            raise ValueError("text form needs support {1..n}")
        body = ", ".join("%d-%d:%d" % (a.left, a.right, a.label) for a in self.arcs)
        return "n=%d; %s" % (n, body) if body else "n=%d" % n

    @classmethod
    def from_text(cls, s, n=None):
        """Parse ``"n=9; 1-5:1, 5-7:2"``; the ``n=`` prefix may be omitted
        when ``n`` is supplied."""
        s = s.strip()
        m = re.match(r"^n\s*=\s*(\d+)\s*(?:;\s*(.*))?$", s)
        if m:
            n = int(m.group(1))
            body = m.group(2) or ""
        else:
            if n is None:
                raise ValueError("partition text without n= prefix needs explicit n")
            body = s
        arcs = []
        body = body.strip()
        if body:
            for chunk in body.split(","):
                am = re.match(r"^\s*(\d+)\s*-\s*(\d+)\s*:\s*(\d+)\s*$", chunk)
                if not am:
                    raise ValueError("bad arc %r" % chunk)
                arcs.append((int(am.group(1)), int(am.group(2)), int(am.group(3))))
        return cls(range(1, n + 1), arcs)


class PartitionIndex:
    """An ordered partition of {1..n} naming a parabolic subgroup.

    Parts are kept in the order given (the glue and product operations read
    the first/second block off that order); semantic comparisons that should
    ignore order go through :meth:`grouping`.
    """

    __slots__ = ("n", "parts")

    def __init__(self, n, parts):
        n = int(n)
        clean = []
        seen = set()
        for part in parts:
            tup = tuple(sorted(int(v) for v in part))
            if not tup:
                raise ValueError("empty part")
            for v in tup:
                if v < 1 or v > n:
                    raise ValueError("part element %d outside 1..%d" % (v, n))
                if v in seen:
                    raise ValueError("element %d in two parts" % v)
                seen.add(v)
            clean.append(tup)
        if len(seen) != n:
            raise ValueError("parts must cover {1..%d}" % n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "parts", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("PartitionIndex is immutable")

    @classmethod
    def full(cls, n):
        return cls(n, [range(1, n + 1)])

    @classmethod
    def discrete(cls, n):
        return cls(n, [[v] for v in range(1, n + 1)])

    @classmethod
    def from_subset(cls, subset, n):
        """The index with one part ``subset`` and singletons elsewhere."""
        subset = tuple(sorted(set(int(v) for v in subset)))
        rest = [[v] for v in range(1, n + 1) if v not in subset]
        return cls(n, [subset] + rest)

    def part_lookup(self):
        """{vertex: part position}."""
        out = {}
        for i, part in enumerate(self.parts):
            for v in part:
                out[v] = i
        return out

    def same_part(self, i, j):
        lk = self.part_lookup()
        return lk[i] == lk[j]

    def grouping(self):
        """Order-insensitive canonical form (parts sorted by minimum)."""
        return tuple(sorted(self.parts, key=lambda part: part[0]))

    def refines(self, other):
        """True when every part of self sits inside a part of other."""
        if self.n != other.n:
            return False
        lk = other.part_lookup()
        return all(len({lk[v] for v in part}) == 1 for part in self.parts)

    def induced_on(self, vertices):
        """Parts intersected with ``vertices`` (order kept, empties dropped)."""
        vs = set(vertices)
        kept = [tuple(v for v in part if v in vs) for part in self.parts]
        return [part for part in kept if part]

    def reflect(self):
        """Mirror i -> n+1-i, reversing the part order."""
        return PartitionIndex(
            self.n, [tuple(sorted(self.n + 1 - v for v in part)) for part in reversed(self.parts)]
        )

    def is_full(self):
        return len(self.parts) == 1

    def __eq__(self, other):
        return (
            isinstance(other, PartitionIndex)
            and self.n == other.n
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash((self.n, self.parts))

    def to_text(self):
        return "{" + "|".join(",".join(str(v) for v in part) for part in self.parts) + "}"

    def __repr__(self):
        return "PartitionIndex(n=%d, %s)" % (self.n, self.to_text())

    @classmethod
    def from_text(cls, s, n=None):
        """Parse ``"{1,5,7|2,3|4|6,8,9}"``; n defaults to the cover size.

        The interval shorthand ``"[j,k]"`` gives the index with the single
        nontrivial part {j..k} (n must be supplied for that form).
        """
        s = s.strip()
        m = re.match(r"^\[\s*(\d+)\s*,\s*(\d+)\s*\]$", s)
        if m:
            if n is None:
                raise ValueError("interval shorthand needs explicit n")
            j, k = int(m.group(1)), int(m.group(2))
            if not (1 <= j <= k <= n):
                raise ValueError("interval [%d,%d] outside 1..%d" % (j, k, n))
            return cls.from_subset(range(j, k + 1), n)
        if not (s.startswith("{") and s.endswith("}")):
            raise ValueError("bad partition index text %r" % s)
        if s == "{}":
            return cls(0 if n is None else n, [])
        parts = []
        for chunk in s[1:-1].split("|"):
            chunk = chunk.strip()
            if not chunk:
                raise ValueError("empty part in %r" % s)
            parts.append([int(v) for v in chunk.split(",")])
        cover = {v for part in parts for v in part}
        if n is None:
            n = max(cover) if cover else 0
        return cls(n, parts)


# ---------------------------------------------------------------------------
# Enumeration and counting
# ---------------------------------------------------------------------------

def set_partitions(elements):
    """All set partitions of ``elements`` as tuples of sorted tuples, in
    restricted-growth-string order (deterministic)."""
    elems = sorted(set(int(v) for v in elements))
    if not elems:
        yield ()
        return

    def rec(i, blocks):
        if i == len(elems):
            yield tuple(tuple(b) for b in blocks)
            return
        v = elems[i]
        for b in blocks:
            b.append(v)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([v])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(1, [[elems[0]]])


def arcs_of_parts(parts):
    """The arc skeleton of an unlabeled partition: consecutive pairs inside
    each part, sorted by (left, right)."""
    arcs = []
    for part in parts:
        for u, v in zip(part, part[1:]):
            arcs.append((u, v))
    arcs.sort()
    return tuple(arcs)


def enumerate_labeled(elements, p):
    """All F_p-labeled set partitions of ``elements``, deterministically:
    shapes in restricted-growth order, then labels lexicographically over
    the sorted arc list."""
    elems = sorted(set(int(v) for v in elements))
    for parts in set_partitions(elems):
        skeleton = arcs_of_parts(parts)
        if not skeleton:
            yield LabeledSetPartition(elems, [])
            continue
        for labels in itertools.product(range(1, p), repeat=len(skeleton)):
            yield LabeledSetPartition(
                elems, [(l, r, lab) for (l, r), lab in zip(skeleton, labels)]
            )


def enumerate_compatible(index, p):
    """All labeled partitions of {1..n} whose arcs stay inside the parts of
    ``index`` -- the supercharacter/superclass labels of the subgroup."""
    per_part = []
    for part in index.parts:
        per_part.append([lam.arcs for lam in enumerate_labeled(part, p)])
    support = range(1, index.n + 1)
    for choice in itertools.product(*per_part):
        arcs = [a for group in choice for a in group]
        yield LabeledSetPartition(support, arcs)


def count_sn_poly(n):
    """The number of F_q-labeled set partitions of an n-set, as a polynomial
    in q.  Satisfies s_{m+1} = sum_k C(m,k) (q-1)^k s_{m-k}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    qm1 = LaurentPoly.q_minus_one()
    s = [LaurentPoly.one()]
    for m in range(n):
        total = LaurentPoly.zero()
        power = LaurentPoly.one()
        for k in range(m + 1):
            total = total + math.comb(m, k) * power * s[m - k]
            power = power * qm1
        s.append(total)
    return s[n]


def count_sn(n, q):
    """The number of F_q-labeled set partitions of an n-set (q >= 2 any
    integer; the count is polynomial in q)."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return count_sn_poly(n).eval_at(q)


def union_K(lam, mu, K):
    """Glue two labeled partitions along a two-block index.

    ``lam`` lives on {1..m}, ``mu`` on {1..n}; ``K`` has exactly two parts in
    order, of sizes m and n, covering {1..m+n}.  Each factor is pushed
    through the increasing bijection onto its block.  An empty factor is
    glued along a one-part index (indices cannot carry an empty block).
    """
    if len(K.parts) == 1 and (not lam.support or not mu.support):
        block1, block2 = ((), K.parts[0]) if not lam.support else (K.parts[0], ())
    elif len(K.parts) != 2:
        raise ValueError("union needs a two-block index")
    else:
        block1, block2 = K.parts
    m, n = len(lam.support), len(mu.support)
    if (len(block1), len(block2)) != (m, n):
        raise ValueError("block sizes %d,%d do not match supports %d,%d"
                         % (len(block1), len(block2), m, n))
    map1 = {v: w for v, w in zip(sorted(lam.support), block1)}
    map2 = {v: w for v, w in zip(sorted(mu.support), block2)}
    arcs = [(map1[a.left], map1[a.right], a.label) for a in lam.arcs]
    arcs += [(map2[a.left], map2[a.right], a.label) for a in mu.arcs]
    return LabeledSetPartition(range(1, K.n + 1), arcs)
