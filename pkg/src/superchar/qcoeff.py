"""Exact coefficient arithmetic.

Three scalar domains, all exact:

* :class:`LaurentPoly` -- integer Laurent polynomials in one variable ``q``,
  stored sparsely as ``{exponent: coeff}`` with no zero coefficients.
* :class:`FieldElem` -- elements of the prime field F_p.
* :class:`Cyclotomic` -- elements of Q(zeta_p) for a prime p, written on the
  rational basis ``1, zeta, ..., zeta^(p-2)`` with the reduction
  ``zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))``.

Everything here is immutable; operations return fresh objects, so values can
be shared freely across threads or processes.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = [
    "LaurentPoly",
    "FieldElem",
    "Cyclotomic",
    "field_units",
    "theta",
    "laurent_eval",
    "is_prime",
]


def is_prime(p):
    """Trial-division primality check (inputs here are tiny)."""
    if not isinstance(p, int) or p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Laurent polynomials in q
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Sparse integer Laurent polynomial in ``q``.

    ``coeffs`` maps exponent (any int, negative allowed) to a nonzero int.
    Supports +, -, * (with ints and other LaurentPolys), integer powers,
    exact shifts by q^k, and exact evaluation at a rational point.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if not isinstance(e, int) or not isinstance(c, int):
                    raise TypeError("LaurentPoly wants int exponents and int coefficients")
                if c != 0:
                    clean[e] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def const(cls, c):
        return cls({0: int(c)})

    @classmethod
    def q_power(cls, k, coeff=1):
        """coeff * q^k."""
        return cls({int(k): int(coeff)})

    @classmethod
    def q_minus_one(cls):
        return cls({1: 1, 0: -1})

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("LaurentPoly powers must be nonnegative ints")
        acc = LaurentPoly.one()
        for _ in range(k):
            acc = acc * self
        return acc

    def shift(self, k):
        """Multiply by q^k (k may be negative; always exact for Laurent)."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    # -- queries ------------------------------------------------------------

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_monomial(self):
        return len(self.coeffs) == 1

    def eval_at(self, x):
        """Exact evaluation; returns a Fraction (or int when x is int and
        no negative exponents occur).  Evaluation at 0 with a negative
        exponent present is an error."""
        if x == 0 and any(e < 0 for e in self.coeffs):
            raise ZeroDivisionError("Laurent polynomial has a pole at q=0")
        total = Fraction(0)
        for e, c in self.coeffs.items():
            if e >= 0:
                total += c * Fraction(x) ** e
            else:
                total += c / (Fraction(x) ** (-e))
        if total.denominator == 1 and isinstance(x, int):
            return int(total)
        return total

    # -- serialization ------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else "q^%d" % e
                body = var if mag == 1 else "%d*%s" % (mag, var)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self):
        return "LaurentPoly(%s)" % self

    _TERM = re.compile(
        r"\s*(?P<sign>[+-])?\s*"
        r"(?:(?P<coeff>\d+)\s*\*\s*q|(?P<lone>q)|(?P<const>\d+))"
        r"(?:\^(?P<exp>-?\d+))?"
    )

    @classmethod
    def from_text(cls, s):
        """Parse the canonical text form, e.g. ``"3*q^2 - q^-1 + 1"``."""
        s = s.strip()
        if s in ("", "0"):
            return cls.zero()
        out = {}
        pos = 0
        first = True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m:
                raise ValueError("bad Laurent polynomial text at %r" % s[pos:])
            sign = m.group("sign")
            if not first and sign is None:
                raise ValueError("missing +/- between terms in %r" % s)
            if m.group("const") is not None:
                if m.group("exp") is not None:
                    raise ValueError("constant with exponent in %r" % s)
                c, e = int(m.group("const")), 0
            else:
                c = int(m.group("coeff")) if m.group("coeff") else 1
                e = int(m.group("exp")) if m.group("exp") is not None else 1
            if sign == "-":
                c = -c
            out[e] = out.get(e, 0) + c
            pos = m.end()
            first = False
        if s[pos:].strip():
            raise ValueError("trailing junk in %r" % s)
        return cls(out)

    def to_json(self):
        """JSON map form: ``{"2": 3, "-1": -1}``."""
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise ValueError("Laurent JSON form must be an object")
        return cls({int(e): int(c) for e, c in obj.items()})


def laurent_eval(f, x):
    """Exact evaluation of a LaurentPoly at a rational point."""
    return f.eval_at(x)


# ---------------------------------------------------------------------------
# Prime field scalars
# ---------------------------------------------------------------------------

class FieldElem:
    """A residue in F_p, p prime."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        if not is_prime(p):
            raise ValueError("field size must be prime, got %r" % (p,))
        object.__setattr__(self, "value", int(value) % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def _check(self, other):
        if isinstance(other, int):
            return FieldElem(other, self.p)
        if not isinstance(other, FieldElem):
            raise TypeError("expected FieldElem or int")
        if other.p != self.p:
            raise ValueError("mixed field sizes %d and %d" % (self.p, other.p))
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElem(self.value + other.value, self.p)

    def __sub__(self, other):
        other = self._check(other)
        return FieldElem(self.value - other.value, self.p)

    def __mul__(self, other):
        other = self._check(other)
        return FieldElem(self.value * other.value, self.p)

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inv(self):
        if self.value == 0:
            raise ZeroDivisionError("0 is not invertible")
        return FieldElem(pow(self.value, self.p - 2, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        return isinstance(other, FieldElem) and (self.value, self.p) == (other.value, other.p)

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return "FieldElem(%d, p=%d)" % (self.value, self.p)


def field_units(p):
    """The q-1 nonzero elements of F_p in ascending order."""
    if not is_prime(p):
        raise ValueError("field size must be prime, got %r" % (p,))
    return [FieldElem(a, p) for a in range(1, p)]


# ---------------------------------------------------------------------------
# Cyclotomic rationals Q(zeta_p)
# ---------------------------------------------------------------------------

class Cyclotomic:
    """Element of Q(zeta_p) on the basis 1, zeta, ..., zeta^(p-2).

    For p=2 this degenerates to Q itself (zeta = -1).  Coordinates are
    Fractions; the class supports field arithmetic including inversion and
    complex conjugation (zeta^k -> zeta^(p-k)).
    """

    __slots__ = ("p", "coords")

    def __init__(self, p, coords):
        if not is_prime(p):
            raise ValueError("cyclotomic order must be prime, got %r" % (p,))
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != p - 1:
            raise ValueError("expected %d coordinates, got %d" % (p - 1, len(coords)))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def _from_full(cls, p, vec):
        """Reduce a length-p coordinate vector using 1+zeta+...+zeta^(p-1)=0."""
        last = vec[p - 1]
        return cls(p, [vec[i] - last for i in range(p - 1)])

    @classmethod
    def zero(cls, p):
        return cls(p, [0] * (p - 1))

    @classmethod
    def one(cls, p):
        return cls.from_rational(p, 1)

    @classmethod
    def from_rational(cls, p, r):
        coords = [Fraction(r)] + [Fraction(0)] * (p - 2)
        return cls(p, coords)

    @classmethod
    def zeta_power(cls, p, k):
        """zeta_p^k, k any integer."""
        k = k % p
        vec = [Fraction(0)] * p
        vec[k] = Fraction(1)
        return cls._from_full(p, vec)

    # -- field operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.p != self.p:
                raise ValueError("mixed cyclotomic orders %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.p, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.p, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        vec = [Fraction(0)] * p
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                if b == 0:
                    continue
                vec[(i + j) % p] += a * b
        return Cyclotomic._from_full(p, vec)

    __rmul__ = __mul__

    def conj(self):
        """Complex conjugation: zeta^k -> zeta^(p-k)."""
        p = self.p
        vec = [Fraction(0)] * p
        for k, a in enumerate(self.coords):
            vec[(p - k) % p] += a
        return Cyclotomic._from_full(p, vec)

    def inv(self):
        """Multiplicative inverse, by solving the (p-1)x(p-1) rational
        system for x with x*self = 1."""
        p = self.p
        if not self:
            raise ZeroDivisionError("0 is not invertible")
        # Column j of the multiplication matrix is the coordinate vector of
        # zeta^j * self.
        cols = [(Cyclotomic.zeta_power(p, j) * self).coords for j in range(p - 1)]
        n = p - 1
        aug = [[cols[j][i] for j in range(n)] + [Fraction(1 if i == 0 else 0)]
               for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv_p = Fraction(1) / aug[col][col]
            aug[col] = [v * inv_p for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
        return Cyclotomic(p, [aug[i][n] for i in range(n)])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    # -- queries ------------------------------------------------------------

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.p, self.coords))

    def as_rational(self):
        """Return the value as a Fraction if it is rational, else None."""
        if any(self.coords[1:]):
            return None
        return self.coords[0]

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for k, a in enumerate(self.coords):
            if a == 0:
                continue
            if k == 0:
                body = str(abs(a))
            else:
                var = "z" if k == 1 else "z^%d" % k
                body = var if abs(a) == 1 else "%s*%s" % (abs(a), var)
            parts.append(("-" if a < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self):
        return "Cyclotomic(p=%d, %s)" % (self.p, self)

    def to_json(self):
        return {"p": self.p, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["p"]), [Fraction(c) for c in obj["coords"]])


def theta(a, p=None):
    """The fixed nontrivial character F_p -> Q(zeta_p)^x, a -> zeta_p^a.

    Accepts a FieldElem (p inferred) or an int together with p.
    """
    if isinstance(a, FieldElem):
        return Cyclotomic.zeta_power(a.p, a.value)
    if p is None:
        raise ValueError("theta on a plain int needs p")
    return Cyclotomic.zeta_power(p, int(a))
