"""Exact scalars, the N^r degree poset, monomial ideals and coordinate primes.

Degrees are plain tuples of non-negative ints.  A monomial x^v is identified
with its exponent vector v, so a monomial ideal is an antichain of degrees.
"""
from fractions import Fraction
from itertools import combinations, product
import re


class DimensionMismatch(ValueError):
    pass


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------- scalars

class GF:
    """Element of the prime field F_p."""
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise FieldError("mixing F_%d and F_%d" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GF(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GF(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GF(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GF(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GF(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d" % self.p)
        return GF(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * GF(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GF(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, GF):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "GF(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """The ground field: the rationals (char 0) or F_p.

    ``Field(0)`` is Q, ``Field(p)`` is F_p.  Calling the field converts ints,
    Fractions and strings such as ``"-3/4"`` into elements.
    """

    def __init__(self, char=0):
        if char != 0 and not _is_prime(char):
            raise FieldError("characteristic %d is not prime" % char)
        self.char = char
        self.zero = self(0)
        self.one = self(1)

    @classmethod
    def parse(cls, spec):
        """Parse ``q`` / ``Q`` / ``f7`` / ``F7`` / ``7``."""
        s = spec.strip().lower()
        if s in ("q", "qq", "0", "rationals"):
            return cls(0)
        m = re.fullmatch(r"f?(\d+)", s)
        if not m:
            raise FieldError("unknown field %r" % spec)
        return cls(int(m.group(1)))

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.char == 0:
            if isinstance(x, GF):
                raise FieldError("cannot coerce an F_p element into Q")
            return Fraction(x)
        if isinstance(x, GF):
            if x.p != self.char:
                raise FieldError("element of F_%d given to F_%d" % (x.p, self.char))
            return x
        x = Fraction(x)
        num = GF(x.numerator, self.char)
        return num / x.denominator

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    @property
    def name(self):
        return "QQ" if self.char == 0 else "F%d" % self.char

    @property
    def token(self):
        """Spelling used in the input formats."""
        return "q" if self.char == 0 else "f%d" % self.char

    def __repr__(self):
        return "Field(%d)" % self.char

    def elements(self):
        """All elements of a finite field (used by brute-force oracles)."""
        if self.char == 0:
            raise FieldError("Q is infinite")
        return [self(k) for k in range(self.char)]

    def format(self, c):
        if self.char == 0:
            c = Fraction(c)
            return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)
        return str(c.v if isinstance(c, GF) else c)

    def to_json(self, c):
        if self.char == 0:
            c = Fraction(c)
            return c.numerator if c.denominator == 1 else self.format(c)
        return c.v


QQ = Field(0)


# ---------------------------------------------------------------- degrees

def _check(u, v):
    if len(u) != len(v):
        raise DimensionMismatch("degrees %s and %s have different length" % (fmt_degree(u), fmt_degree(v)))


def leq(u, v):
    """Componentwise order: u <= v iff u_i <= v_i for all i."""
    _check(u, v)
    return all(a <= b for a, b in zip(u, v))


def lt(u, v):
    return leq(u, v) and tuple(u) != tuple(v)


def join(u, v):
    _check(u, v)
    return tuple(max(a, b) for a, b in zip(u, v))


def meet(u, v):
    _check(u, v)
    return tuple(min(a, b) for a, b in zip(u, v))


def add(u, v):
    _check(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(v, u):
    _check(u, v)
    return tuple(b - a for a, b in zip(u, v))


def unit(r, i):
    return tuple(1 if k == i else 0 for k in range(r))


def zero(r):
    return (0,) * r


def join_all(degrees, r):
    out = zero(r)
    for d in degrees:
        out = join(out, d)
    return out


def box_degrees(upper):
    """All degrees u <= upper, lexicographic (a linear extension of <=)."""
    return list(product(*(range(k + 1) for k in upper)))


def total(u):
    return sum(u)


def fmt_degree(u):
    return "(" + ",".join(str(k) for k in u) + ")"


_DEG = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)")


def parse_degree(text):
    m = _DEG.fullmatch(text.strip())
    if not m:
        raise ValueError("bad degree %r" % text)
    return tuple(int(k) for k in m.group(1).split(","))


def parse_degrees(text):
    """Every ``(a,b,...)`` tuple occurring in ``text``."""
    return [tuple(int(k) for k in m.group(1).split(",")) for m in _DEG.finditer(text)]


def minimal_elements(degrees):
    """Antichain of minimal elements, sorted and deduplicated."""
    ds = sorted(set(tuple(d) for d in degrees))
    return [d for d in ds if not any(e != d and leq(e, d) for e in ds)]


# ---------------------------------------------------------------- monomial ideals

class MonomialIdeal:
    """Monomial ideal given by its minimal generators (an antichain)."""

    def __init__(self, gens, r=None):
        gens = [tuple(g) for g in gens]
        if r is None:
            if not gens:
                raise ValueError("need r for the zero ideal")
            r = len(gens[0])
        for g in gens:
            if len(g) != r:
                raise DimensionMismatch("generator %s in a ring with %d variables" % (fmt_degree(g), r))
        self.r = r
        self.gens = tuple(minimal_elements(gens))

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.r == other.r and self.gens == other.gens

    def __hash__(self):
        return hash((self.r, self.gens))

    def __repr__(self):
        return "MonomialIdeal(%s)" % (list(self.gens),)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return zero(self.r) in self.gens

    def __contains__(self, v):
        return any(leq(g, v) for g in self.gens)

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "<" + ", ".join(fmt_monomial(g) for g in self.display_order()) + ">"

    def display_order(self):
        """Generators in descending lex order (x1^2 before x1*x2^2 before x2)."""
        return sorted(self.gens, reverse=True)


def ideal_membership(ideal, v):
    return v in ideal


def radical(ideal):
    """Squarefree ideal generated by the supports of the generators."""
    gens = [tuple(1 if k else 0 for k in g) for g in ideal.gens]
    return MonomialIdeal(gens, ideal.r)


def minimal_primes(ideal):
    """Minimal coordinate primes containing ``ideal``, by subset search.

    A coordinate prime P contains a monomial ideal iff every generator
    involves some variable of P.  The zero ideal gives the zero prime.
    """
    r = ideal.r
    if ideal.is_zero():
        return [CoordinatePrime((), r)]
    hits = []
    for k in range(r + 1):
        for subset in combinations(range(r), k):
            if any(set(subset) >= set(h.vars) for h in hits):
                continue
            if all(any(g[i] > 0 for i in subset) for g in ideal.gens):
                hits.append(CoordinatePrime(subset, r))
    return sorted(hits)


def fmt_monomial(v, var="x"):
    parts = []
    for i, e in enumerate(v):
        if e == 1:
            parts.append("%s%d" % (var, i + 1))
        elif e > 1:
            parts.append("%s%d^%d" % (var, i + 1, e))
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------- coordinate primes

class CoordinatePrime:
    """The prime <x_i : i in vars> (0-based variable indices)."""

    __slots__ = ("vars", "r")

    def __init__(self, vars, r):
        vars = tuple(sorted(set(vars)))
        if any(i < 0 or i >= r for i in vars):
            raise DimensionMismatch("variable index out of range for r=%d" % r)
        self.vars = vars
        self.r = r

    @classmethod
    def parse(cls, text, r):
        """``x1,x2`` / ``(x1,x2)`` / ``<x1>`` / ``(0)`` / ``0``."""
        s = text.strip().strip("()<>⟨⟩ ")
        if s in ("", "0"):
            return cls((), r)
        idx = []
        for tok in s.split(","):
            m = re.fullmatch(r"\s*x_?\{?(\d+)\}?\s*", tok)
            if not m:
                raise ValueError("bad prime %r" % text)
            idx.append(int(m.group(1)) - 1)
        return cls(idx, r)

    @property
    def dimension(self):
        return self.r - len(self.vars)

    def ideal(self):
        return MonomialIdeal([unit(self.r, i) for i in self.vars], self.r)

    def region_contains(self, u):
        """Membership in c_p = {u : u_i = 0 for i in vars}."""
        return all(u[i] == 0 for i in self.vars)

    def __le__(self, other):
        return set(self.vars) <= set(other.vars)

    def __lt__(self, other):
        # sort key: by size, then lexicographic
        return (len(self.vars), self.vars) < (len(other.vars), other.vars)

    def __eq__(self, other):
        return isinstance(other, CoordinatePrime) and self.vars == other.vars and self.r == other.r

    def __hash__(self):
        return hash((self.vars, self.r))

    def __repr__(self):
        return "CoordinatePrime(%s, %d)" % (self.vars, self.r)

    def __str__(self):
        if not self.vars:
            return "(0)"
        return "⟨" + ",".join("x_%d" % (i + 1) for i in self.vars) + "⟩"

    def ascii(self):
        if not self.vars:
            return "(0)"
        return "(" + ",".join("x%d" % (i + 1) for i in self.vars) + ")"


def all_coordinate_primes(r):
    return [CoordinatePrime(s, r) for k in range(r + 1) for s in combinations(range(r), k)]
