"""Hilbert function, series numerator, rank, Hilbert polynomial, 2-parameter decomposition."""
from fractions import Fraction
from itertools import product
from math import factorial

from .algebra import leq, meet, box_degrees, fmt_degree, join
from .frames import InvariantError, frame_of_presentation
from .linalg import rank as matrix_rank


class HilbertFunction:
    """HF on the box [0, top], extended by HF(u) = HF(min(u, top))."""

    def __init__(self, top, table):
        self.top = tuple(top)
        self.r = len(self.top)
        self.table = table

    def __call__(self, u):
        if any(k < 0 for k in u):
            return 0
        return self.table[meet(tuple(u), self.top)]

    def to_json(self):
        return [{"degree": list(u), "dim": d} for u, d in sorted(self.table.items())]


def hilbert_function(M):
    return HilbertFunction(M.top, dict(M.dims))


class Poly:
    """Integer polynomial in t1..tr as a dict exponent -> coefficient."""

    def __init__(self, r, terms=None):
        self.r = r
        self.terms = {tuple(e): c for e, c in (terms or {}).items() if c}

    def __eq__(self, other):
        return isinstance(other, Poly) and self.r == other.r and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.r, out)

    def __neg__(self):
        return Poly(self.r, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return "Poly(%s)" % self

    def at_one(self):
        return sum(self.terms.values())

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        # t_r is the most significant variable: t1 t2, t1^3 t2, t1 t2^2, ...
        return sorted(self.terms.items(), key=lambda ec: tuple(reversed(ec[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for e, c in self.sorted_terms():
            mono = _fmt_t(e)
            mag = abs(c)
            body = mono if (mag == 1 and mono != "1") else (str(mag) if mono == "1" else "%d*%s" % (mag, mono))
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_json(self):
        return {",".join(str(k) for k in e): c for e, c in self.sorted_terms()}

    @classmethod
    def monomial(cls, e, c=1):
        return cls(len(e), {tuple(e): c})


def _fmt_t(e, var="t"):
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append("%s%d" % (var, i + 1))
        elif k > 1:
            parts.append("%s%d^%d" % (var, i + 1, k))
    return "*".join(parts) if parts else "1"


def denominator_str(r, coords=None):
    coords = range(r) if coords is None else coords
    return "".join("(1-t%d)" % (i + 1) for i in coords)


def series_str(P, coords=None):
    coords = list(range(P.r)) if coords is None else list(coords)
    den = denominator_str(P.r, coords)
    if not den:
        return str(P)
    if len(coords) > 1:
        den = "(%s)" % den
    return "%s / %s" % (_paren(P), den)


def _paren(P):
    return "(%s)" % P if len(P.terms) > 1 else str(P)


def difference_numerator(HF, coords, extent):
    """sum_u (prod_{i in coords} Delta_i HF)(u) t^u over the box [0, extent].

    Delta_i is the backward difference in coordinate i, with HF = 0 below 0.
    """
    r = len(extent)
    terms = {}
    for u in box_degrees(extent):
        val = 0
        for signs in product((0, 1), repeat=len(coords)):
            v = list(u)
            for i, b in zip(coords, signs):
                v[i] -= b
            val += (-1) ** sum(signs) * HF(v)
        if val:
            terms[u] = val
    return Poly(r, terms)


def hs_numerator(HF):
    """Numerator P with HS(M, t) = P / prod(1 - t_i)."""
    extent = tuple(k + 1 for k in HF.top)
    return difference_numerator(HF, list(range(HF.r)), extent)


def rank(M):
    """rk_S(M) = HF(s); cross-checked against P(1)."""
    HF = hilbert_function(M)
    val = HF(M.top)
    if hs_numerator(HF).at_one() != val:
        raise InvariantError("HF(s) and P(1) disagree")
    return val


def numerator_from_resolution(R):
    """P = sum_i (-1)^i sum_{S(-u) in F_i} t^u."""
    P = Poly(R.r)
    for i, degs in enumerate(R.degrees):
        for d in degs:
            P = P + Poly.monomial(d, (-1) ** i)
    return P


# ---------------------------------------------------------------- r = 2 decomposition

class TwoParamDecomposition:
    """HS = C t1^m1 t2^m2 / ((1-t1)(1-t2)) + sum a_i t1^i/(1-t2) + sum b_j t2^j/(1-t1) + R."""

    def __init__(self, C, corner, alphas, betas, remainder):
        self.C = C
        self.corner = corner
        self.alphas = alphas
        self.betas = betas
        self.remainder = remainder

    def value(self, u):
        i, j = u
        m1, m2 = self.corner
        val = self.C if (i >= m1 and j >= m2) else 0
        if i < len(self.alphas):
            val += self.alphas[i]
        if j < len(self.betas):
            val += self.betas[j]
        return val + self.remainder.terms.get((i, j), 0)

    def alpha_poly(self):
        return Poly(2, {(i, 0): a for i, a in enumerate(self.alphas)})

    def beta_poly(self):
        return Poly(2, {(0, j): b for j, b in enumerate(self.betas)})

    def __str__(self):
        m1, m2 = self.corner
        parts = []
        if self.C:
            parts.append("%s*%s / ((1-t1)(1-t2))" % (self.C, _fmt_t((m1, m2))) if self.C != 1
                         else "%s / ((1-t1)(1-t2))" % _fmt_t((m1, m2)))
        a, b = self.alpha_poly(), self.beta_poly()
        if not a.is_zero():
            parts.append("%s / (1-t2)" % _paren(a))
        if not b.is_zero():
            parts.append("%s / (1-t1)" % _paren(b))
        if not self.remainder.is_zero():
            parts.append(_paren(self.remainder))
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"C": self.C, "m": list(self.corner), "alphas": self.alphas, "betas": self.betas,
                "remainder": self.remainder.to_json(), "text": str(self)}


def persistent_corner(M):
    """Componentwise min of the minimal u with rank(M_u -> M_s) = rk(M)."""
    rk = M.dims[M.top]
    if rk == 0:
        return M.top
    hits = [u for u in M.degrees() if matrix_rank(M.field, M.map(u, M.top), M.dims[u]) == rk]
    corner = hits[0]
    for u in hits:
        corner = meet(corner, u)
    return corner


def decompose_2param(HF, corner=None):
    if HF.r != 2:
        raise ValueError("the two-parameter decomposition needs r = 2")
    s1, s2 = HF.top
    C = HF(HF.top)
    m1, m2 = corner if corner is not None else HF.top
    alphas = [HF((i, s2)) - (C if i >= m1 else 0) for i in range(s1)]
    betas = [HF((s1, j)) - (C if j >= m2 else 0) for j in range(s2)]
    while alphas and alphas[-1] == 0:
        alphas.pop()
    while betas and betas[-1] == 0:
        betas.pop()
    D = TwoParamDecomposition(C, (m1, m2), alphas, betas, Poly(2))
    rem = {}
    for u in box_degrees(HF.top):
        d = HF(u) - D.value(u)
        if d:
            rem[u] = d
    D.remainder = Poly(2, rem)
    for u in box_degrees((s1 + 2, s2 + 2)):
        if D.value(u) != HF(u):
            raise InvariantError("decomposition does not reassemble at %s" % fmt_degree(u))
    return D


# ---------------------------------------------------------------- Hilbert polynomial

class HilbertPolynomial:
    """HP(n) = sum coeffs[k] n^k, valid for n >= n0."""

    def __init__(self, coeffs, n0):
        self.coeffs = coeffs
        self.n0 = n0

    def __call__(self, n):
        return sum(c * n ** k for k, c in enumerate(self.coeffs))

    @property
    def degree(self):
        d = len(self.coeffs) - 1
        while d >= 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def __str__(self):
        out = ""
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("n" if k == 1 else "n^%d" % k)
            mag = abs(c)
            mag_s = str(mag)
            body = mono if (mag == 1 and mono) else (mag_s if not mono else "%s*%s" % (mag_s, mono))
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out or "0"

    def to_json(self):
        return {"coefficients": [str(Fraction(c)) for c in self.coeffs], "n0": self.n0, "text": str(self)}


def coarsened(HF, n):
    """HF_1(n) = sum_{|u| = n} HF(u)."""
    r = HF.r
    total = 0
    for head in box_degrees((n,) * (r - 1)) if r > 1 else [()]:
        rest = n - sum(head)
        if rest < 0:
            continue
        total += HF(head + (rest,))
    return total


def hilbert_polynomial(HF):
    r = HF.r
    n0 = sum(HF.top) + r
    xs = list(range(n0, n0 + r))
    ys = [coarsened(HF, n) for n in xs]
    coeffs = _interpolate(xs, ys)
    HP = HilbertPolynomial(coeffs, n0)
    for n in range(n0 + r, n0 + 2 * r + 2):
        if HP(n) != coarsened(HF, n):
            raise InvariantError("Hilbert polynomial check failed at n=%d (box too small?)" % n)
    if HP.coeffs[r - 1] * factorial(r - 1) != HF(HF.top):
        raise InvariantError("leading coefficient of HP does not match the rank")
    return HP


def _interpolate(xs, ys):
    """Coefficients (low to high) of the Lagrange interpolant, exact."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for k in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m in range(n):
            if m == k:
                continue
            # multiply basis by (x - xs[m])
            nb = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nb[d] -= c * xs[m]
                nb[d + 1] += c
            basis = nb
            denom *= xs[k] - xs[m]
        for d, c in enumerate(basis):
            coeffs[d] += ys[k] * c / denom
    return [int(c) if c.denominator == 1 else c for c in coeffs]


def hilbert_report(M):
    """Everything the `hilbert` command prints, as plain data."""
    HF = hilbert_function(M)
    P = hs_numerator(HF)
    out = {"numerator": P, "rank": rank(M), "hf": HF, "polynomial": hilbert_polynomial(HF)}
    if M.r == 2:
        out["decomposition"] = decompose_2param(HF, persistent_corner(M))
    return out


def presentation_numerator(P):
    return hs_numerator(hilbert_function(frame_of_presentation(P)))
