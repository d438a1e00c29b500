"""Associated primes, support shape, element life reports, H^0_p and c_p-rank.

Ass test.  For a coordinate prime p = <x_i : i in P> let C = (0 :_M p), the
elements killed by every x_i, i in P.  C is a module over S/p = K[x_j : j not
in P] and splits into the slices C_(w_P, *), one per value w_P of the P
coordinates.  If p = Ann(m) then S/p . m is a free S/p-module inside C, so C
has positive rank.  Conversely a homogeneous m in C that is torsion-free over
S/p has a monomial annihilator containing p and meeting K[x_j : j not in P]
trivially, so Ann(m) = p.  Hence p in Ass(M) iff rank_{S/p} C > 0, and that
rank is the sum over the slices of their stable dimension.
"""
from dataclasses import dataclass, field as dc_field
from itertools import product

from . import algebra
from .algebra import (CoordinatePrime, MonomialIdeal, all_coordinate_primes, box_degrees, fmt_degree,
                      leq, join, add, radical, minimal_primes)
from .frames import (InvariantError, homology_frame, pmap, subframe, columns)
from .hilbert import HilbertFunction, difference_numerator, series_str
from .linalg import extend_to_complement, nullspace, rank, span_basis, unit_vector


# ---------------------------------------------------------------- elements

def annihilator(M, u, a):
    """Ann(a) for a in M_u, as a monomial ideal (unit ideal when a = 0)."""
    u = tuple(u)
    if not any(a):
        return MonomialIdeal([algebra.zero(M.r)], M.r)
    # a minimal generator v of Ann(a) has u_i + v_i <= max(u_i, top_i)
    extent = tuple(max(t - k, 0) for k, t in zip(u, M.top))
    dead = [v for v in box_degrees(extent) if not any(M.apply(u, add(u, v), a))]
    return MonomialIdeal(dead, M.r)


def is_minimal_generator(M, u, a):
    """True iff a is not in sum_i x_i M_{u - e_i}."""
    u = M.clamp(tuple(u))
    incoming = []
    for i in range(M.r):
        if u[i] == 0:
            continue
        w = u[:i] + (u[i] - 1,) + u[i + 1:]
        incoming.extend(columns(M.steps[(w, i)], M.dims[w]))
    n = M.dims[u]
    return bool(extend_to_complement(M.field, incoming, [a], n))


@dataclass
class LifeReport:
    birth: tuple
    is_generator: bool
    annihilator: MonomialIdeal
    deaths: list
    support_dimension: int
    lives_along: object          # CoordinatePrime, or "mixed"
    minimal_primes: list = dc_field(default_factory=list)

    @property
    def lives_forever(self):
        return self.annihilator.is_zero()

    def lives_along_str(self):
        return self.lives_along if isinstance(self.lives_along, str) else str(self.lives_along)

    def to_json(self):
        return {
            "birth": list(self.birth),
            "is_generator": self.is_generator,
            "annihilator": str(self.annihilator),
            "deaths": None if self.lives_forever else [list(d) for d in self.deaths],
            "lives_forever": self.lives_forever,
            "support_dimension": self.support_dimension,
            "lives_along": self.lives_along_str(),
            "minimal_primes": [str(p) for p in self.minimal_primes],
        }

    def describe(self):
        death = "lives forever" if self.lives_forever else \
            "dies at {%s}" % ", ".join(fmt_degree(d) for d in self.deaths)
        mixed = ""
        if self.lives_along == "mixed":
            mixed = " (minimal primes %s)" % ", ".join(str(p) for p in self.minimal_primes)
        return "born %s%s, %s, support dimension %d, lives along %s%s" % (
            fmt_degree(self.birth), "" if self.is_generator else " (not a minimal generator)",
            death, self.support_dimension, self.lives_along_str(), mixed)


def life_report(M, u, a):
    u = tuple(u)
    ann = annihilator(M, u, a)
    deaths = [add(u, g) for g in ann.gens]
    r = M.r
    if ann.is_zero():
        prime = CoordinatePrime((), r)
        return LifeReport(u, is_minimal_generator(M, u, a), ann, [], r, prime, [prime])
    mins = minimal_primes(ann)
    rad = radical(ann)
    if len(mins) == 1 and rad == mins[0].ideal():
        along = mins[0]
        dim = mins[0].dimension
    else:
        along = "mixed"
        dim = max(p.dimension for p in mins)
    return LifeReport(u, is_minimal_generator(M, u, a), ann, deaths, dim, along, mins)


# ---------------------------------------------------------------- Ass

def colon_dim(M, u, vars):
    """dim (0 :_M <x_i : i in vars>)_u."""
    n = M.dim(u)
    if not vars or n == 0:
        return n
    rows = []
    for i in vars:
        rows.extend(M.step(u, i))
    return len(nullspace(M.field, rows, n))


def colon_rank(M, prime):
    """rank over S/p of (0 :_M p): sum of stable slice dimensions."""
    P = prime.vars
    total = 0
    for w in product(*(range(M.top[i] + 1) for i in P)):
        u = list(M.top)
        for i, k in zip(P, w):
            u[i] = k
        total += colon_dim(M, tuple(u), P)
    return total


class AssPoset:

    def __init__(self, primes, r):
        self.r = r
        self.primes = sorted(primes)

    def __contains__(self, p):
        return p in self.primes

    def __len__(self):
        return len(self.primes)

    def __eq__(self, other):
        return isinstance(other, AssPoset) and self.primes == other.primes

    def minimal(self):
        return [p for p in self.primes if not any(q != p and q <= p for q in self.primes)]

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.primes) + "}"

    def to_json(self):
        return [str(p) for p in self.primes]


def associated_primes(M):
    primes = all_coordinate_primes(M.r)
    ranks = pmap(lambda p: colon_rank(M, p), primes)
    return AssPoset([p for p, k in zip(primes, ranks) if k > 0], M.r)


class SupportShape:
    """ss(M): union of the regions c_p = {u : u_i = 0, i in P} over Ass(M)."""

    def __init__(self, ass):
        self.r = ass.r
        self.regions = ass.minimal()

    def __contains__(self, u):
        return any(p.region_contains(u) for p in self.regions)

    def __str__(self):
        if not self.regions:
            return "empty"
        return " ∪ ".join("c%s" % p for p in self.regions)

    def to_json(self):
        return [str(p) for p in self.regions]


def support_shape(ass):
    return SupportShape(ass)


def strata_chains(ass):
    """Maximal chains p_0 < p_1 < ... of Ass(M) under inclusion."""
    primes = ass.primes
    below = {p: [q for q in primes if q != p and q <= p] for p in primes}
    above = {p: [q for q in primes if q != p and p <= q] for p in primes}
    chains = []

    def extend(chain):
        last = chain[-1]
        nxt = [q for q in above[last]
               if not any(z != q and last <= z and z <= q and z != last for z in primes)]
        if not nxt:
            chains.append(chain)
            return
        for q in sorted(nxt):
            extend(chain + [q])

    for p in sorted(primes):
        if not below[p]:
            extend([p])
    return chains


# ---------------------------------------------------------------- H^0_p

class LocalCohomology:

    def __init__(self, frame, prime, power):
        self.frame = frame
        self.prime = prime
        self.power = power


def _monomials(P, n, r):
    """Exponent vectors of total degree n supported on the variables P."""
    out = []
    for w in product(range(n + 1), repeat=len(P)):
        if sum(w) == n:
            v = [0] * r
            for i, k in zip(P, w):
                v[i] = k
            out.append(tuple(v))
    return out


def _killed_by_power(M, u, P, n):
    """Basis of {m in M_u : x^a m = 0 for all a of degree n on P}."""
    dim = M.dims[u]
    rows = []
    for a in _monomials(P, n, M.r):
        rows.extend(M.map(u, add(u, a)))
    if not rows:
        return [unit_vector(M.field, dim, k) for k in range(dim)]
    return nullspace(M.field, rows, dim)


def local_cohomology_H0(M, prime):
    """H^0_p(M) as a sub-frame: the union of the colons (0 :_M p^n)."""
    P = prime.vars
    if not P:
        raise ValueError("H^0 needs a nonzero prime")
    bound = sum(M.top[i] for i in P) + 1
    prev = None
    n = 1
    while True:
        spaces = {u: _killed_by_power(M, u, P, n) for u in M.degrees()}
        dims = {u: len(v) for u, v in spaces.items()}
        if dims == prev:
            break
        prev = dims
        n += 1
        if n > bound + 1:
            raise InvariantError("H^0 did not stabilize by n = %d" % bound)
    # dims at n-1 and n agree, so (0 : p^(n-1)) is the union
    L = subframe(M, spaces)
    return LocalCohomology(L, prime, n - 1)


def cp_rank(M, prime, check=True):
    L = local_cohomology_H0(M, prime)
    F = L.frame
    if len(prime.vars) == M.r:
        val = F.total_dimension()
    else:
        val = 0
        for w in product(*(range(M.top[i] + 1) for i in prime.vars)):
            u = list(M.top)
            for i, k in zip(prime.vars, w):
                u[i] = k
            val += F.dims[tuple(u)]
    if check and hs_of_H0(L).at_one() != val:
        raise InvariantError("c_p-rank and the H^0 series disagree")
    return val


def hs_of_H0(L):
    """Numerator of HS(H^0_p(M)) over prod_{i not in P} (1 - t_i)."""
    F = L.frame
    HF = HilbertFunction(F.top, dict(F.dims))
    free = [i for i in range(F.r) if i not in L.prime.vars]
    extent = tuple(k + 1 for k in F.top)
    return difference_numerator(HF, free, extent)


def h0_series_str(L):
    free = [i for i in range(L.frame.r) if i not in L.prime.vars]
    return series_str(hs_of_H0(L), free)


# ---------------------------------------------------------------- rank invariant

def rank_invariant(M, u, v):
    if not leq(u, v):
        raise ValueError("rank invariant needs %s <= %s" % (fmt_degree(u), fmt_degree(v)))
    return rank(M.field, M.map(u, v), M.dim(u))


def prop_rank_drop_holds(M, ass, u, v):
    """If rho(u,v) < dim M_u then some x_i dividing x^(v-u) lies in an associated prime."""
    if rank_invariant(M, u, v) >= M.dim(u):
        return True
    vars_used = {i for i in range(M.r) if v[i] > u[i]}
    return any(set(p.vars) & vars_used for p in ass.primes)


# ---------------------------------------------------------------- cokernel shortcut

def ass_via_cokernel(K, i, field=None, top=None):
    """Ass of coker d_{i+1}, reconciled with Ass(H_i(K)).

    Returns (ass_cokernel, ass_homology, case) where case is "equal" or
    "cokernel adds (0)"; anything else raises InvariantError.
    """
    C = homology_frame(K, i, top=top, field=field, cokernel=True)
    H = homology_frame(K, i, top=top, field=field)
    a_c = associated_primes(C)
    a_h = associated_primes(H)
    zero = CoordinatePrime((), K.r)
    if a_c == a_h:
        case = "equal"
    elif set(a_c.primes) == set(a_h.primes) | {zero} and zero not in a_h:
        case = "cokernel adds (0)"
    else:
        raise InvariantError("Ass(coker) = %s is not Ass(H) = %s up to (0)" % (a_c, a_h))
    return a_c, a_h, case


# ---------------------------------------------------------------- brute force

def brute_force_ass(M):
    """Ass by enumerating every nonzero homogeneous element (finite fields only)."""
    elements = M.field.elements()
    found = set()
    for u in M.degrees():
        n = M.dims[u]
        if n == 0:
            continue
        for vec in product(elements, repeat=n):
            if not any(vec):
                continue
            ann = annihilator(M, u, list(vec))
            if all(sum(g) == 1 for g in ann.gens):
                found.add(CoordinatePrime([g.index(1) for g in ann.gens], M.r))
    return AssPoset(found, M.r)


def stratification_report(M):
    """Everything the `strata` command prints, as plain data."""
    from .frames import minimal_generators
    ass = associated_primes(M)
    elements = [life_report(M, u, a) for u, a in minimal_generators(M)]
    cp = {}
    for p in ass.primes:
        if p.vars:
            cp[p] = cp_rank(M, p)
    return {"ass": ass, "minimal": ass.minimal(), "chains": strata_chains(ass),
            "shape": support_shape(ass), "elements": elements, "cp_ranks": cp}
