"""Degreewise representation of N^r-graded modules on a bounding box.

A :class:`Frame` stores ``dim M_u`` and the one-step maps ``M_u -> M_{u+e_i}``
for every degree ``u`` of the box ``[0, top]``.  Outside the box the module is
extended by ``M_v = M_{min(v, top)}`` with identity steps, which is exact
whenever every generator and relation (or every entry degree) lies in the box:
for ``u_i >= top_i`` nothing new is born or killed in direction ``i``, so
multiplication by ``x_i`` is an isomorphism there.  Kernels, images, cokernels
and homology of maps between such frames inherit the property, hence all of
their minimal generators and relations also lie in the box.
"""
import json
import os
from concurrent.futures import ThreadPoolExecutor

from . import algebra
from .algebra import leq, meet, unit, box_degrees, fmt_degree
from .linalg import (Basis, identity, matmul, matvec, nullspace, column_space, zeros,
                     unit_vector, extend_to_complement, is_zero_matrix, columns, rank)


class InvariantError(RuntimeError):
    """An internal consistency check failed (exit code 3 in the CLI)."""


def worker_count():
    try:
        return max(1, int(os.environ.get("MPH_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    """Order-preserving map, threaded when MPH_THREADS > 1."""
    items = list(items)
    n = worker_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


class Frame:
    """An N^r-graded module, degreewise, on the box [0, top]."""

    def __init__(self, field, top, dims, steps, reps=None, ambient=None):
        self.field = field
        self.top = tuple(top)
        self.r = len(self.top)
        self.dims = dims
        self.steps = steps
        # reps[u]: basis vectors of M_u written in an ambient space (kernel
        # frames: the source; homology: chain coordinates), when meaningful
        self.reps = reps
        self.ambient = ambient
        self._map_cache = {}

    # -- geometry
    def degrees(self):
        return box_degrees(self.top)

    def clamp(self, u):
        if len(u) != self.r:
            raise algebra.DimensionMismatch("degree %s in a frame with r=%d" % (fmt_degree(u), self.r))
        return meet(u, self.top)

    def dim(self, u):
        return self.dims[self.clamp(u)]

    def total_dimension(self):
        return sum(self.dims.values())

    def is_zero(self):
        return not any(self.dims.values())

    # -- maps
    def step(self, u, i):
        """Matrix of x_i : M_u -> M_{u+e_i}."""
        c = self.clamp(u)
        if u[i] >= self.top[i]:
            return identity(self.field, self.dims[c])
        return self.steps[(c, i)]

    def map(self, u, v):
        """Matrix of x^(v-u) : M_u -> M_v along the lexicographic staircase."""
        if not leq(u, v):
            raise ValueError("%s is not <= %s" % (fmt_degree(u), fmt_degree(v)))
        cu, cv = self.clamp(u), self.clamp(v)
        key = (cu, cv)
        if key in self._map_cache:
            return self._map_cache[key]
        cur = list(cu)
        mat = identity(self.field, self.dims[cu])
        for i in range(self.r):
            while cur[i] < cv[i]:
                st = self.steps[(tuple(cur), i)]
                d0 = self.dims[tuple(cur)]
                cur[i] += 1
                mat = matmul(self.field, st, mat, d0, len(mat[0]) if mat else self.dims[cu])
        self._map_cache[key] = mat
        return mat

    def apply(self, u, v, vec):
        return matvec(self.field, self.map(u, v), vec)

    def validate(self):
        """Check every square commutes; raise InvariantError otherwise."""
        f = self.field
        for u in self.degrees():
            for i in range(self.r):
                for j in range(i + 1, self.r):
                    if u[i] >= self.top[i] or u[j] >= self.top[j]:
                        continue
                    ui, uj = _bump(u, i), _bump(u, j)
                    a = matmul(f, self.steps[(ui, j)], self.steps[(u, i)], self.dims[ui], self.dims[u])
                    b = matmul(f, self.steps[(uj, i)], self.steps[(u, j)], self.dims[uj], self.dims[u])
                    if a != b:
                        raise InvariantError("square at %s in directions %d,%d does not commute"
                                             % (fmt_degree(u), i + 1, j + 1))
            for i in range(self.r):
                if u[i] < self.top[i]:
                    st = self.steps[(u, i)]
                    if len(st) != self.dims[_bump(u, i)] or any(len(row) != self.dims[u] for row in st):
                        raise InvariantError("step at %s has wrong shape" % fmt_degree(u))
        return self

    def dump(self):
        """Debug JSON: dims and step matrices."""
        return json.dumps({
            "top": list(self.top),
            "dims": {fmt_degree(u): d for u, d in sorted(self.dims.items())},
            "steps": {"%s,x%d" % (fmt_degree(u), i + 1): [[self.field.to_json(x) for x in row] for row in m]
                      for (u, i), m in sorted(self.steps.items())},
        }, indent=1, sort_keys=True)

    def __repr__(self):
        return "Frame(top=%s, total_dim=%d)" % (fmt_degree(self.top), self.total_dimension())


def _bump(u, i):
    return u[:i] + (u[i] + 1,) + u[i + 1:]


class FrameMap:
    """Natural transformation between two frames on the same box."""

    def __init__(self, source, target, comps):
        if source.top != target.top:
            raise ValueError("frames live on different boxes")
        self.source = source
        self.target = target
        self.comps = comps
        self.field = source.field

    def comp(self, u):
        return self.comps[self.source.clamp(u)]

    def validate(self):
        f = self.field
        S, T = self.source, self.target
        for u in S.degrees():
            for i in range(S.r):
                if u[i] >= S.top[i]:
                    continue
                v = _bump(u, i)
                a = matmul(f, T.steps[(u, i)], self.comps[u], T.dims[u], S.dims[u])
                b = matmul(f, self.comps[v], S.steps[(u, i)], S.dims[v], S.dims[u])
                if a != b:
                    raise InvariantError("map is not natural at %s, direction %d" % (fmt_degree(u), i + 1))
        return self


def subquotient_frame(field, top, ambient_dim, ambient_step, cycles, bounds, candidates=None):
    """Frame of Z_u / B_u with Z_u, B_u subspaces of an ambient V_u.

    ``ambient_step(u, i)`` is the matrix V_u -> V_{u+e_i}; it must carry Z into
    Z and B into B.  ``cycles(u)`` and ``bounds(u)`` return spanning vectors.
    Basis representatives are chosen greedily from ``candidates(u)`` (default:
    the echelon basis of Z_u), so the choice is deterministic.
    """
    degs = box_degrees(top)
    r = len(top)

    def build(u):
        n = ambient_dim(u)
        B = column_space(field, _as_rows(bounds(u), n), len(bounds(u))) if bounds(u) else []
        Z = cycles(u)
        cands = candidates(u) if candidates else Z
        reps = extend_to_complement(field, B, cands, n)
        coord = Basis(field, reps + B, n)
        return reps, coord

    built = dict(zip(degs, pmap(build, degs)))
    dims = {u: len(built[u][0]) for u in degs}
    steps = {}
    for u in degs:
        reps = built[u][0]
        for i in range(r):
            if u[i] >= top[i]:
                continue
            v = _bump(u, i)
            A = ambient_step(u, i)
            coord = built[v][1]
            k = dims[v]
            cols = []
            for q in reps:
                w = matvec(field, A, q)
                c = coord.coords(w)
                cols.append(c[:k])
            steps[(u, i)] = _cols_to_matrix(field, cols, k)
    return Frame(field, top, dims, steps, reps={u: built[u][0] for u in degs})


def _as_rows(vectors, n):
    """Vectors as the columns of an n x len(vectors) matrix."""
    return [[v[i] for v in vectors] for i in range(n)]


def _cols_to_matrix(field, cols, nrows):
    out = zeros(field, nrows, len(cols))
    for j, c in enumerate(cols):
        for i in range(nrows):
            out[i][j] = c[i]
    return out


# ---------------------------------------------------------------- constructors

def zero_frame(field, top):
    degs = box_degrees(top)
    steps = {(u, i): [] for u in degs for i in range(len(top)) if u[i] < top[i]}
    return Frame(field, top, {u: 0 for u in degs}, steps, reps={u: [] for u in degs})


def free_frame(field, degrees, top):
    """Frame of the free module with basis in the given degrees."""
    degrees = [tuple(d) for d in degrees]
    for d in degrees:
        if not leq(d, top):
            raise ValueError("generator degree %s outside the box %s" % (fmt_degree(d), fmt_degree(top)))
    degs = box_degrees(top)
    present = {u: [k for k, d in enumerate(degrees) if leq(d, u)] for u in degs}
    dims = {u: len(present[u]) for u in degs}
    steps = {}
    for u in degs:
        for i in range(len(top)):
            if u[i] >= top[i]:
                continue
            v = _bump(u, i)
            pos = {k: a for a, k in enumerate(present[v])}
            m = zeros(field, dims[v], dims[u])
            for b, k in enumerate(present[u]):
                m[pos[k]][b] = field.one
            steps[(u, i)] = m
    F = Frame(field, top, dims, steps)
    F.basis_degrees = degrees
    F.present = present
    return F


def free_map(source, target, matrix):
    """FrameMap between free frames given by a scalar matrix (rows: target gens)."""
    field = source.field
    comps = {}
    for u in source.degrees():
        sp, tp = source.present[u], target.present[u]
        m = zeros(field, len(tp), len(sp))
        for b, j in enumerate(sp):
            for a, i in enumerate(tp):
                m[a][b] = matrix[i][j]
        comps[u] = m
    return FrameMap(source, target, comps)


def frame_of_presentation(P, top=None):
    """Degreewise cokernel of the relation map of a presentation."""
    field = P.field
    if top is None:
        top = P.bounding_degree()
    top = tuple(top)
    need = P.bounding_degree()
    if not leq(need, top):
        raise ValueError("box %s does not contain all degrees (need %s)" % (fmt_degree(top), fmt_degree(need)))
    F = free_frame(field, P.gen_degrees, top)
    present = F.present

    def rels(u):
        pos = {k: a for a, k in enumerate(present[u])}
        out = []
        for j, rd in enumerate(P.rel_degrees):
            if leq(rd, u):
                v = [field.zero] * len(pos)
                for i, a in pos.items():
                    v[a] = P.coeffs[i][j]
                out.append(v)
        return out

    def units(u):
        n = F.dims[u]
        return [unit_vector(field, n, k) for k in range(n)]

    M = subquotient_frame(field, top, lambda u: F.dims[u], lambda u, i: F.steps[(u, i)],
                          units, rels, candidates=units)
    M.ambient = F
    return M


def kernel_frame(f):
    S = f.source
    field = f.field

    def cycles(u):
        return nullspace(field, f.comps[u], S.dims[u])

    K = subquotient_frame(field, S.top, lambda u: S.dims[u], lambda u, i: S.steps[(u, i)],
                          cycles, lambda u: [])
    K.ambient = S
    return K


def image_frame(f):
    S, T = f.source, f.target
    field = f.field

    def imgs(u):
        return column_space(field, f.comps[u], S.dims[u])

    I = subquotient_frame(field, T.top, lambda u: T.dims[u], lambda u, i: T.steps[(u, i)],
                          imgs, lambda u: [])
    I.ambient = T
    return I


def cokernel_frame(f):
    S, T = f.source, f.target
    field = f.field

    def units(u):
        return [unit_vector(field, T.dims[u], k) for k in range(T.dims[u])]

    def imgs(u):
        return columns(f.comps[u], S.dims[u])

    C = subquotient_frame(field, T.top, lambda u: T.dims[u], lambda u, i: T.steps[(u, i)],
                          units, imgs, candidates=units)
    C.ambient = T
    return C


def inclusion_map(sub):
    """FrameMap sub -> sub.ambient for kernel/image frames (reps are the images)."""
    A = sub.ambient
    comps = {}
    for u in sub.degrees():
        comps[u] = _cols_to_matrix(sub.field, sub.reps[u], A.dims[u])
    return FrameMap(sub, A, comps)


def subframe(M, spaces):
    """Sub-frame of M spanned degreewise by ``spaces[u]`` (vectors in M_u).

    The spaces must be closed under the steps of M.
    """
    def gens(u):
        return spaces[u]

    N = subquotient_frame(M.field, M.top, lambda u: M.dims[u], lambda u, i: M.steps[(u, i)],
                          gens, lambda u: [])
    N.ambient = M
    return N


# ---------------------------------------------------------------- homology

def homology_frame(K, i, top=None, field=None, cokernel=False):
    """Frame of H_i(K) (or of coker d_{i+1} when ``cokernel``) on the box."""
    from . import filtration as flt
    field = field or K.field
    s = flt.stabilization_degree(K)
    top = tuple(top) if top is not None else s
    if not leq(s, top):
        raise ValueError("box %s does not dominate the stabilization degree %s" % (fmt_degree(top), fmt_degree(s)))
    degs = box_degrees(top)
    cbasis = {u: flt.chain_basis(K, u, i) for u in degs}
    pos = {u: {sig: k for k, sig in enumerate(cbasis[u])} for u in degs}

    def ambient_step(u, j):
        v = _bump(u, j)
        m = zeros(field, len(cbasis[v]), len(cbasis[u]))
        for k, sig in enumerate(cbasis[u]):
            m[pos[v][sig]][k] = field.one
        return m

    def cycles(u):
        n = len(cbasis[u])
        if cokernel:
            return [unit_vector(field, n, k) for k in range(n)]
        d = flt.boundary_matrix(field, flt.chain_basis(K, u, i - 1), cbasis[u])
        return nullspace(field, d, n)

    def bounds(u):
        up = flt.chain_basis(K, u, i + 1)
        if not up:
            return []
        d = flt.boundary_matrix(field, cbasis[u], up)
        return columns(d, len(up))

    H = subquotient_frame(field, top, lambda u: len(cbasis[u]), ambient_step, cycles, bounds,
                          candidates=(lambda u: [unit_vector(field, len(cbasis[u]), k)
                                                 for k in range(len(cbasis[u]))]) if cokernel else None)
    H.chain_basis = cbasis
    return H


def simplicial_betti(K, u, i, field=None):
    """dim H_i(K_u) by rank-nullity (independent of the frame machinery)."""
    from . import filtration as flt
    field = field or K.field
    ci = flt.chain_basis(K, u, i)
    d_i = flt.boundary_matrix(field, flt.chain_basis(K, u, i - 1), ci)
    up = flt.chain_basis(K, u, i + 1)
    d_up = flt.boundary_matrix(field, ci, up)
    return len(ci) - rank(field, d_i, len(ci)) - (rank(field, d_up, len(up)) if up else 0)


# ---------------------------------------------------------------- generators

def minimal_generators(M):
    """Minimal homogeneous generators as (degree, coordinate vector) pairs.

    At each u, a basis of M_u modulo the images of M_{u-e_i}; unit vectors are
    preferred so the lifts are sparse.
    """
    field = M.field
    out = []
    for u in M.degrees():
        n = M.dims[u]
        if n == 0:
            continue
        incoming = []
        for i in range(M.r):
            if u[i] == 0:
                continue
            w = u[:i] + (u[i] - 1,) + u[i + 1:]
            incoming.extend(columns(M.steps[(w, i)], M.dims[w]))
        units = [unit_vector(field, n, k) for k in range(n)]
        base = [v for v in incoming if any(v)]
        for vec in extend_to_complement(field, base, units, n):
            out.append((u, vec))
    return out


def cover_map(M, gens):
    """FrameMap F_0 -> M sending the k-th basis element to the k-th generator."""
    field = M.field
    F = free_frame(field, [g for g, _ in gens], M.top)
    comps = {}
    for u in M.degrees():
        cols = []
        for k in F.present[u]:
            g, vec = gens[k]
            cols.append(M.apply(g, u, vec))
        comps[u] = _cols_to_matrix(field, cols, M.dims[u])
    return FrameMap(F, M, comps)


def syzygies(f, gens_degrees):
    """Minimal generators of ker(f) for f: free F -> target, as coefficient columns.

    Returns (degrees, matrix) where matrix rows index the basis of F.
    """
    F = f.source
    field = f.field
    K = kernel_frame(f)
    mg = minimal_generators(K)
    degs = []
    cols = []
    nF = len(gens_degrees)
    for v, vec in mg:
        amb = matvec(field, _cols_to_matrix(field, K.reps[v], F.dims[v]), vec) if K.reps[v] else []
        col = [field.zero] * nF
        for a, k in enumerate(F.present[v]):
            col[k] = amb[a]
        degs.append(v)
        cols.append(col)
    return degs, _cols_to_matrix(field, cols, nF)


def minimal_presentation(M):
    """Minimal presentation of a frame; ``P.generators`` holds the generator elements."""
    from .presentation import Presentation
    gens = minimal_generators(M)
    phi = cover_map(M, gens)
    rel_degs, coeffs = syzygies(phi, [g for g, _ in gens])
    P = Presentation(M.r, M.field, [g for g, _ in gens], rel_degs, coeffs)
    P.generators = [vec for _, vec in gens]
    if not P.is_minimal():
        raise InvariantError("computed presentation is not minimal")
    return P


# ---------------------------------------------------------------- resolutions

class FreeResolution:
    """F_n -> ... -> F_1 -> F_0 (-> M).

    ``degrees[i]`` lists the basis degrees of F_i; ``maps[i]`` (i >= 1) is the
    scalar matrix of F_i -> F_{i-1}, rows indexed by the basis of F_{i-1}.
    """

    def __init__(self, r, field, degrees, maps, top):
        self.r = r
        self.field = field
        self.degrees = degrees
        self.maps = maps
        self.top = top

    @property
    def length(self):
        n = len(self.degrees) - 1
        while n > 0 and not self.degrees[n]:
            n -= 1
        return n if self.degrees and self.degrees[0] else 0

    def ranks(self):
        return [len(d) for d in self.degrees]

    def hf(self, u):
        """Euler characteristic sum_i (-1)^i dim (F_i)_u."""
        return sum((-1) ** i * sum(1 for d in degs if leq(d, u)) for i, degs in enumerate(self.degrees))

    def describe(self):
        parts = ["0"]
        for degs in reversed(self.degrees):
            if not degs:
                continue
            parts.append(" ⊕ ".join(_free_name(d) for d in degs))
        return " → ".join(parts)

    def to_json(self):
        return {
            "length": self.length,
            "modules": [[list(d) for d in degs] for degs in self.degrees],
            "maps": [None] + [[[self.field.to_json(x) for x in row] for row in m] for m in self.maps[1:]],
        }


def _free_name(d):
    return "S" if not any(d) else "S(%s)" % ",".join(str(-k) for k in d)


def minimal_free_resolution(M, top=None):
    """Minimal free resolution of a Frame or a Presentation."""
    from .presentation import Presentation
    if isinstance(M, Presentation):
        M = frame_of_presentation(M, top)
    field = M.field
    gens = minimal_generators(M)
    degrees = [[g for g, _ in gens]]
    maps = [None]
    f = cover_map(M, gens)
    for step in range(M.r + 2):
        degs, mat = syzygies(f, degrees[-1])
        if not degs:
            break
        if step >= M.r:
            raise InvariantError("resolution longer than r=%d" % M.r)
        degrees.append(degs)
        maps.append(mat)
        src = free_frame(field, degs, M.top)
        f = free_map(src, f.source, mat)
    R = FreeResolution(M.r, field, degrees, maps, M.top)
    _check_resolution(R)
    return R


def _check_resolution(R):
    f = R.field
    for i in range(2, len(R.maps)):
        a, b = R.maps[i - 1], R.maps[i]
        comp = matmul(f, a, b, len(R.degrees[i - 1]), len(R.degrees[i]))
        if not is_zero_matrix(comp):
            raise InvariantError("d_%d d_%d is not zero" % (i - 1, i))
    for i in range(1, len(R.maps)):
        m = R.maps[i]
        for a, ga in enumerate(R.degrees[i - 1]):
            for b, gb in enumerate(R.degrees[i]):
                if m[a][b] and (ga == gb or not leq(ga, gb)):
                    raise InvariantError("resolution map %d is not minimal/graded" % i)


def betti_numbers(R):
    """[(i, degree, multiplicity)] sorted by i then degree."""
    out = []
    for i, degs in enumerate(R.degrees):
        counts = {}
        for d in degs:
            counts[d] = counts.get(d, 0) + 1
        out.extend((i, d, counts[d]) for d in sorted(counts))
    return out
