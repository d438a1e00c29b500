"""One-parameter reductions (lines, monotone paths, the diagonal tensor) and barcodes."""
from dataclasses import dataclass

from .algebra import leq, add, fmt_degree
from .frames import Frame, InvariantError, frame_of_presentation, minimal_presentation
from .hilbert import Poly, hs_numerator, hilbert_function
from .linalg import rank
from .presentation import Presentation

INF = None


@dataclass(frozen=True)
class LineMap:
    direction: tuple
    offset: tuple

    def __post_init__(self):
        if not any(self.direction):
            raise ValueError("line direction must be nonzero")
        if len(self.direction) != len(self.offset):
            raise ValueError("direction and offset have different length")

    def __call__(self, i):
        return tuple(i * d + o for d, o in zip(self.direction, self.offset))


def _line_stable_index(top, l):
    n = 0
    for t, d, o in zip(top, l.direction, l.offset):
        if d > 0 and t > o:
            n = max(n, -(-(t - o) // d))
    return n


def pullback(M, points):
    """1-parameter frame i -> M_{points[i]}, constant after the last point."""
    n = len(points) - 1
    dims = {(i,): M.dim(points[i]) for i in range(n + 1)}
    steps = {((i,), 0): M.map(points[i], points[i + 1]) for i in range(n)}
    return Frame(M.field, (n,), dims, steps)


def restrict_to_line(M, l):
    """M o l with l(i) = i*direction + offset."""
    if len(l.direction) != M.r:
        raise ValueError("line lives in N^%d, module in N^%d" % (len(l.direction), M.r))
    n = _line_stable_index(M.top, l)
    return pullback(M, [l(i) for i in range(n + 1)])


def restrict_to_path(M, path):
    path = [tuple(p) for p in path]
    if not path:
        raise ValueError("empty path")
    for a, b in zip(path, path[1:]):
        if len(a) != M.r or len(b) != M.r:
            raise ValueError("path point has the wrong number of coordinates")
        if not leq(a, b):
            raise ValueError("path is not monotone: %s then %s" % (fmt_degree(a), fmt_degree(b)))
    return pullback(M, path)


def diagonal_presentation(P):
    """Presentation of M (x) S/<x1 - x2, ...> as a K[x]-module graded by total degree."""
    return Presentation(1, P.field, [(sum(g),) for g in P.gen_degrees],
                        [(sum(d),) for d in P.rel_degrees], P.coeffs)


def diagonal_tensor(P):
    Q = diagonal_presentation(P)
    return frame_of_presentation(Q)


# ---------------------------------------------------------------- barcodes

@dataclass(frozen=True, order=True)
class Bar:
    birth: int
    death: object   # int or None (infinite)

    def key(self):
        return (self.birth, float("inf") if self.death is None else self.death)

    def __str__(self):
        return "[%d, %s)" % (self.birth, "∞" if self.death is None else self.death)

    def to_json(self):
        return {"birth": self.birth, "death": self.death}


class Barcode:

    def __init__(self, bars):
        self.bars = sorted(bars, key=Bar.key)

    def __eq__(self, other):
        return isinstance(other, Barcode) and self.bars == other.bars

    def __len__(self):
        return len(self.bars)

    def infinite(self):
        return sum(1 for b in self.bars if b.death is None)

    def as_tuples(self):
        return sorted(((b.birth, b.death) for b in self.bars), key=lambda t: (t[0], float("inf") if t[1] is None else t[1]))

    def __str__(self):
        return "\n".join(str(b) for b in self.bars)

    def to_json(self):
        return [b.to_json() for b in self.bars]

    def numerator(self):
        """HS numerator recomputed from the bars: sum t^b - t^d."""
        terms = {}
        for b in self.bars:
            terms[(b.birth,)] = terms.get((b.birth,), 0) + 1
            if b.death is not None:
                terms[(b.death,)] = terms.get((b.death,), 0) - 1
        return Poly(1, terms)


def barcode_of_presentation(P):
    """Graded column reduction of a K[x] presentation (elder rule pairing)."""
    if P.r != 1:
        raise ValueError("barcodes need a one-parameter module")
    field = P.field
    n, m = P.n_gens, P.n_rels
    # youngest generator last: ties broken by index
    gorder = sorted(range(n), key=lambda i: (P.gen_degrees[i][0], i))
    rank_of = {g: k for k, g in enumerate(gorder)}
    cols = sorted(range(m), key=lambda j: (P.rel_degrees[j][0], j))
    reduced = {}
    pivot_owner = {}
    bars = []
    paired = set()
    for j in cols:
        col = [P.coeffs[i][j] for i in range(n)]
        while True:
            nz = [i for i in range(n) if col[i]]
            if not nz:
                break
            piv = max(nz, key=lambda i: rank_of[i])
            if piv not in pivot_owner:
                break
            other = reduced[pivot_owner[piv]]
            c = col[piv] / other[piv]
            col = [a - c * b for a, b in zip(col, other)]
        if not any(col):
            continue
        pivot_owner[piv] = j
        reduced[j] = col
        birth = P.gen_degrees[piv][0]
        death = P.rel_degrees[j][0]
        if death > birth:
            bars.append(Bar(birth, death))
        paired.add(piv)
    for i in range(n):
        if i not in paired:
            bars.append(Bar(P.gen_degrees[i][0], None))
    return Barcode(bars)


def barcode(N):
    """Barcode of a one-parameter frame."""
    if N.r != 1:
        raise ValueError("barcodes need a one-parameter module")
    B = barcode_of_presentation(minimal_presentation(N))
    if B.numerator() != hs_numerator(hilbert_function(N)):
        raise InvariantError("barcode does not reproduce the Hilbert series")
    return B


def barcode_from_rank_invariant(N):
    """Multiplicity of [b, d) = rho(b,d-1) - rho(b-1,d-1) - rho(b,d) + rho(b-1,d)."""
    top = N.top[0]

    def rho(a, b):
        if a < 0 or b < a:
            return 0
        return rank(N.field, N.map((a,), (b,)), N.dim((a,)))

    bars = []
    for b in range(top + 1):
        for d in range(b + 1, top + 2):
            k = rho(b, d - 1) - rho(b - 1, d - 1) - rho(b, d) + rho(b - 1, d)
            bars.extend([Bar(b, d)] * k)
        k = rho(b, top + 1) - rho(b - 1, top + 1)
        bars.extend([Bar(b, None)] * k)
    return Barcode(bars)


def classic_barcode(K, i, field=None):
    """Standard boundary-matrix column reduction for a one-parameter filtration."""
    if K.r != 1:
        raise ValueError("classic reduction needs r = 1")
    field = field or K.field
    order = sorted(K.simplices, key=lambda s: (min(e[0] for e in s.entries), s.dim, s.vertices))
    pos = {s.vertices: k for k, s in enumerate(order)}
    value = [min(e[0] for e in s.entries) for s in order]
    cols = []
    for s in order:
        col = {}
        if s.dim > 0:
            for k in range(len(s.vertices)):
                face = s.vertices[:k] + s.vertices[k + 1:]
                col[pos[face]] = field.one if k % 2 == 0 else -field.one
        cols.append(col)
    low_owner = {}
    pairs = {}
    for j in range(len(order)):
        col = cols[j]
        while col:
            low = max(col)
            if low not in low_owner:
                break
            other = cols[low_owner[low]]
            c = col[low] / other[low]
            for k, v in other.items():
                w = col.get(k, field.zero) - c * v
                if w:
                    col[k] = w
                else:
                    col.pop(k, None)
        if col:
            low = max(col)
            low_owner[low] = j
            pairs[low] = j
        cols[j] = col
    killers = set(pairs.values())
    bars = []
    for k, s in enumerate(order):
        if s.dim != i or k in killers:
            continue
        if k in pairs:
            d = value[pairs[k]]
            if d > value[k]:
                bars.append(Bar(value[k], d))
        else:
            bars.append(Bar(value[k], None))
    return Barcode(bars)
