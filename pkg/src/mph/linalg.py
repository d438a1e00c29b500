"""Exact dense linear algebra over a Field.

Matrices are lists of rows; a matrix with ``m`` rows and ``n`` columns acts on
column vectors of length ``n``.  Pivoting always takes the first nonzero entry
in the fixed basis order, so every result is reproducible.
"""


def zeros(field, m, n):
    return [[field.zero] * n for _ in range(m)]


def identity(field, n):
    out = zeros(field, n, n)
    for i in range(n):
        out[i][i] = field.one
    return out


def unit_vector(field, n, i):
    v = [field.zero] * n
    v[i] = field.one
    return v


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def columns(a, ncols):
    """Columns of an m x ncols matrix as vectors (works for m = 0)."""
    return [[row[j] for row in a] for j in range(ncols)]


def from_columns(field, cols, nrows):
    out = zeros(field, nrows, len(cols))
    for j, c in enumerate(cols):
        for i in range(nrows):
            out[i][j] = c[i]
    return out


def matmul(field, a, b, inner, ncols):
    """(m x inner) @ (inner x ncols)."""
    out = zeros(field, len(a), ncols)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(inner):
            x = row[k]
            if not x:
                continue
            brow = b[k]
            for j in range(ncols):
                y = brow[j]
                if y:
                    orow[j] = orow[j] + x * y
    return out


def matvec(field, a, v):
    out = []
    for row in a:
        s = field.zero
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def is_zero_vector(v):
    return not any(v)


def is_zero_matrix(a):
    return not any(any(row) for row in a)


def rref(field, rows, ncols):
    """Reduced row echelon form of a list of row vectors.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    m = [list(r) for r in rows]
    pivots = []
    lead = 0
    for c in range(ncols):
        piv = None
        for i in range(lead, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[lead], m[piv] = m[piv], m[lead]
        prow = m[lead]
        inv = field.one / prow[c]
        if prow[c] != field.one:
            prow[:] = [x * inv for x in prow]
        for i in range(len(m)):
            if i != lead and m[i][c]:
                f = m[i][c]
                row = m[i]
                for k in range(c, ncols):
                    if prow[k]:
                        row[k] = row[k] - f * prow[k]
        pivots.append(c)
        lead += 1
        if lead == len(m):
            break
    return m[:lead], pivots


def rank(field, a, ncols):
    return len(rref(field, a, ncols)[1])


def nullspace(field, a, ncols):
    """Basis of {x : a x = 0}, one vector per free column, sparse by construction."""
    r, pivots = rref(field, a, ncols)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(r, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def column_space(field, a, ncols):
    """Basis (echelon) of the span of the columns of ``a``."""
    nrows = len(a)
    r, _ = rref(field, columns(a, ncols), nrows)
    return r


def span_basis(field, vectors, n):
    """Echelon basis of the span of ``vectors`` (each of length n)."""
    return rref(field, vectors, n)[0]


class Basis:
    """A list of independent vectors with a coordinate map on their span."""

    def __init__(self, field, vectors, n):
        self.field = field
        self.n = n
        self.vectors = [list(v) for v in vectors]
        k = len(vectors)
        aug = [list(v) + [field.one if i == j else field.zero for j in range(k)]
               for i, v in enumerate(vectors)]
        red, pivots = rref(field, aug, n + k)
        if len(pivots) != k or (pivots and pivots[-1] >= n):
            raise ValueError("vectors are linearly dependent")
        self._rows = [row[:n] for row in red]
        self._trans = [row[n:] for row in red]
        self._pivots = pivots

    def __len__(self):
        return len(self.vectors)

    def coords(self, v, strict=True):
        """Coefficients c with v = sum c_l vectors[l]; None if v is outside the span."""
        field = self.field
        w = list(v)
        coeff = []
        for row, p in zip(self._rows, self._pivots):
            c = w[p]
            coeff.append(c)
            if c:
                for k in range(p, self.n):
                    if row[k]:
                        w[k] = w[k] - c * row[k]
        if any(w):
            if strict:
                raise ValueError("vector not in span")
            return None
        k = len(self.vectors)
        out = [field.zero] * k
        for c, t in zip(coeff, self._trans):
            if c:
                for j in range(k):
                    if t[j]:
                        out[j] = out[j] + c * t[j]
        return out

    def contains(self, v):
        return self.coords(v, strict=False) is not None


def extend_to_complement(field, base, candidates, n):
    """Pick, greedily and in order, candidates independent modulo span(base)."""
    ech, pivots = rref(field, base, n)
    chosen = []
    for c in candidates:
        w = list(c)
        for row, p in zip(ech, pivots):
            if w[p]:
                f = w[p]
                for k in range(p, n):
                    if row[k]:
                        w[k] = w[k] - f * row[k]
        if any(w):
            chosen.append(list(c))
            ech, pivots = rref(field, ech + [w], n)
    return chosen
