"""Graded module presentations: the .gpres format, canonical forms, splitting.

A presentation lists generator degrees ``g_i``, relation degrees ``r_j`` and a
scalar matrix ``coeffs[i][j]``; the relation ``j`` is
``sum_i coeffs[i][j] * x^(r_j - g_i) * e_i``, so ``coeffs[i][j]`` must vanish
unless ``g_i <= r_j``.
"""
from itertools import permutations, product

from . import algebra
from .algebra import Field, QQ, leq, fmt_degree, fmt_monomial, parse_degree, parse_degrees, sub
from .filtration import ParseError
from .linalg import zeros


class Presentation:

    def __init__(self, r, field, gen_degrees, rel_degrees, coeffs=None):
        self.r = r
        self.field = field
        self.gen_degrees = [tuple(g) for g in gen_degrees]
        self.rel_degrees = [tuple(d) for d in rel_degrees]
        if coeffs is None:
            coeffs = zeros(field, len(self.gen_degrees), len(self.rel_degrees))
        self.coeffs = [list(row) for row in coeffs]
        self.generators = None
        self.validate()

    def validate(self):
        for d in self.gen_degrees + self.rel_degrees:
            if len(d) != self.r:
                raise algebra.DimensionMismatch("degree %s in a presentation with r=%d" % (fmt_degree(d), self.r))
        if len(self.coeffs) != len(self.gen_degrees):
            raise ValueError("coefficient matrix has %d rows for %d generators"
                             % (len(self.coeffs), len(self.gen_degrees)))
        for i, row in enumerate(self.coeffs):
            if len(row) != len(self.rel_degrees):
                raise ValueError("coefficient row %d has wrong length" % (i + 1))
            for j, c in enumerate(row):
                if c and not leq(self.gen_degrees[i], self.rel_degrees[j]):
                    raise ValueError("relation %d at %s involves generator %d at %s, which is not below it"
                                     % (j + 1, fmt_degree(self.rel_degrees[j]), i + 1,
                                        fmt_degree(self.gen_degrees[i])))
        return self

    @property
    def n_gens(self):
        return len(self.gen_degrees)

    @property
    def n_rels(self):
        return len(self.rel_degrees)

    def bounding_degree(self):
        return algebra.join_all(self.gen_degrees + self.rel_degrees, self.r)

    def is_minimal(self):
        return not any(self.coeffs[i][j] for i in range(self.n_gens) for j in range(self.n_rels)
                       if self.gen_degrees[i] == self.rel_degrees[j])

    def column(self, j):
        return [row[j] for row in self.coeffs]

    def entry(self, i, j):
        """(scalar, monomial exponent) of entry (i, j), or None when zero."""
        c = self.coeffs[i][j]
        if not c:
            return None
        return c, sub(self.rel_degrees[j], self.gen_degrees[i])

    def with_field(self, field):
        """Same presentation read over another field (entries must be integers or p/q)."""
        coeffs = [[field(_as_fraction(self.field, c)) for c in row] for row in self.coeffs]
        return Presentation(self.r, field, self.gen_degrees, self.rel_degrees, coeffs)

    def __repr__(self):
        return "Presentation(gens=%s, rels=%s)" % (
            [fmt_degree(g) for g in self.gen_degrees], [fmt_degree(d) for d in self.rel_degrees])

    def to_json(self):
        return {
            "gens": [list(g) for g in self.gen_degrees],
            "rels": [list(d) for d in self.rel_degrees],
            "matrix": [[self.field.to_json(c) for c in row] for row in self.coeffs],
        }

    def matrix_strings(self):
        return [[_entry_str(self.field, self.entry(i, j)) for j in range(self.n_rels)] for i in range(self.n_gens)]


def _as_fraction(field, c):
    from fractions import Fraction
    if field.char == 0:
        return Fraction(c)
    return c.v


def _entry_str(field, e):
    if e is None:
        return "0"
    c, mono = e
    m = fmt_monomial(mono)
    if c == field.one:
        return m
    if c == -field.one:
        return "-" + m
    cs = field.format(c)
    return cs if m == "1" else "%s*%s" % (cs, m)


def direct_sum(*ps):
    if not ps:
        raise ValueError("empty direct sum")
    r, field = ps[0].r, ps[0].field
    gens, rels = [], []
    for p in ps:
        gens += p.gen_degrees
        rels += p.rel_degrees
    coeffs = zeros(field, len(gens), len(rels))
    gi = rj = 0
    for p in ps:
        for i in range(p.n_gens):
            for j in range(p.n_rels):
                coeffs[gi + i][rj + j] = p.coeffs[i][j]
        gi += p.n_gens
        rj += p.n_rels
    return Presentation(r, field, gens, rels, coeffs)


# ---------------------------------------------------------------- .gpres

def parse(text, field=None):
    r = None
    fld = None
    gens = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "r":
            try:
                r = int(rest)
            except ValueError:
                raise ParseError("bad parameter count %r" % rest, lineno)
            if r < 1:
                raise ParseError("r must be at least 1", lineno)
        elif head == "field":
            try:
                fld = Field.parse(rest)
            except ValueError as exc:
                raise ParseError(str(exc), lineno)
        elif head == "gens":
            if r is None:
                raise ParseError("gens before the r line", lineno)
            gens = parse_degrees(rest)
            if algebra._DEG.sub("", rest).strip():
                raise ParseError("malformed generator degrees", lineno)
            for g in gens:
                if len(g) != r:
                    raise ParseError("generator degree %s does not have r=%d coordinates" % (fmt_degree(g), r), lineno)
        elif head == "rel":
            if gens is None:
                raise ParseError("rel before gens", lineno)
            deg, sep, entries = rest.partition(":")
            if not sep:
                raise ParseError("missing ':' in relation", lineno)
            try:
                d = parse_degree(deg)
            except ValueError:
                raise ParseError("bad relation degree %r" % deg.strip(), lineno)
            if len(d) != r:
                raise ParseError("relation degree %s does not have r=%d coordinates" % (fmt_degree(d), r), lineno)
            col = {}
            for item in entries.split(","):
                item = item.strip()
                if not item:
                    continue
                idx, eq, val = item.partition("=")
                if not eq:
                    raise ParseError("relation entry %r is not index=scalar" % item, lineno)
                try:
                    k = int(idx) - 1
                except ValueError:
                    raise ParseError("bad generator index %r" % idx, lineno)
                if not 0 <= k < len(gens):
                    raise ParseError("generator index %d out of range" % (k + 1), lineno)
                col[k] = val.strip()
            rels.append((d, col, lineno))
        else:
            raise ParseError("unknown directive %r" % head, lineno)
    if r is None:
        raise ParseError("missing r line")
    if gens is None:
        gens = []
    fld = field or fld or QQ
    coeffs = zeros(fld, len(gens), len(rels))
    for j, (d, col, lineno) in enumerate(rels):
        for k, val in col.items():
            try:
                c = fld(val)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError("bad scalar %r (%s)" % (val, exc), lineno)
            if c and not leq(gens[k], d):
                raise ParseError("generator %d at %s is not below relation degree %s"
                                 % (k + 1, fmt_degree(gens[k]), fmt_degree(d)), lineno)
            coeffs[k][j] = c
    return Presentation(r, fld, gens, [d for d, _, _ in rels], coeffs)


def load(path, field=None):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), field)


def dumps(P):
    lines = ["r %d" % P.r, "field %s" % P.field.token,
             ("gens " + " ".join(fmt_degree(g) for g in P.gen_degrees)).rstrip()]
    for j, d in enumerate(P.rel_degrees):
        items = ["%d=%s" % (i + 1, P.field.format(P.coeffs[i][j])) for i in range(P.n_gens) if P.coeffs[i][j]]
        lines.append("rel %s : %s" % (fmt_degree(d), ", ".join(items)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- canonical form

def _groups(degrees):
    order = sorted(range(len(degrees)), key=lambda k: degrees[k])
    groups = []
    for k in order:
        if groups and degrees[groups[-1][0]] == degrees[k]:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


def _scale_normal(field, mat, nrows, ncols):
    """Scale rows/columns so every edge of a BFS spanning forest becomes 1."""
    rs = [None] * nrows
    cs = [None] * ncols
    for start in range(nrows):
        if rs[start] is not None:
            continue
        rs[start] = field.one
        queue = [("r", start)]
        while queue:
            kind, k = queue.pop(0)
            if kind == "r":
                for j in range(ncols):
                    if mat[k][j] and cs[j] is None:
                        cs[j] = field.one / (rs[k] * mat[k][j])
                        queue.append(("c", j))
            else:
                for i in range(nrows):
                    if mat[i][k] and rs[i] is None:
                        rs[i] = field.one / (cs[k] * mat[i][k])
                        queue.append(("r", i))
    cs = [c if c is not None else field.one for c in cs]
    return [[rs[i] * mat[i][j] * cs[j] for j in range(ncols)] for i in range(nrows)]


def canonical_form(P, limit=50000):
    """Normal form up to permuting equal-degree generators/relations and unit scaling.

    Returns ``(gen_degrees, rel_degrees, matrix_of_strings)`` with degrees
    sorted; among all admissible permutations the lexicographically least
    scaled matrix is chosen.
    """
    field = P.field
    gg = _groups(P.gen_degrees)
    rg = _groups(P.rel_degrees)
    gen_perms = [list(permutations(g)) for g in gg]
    rel_perms = [list(permutations(g)) for g in rg]
    count = 1
    for ps in gen_perms + rel_perms:
        count *= len(ps)
    if count > limit:
        gen_perms = [[tuple(g)] for g in gg]
        rel_perms = [[tuple(g)] for g in rg]
    best = None
    for rchoice in product(*gen_perms):
        rows = [k for grp in rchoice for k in grp]
        for cchoice in product(*rel_perms):
            cols = [k for grp in cchoice for k in grp]
            sub_m = [[P.coeffs[i][j] for j in cols] for i in rows]
            scaled = _scale_normal(field, sub_m, len(rows), len(cols))
            key = tuple(tuple(_sort_key(field, x) for x in row) for row in scaled)
            if best is None or key < best[0]:
                best = (key, rows, cols, scaled)
    if best is None:
        return ([], [], [])
    _, rows, cols, scaled = best
    gens = [P.gen_degrees[i] for i in rows]
    rels = [P.rel_degrees[j] for j in cols]
    strings = [[_entry_str(field, (scaled[a][b], sub(rels[b], gens[a])) if scaled[a][b] else None)
                for b in range(len(cols))] for a in range(len(rows))]
    return (gens, rels, strings)


def _sort_key(field, x):
    if not x:
        return (0, 0)
    if field.char == 0:
        return (1, x)
    return (1, x.v)


def same_canonical_form(P, Q):
    return canonical_form(P) == canonical_form(Q)


# ---------------------------------------------------------------- splitting

class Summand:
    """One block of a splitting: a cyclic module or a non-cyclic remainder."""

    def __init__(self, gen_degrees, rel_degrees, gen_indices, ideal=None):
        self.gen_degrees = gen_degrees
        self.rel_degrees = rel_degrees
        self.gen_indices = gen_indices
        self.ideal = ideal      # annihilator of the generator, when cyclic

    @property
    def cyclic(self):
        return self.ideal is not None

    @property
    def free(self):
        return self.cyclic and self.ideal.is_zero()

    @property
    def death_degrees(self):
        if not self.cyclic:
            return None
        g = self.gen_degrees[0]
        return [algebra.add(g, m) for m in self.ideal.gens]

    def describe(self):
        if not self.cyclic:
            return "[block: gens %s, rels %s]" % (" ".join(fmt_degree(g) for g in self.gen_degrees),
                                                 " ".join(fmt_degree(d) for d in self.rel_degrees))
        g = self.gen_degrees[0]
        base = "S" if not any(g) else "S(%s)" % ",".join(str(-k) for k in g)
        if self.ideal.is_zero():
            return base
        gens = self.ideal.display_order()
        if len(gens) == 1:
            return "%s/%s" % (base, fmt_monomial(gens[0]))
        return "%s/<%s>" % (base, ",".join(fmt_monomial(m) for m in gens))

    def to_json(self):
        out = {"cyclic": self.cyclic, "description": self.describe(),
               "gens": [list(g) for g in self.gen_degrees],
               "rels": [list(d) for d in self.rel_degrees]}
        if self.cyclic:
            out["free"] = self.free
            out["deaths"] = [list(d) for d in self.death_degrees]
        return out


def split(P, M=None):
    """Split a presentation into cyclic summands by graded row/column operations.

    Column j may be added to column l when r_j <= r_l; a multiple of row i may
    be subtracted from row k when g_k <= g_i (this replaces generator i by
    g_i + c x^(g_i-g_k) g_k).  When ``M`` (the module frame) and
    ``P.generators`` are given, the generator elements are updated alongside so
    they stay adapted to the splitting.  Returns ``(summands, P')`` where P' is
    the transformed presentation; blocks that do not become cyclic are
    reported as such.
    """
    field = P.field
    A = [list(row) for row in P.coeffs]
    g, rd = P.gen_degrees, P.rel_degrees
    n, m = len(g), len(rd)
    elems = [list(v) for v in P.generators] if (P.generators is not None and M is not None) else None

    def row_op(k, i, c):
        # row_k -= c * row_i  (requires g_k <= g_i)
        for j in range(m):
            if A[i][j]:
                A[k][j] = A[k][j] - c * A[i][j]
        if elems is not None:
            shifted = M.apply(g[k], g[i], elems[k])
            elems[i] = [a + c * b for a, b in zip(elems[i], shifted)]

    def col_op(l, j, c):
        for i in range(n):
            if A[i][j]:
                A[i][l] = A[i][l] - c * A[i][j]

    order = sorted(range(m), key=lambda j: (sum(rd[j]), rd[j]))
    for _ in range(2 * m + 1):
        changed = False
        for j in order:
            nz = [i for i in range(n) if A[i][j]]
            if len(nz) == 0:
                continue
            piv = None
            for i in sorted(nz, key=lambda i: (-sum(g[i]), g[i])):
                if all(leq(g[k], g[i]) for k in nz):
                    piv = i
                    break
            if piv is None:
                continue
            for k in nz:
                if k != piv:
                    row_op(k, piv, A[k][j] / A[piv][j])
                    changed = True
            for l in range(m):
                if l != j and A[piv][l] and leq(rd[j], rd[l]):
                    # only clear if column j is now a single entry
                    if sum(1 for i in range(n) if A[i][j]) == 1:
                        col_op(l, j, A[piv][l] / A[piv][j])
                        changed = True
        if not changed:
            break
    Q = Presentation(P.r, field, g, rd, A)
    if elems is not None:
        Q.generators = elems
    # connected components of the bipartite support graph
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    col_owner = {}
    for j in range(m):
        rows = [i for i in range(n) if A[i][j]]
        for i in rows[1:]:
            parent[find(i)] = find(rows[0])
        if rows:
            col_owner[j] = rows[0]
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    summands = []
    for root, members in comps.items():
        cols = [j for j in range(m) if j in col_owner and find(col_owner[j]) == root]
        gens_d = [g[i] for i in members]
        rels_d = [rd[j] for j in cols]
        if len(members) == 1:
            i = members[0]
            ideal = algebra.MonomialIdeal([sub(rd[j], g[i]) for j in cols], P.r)
            summands.append(Summand(gens_d, rels_d, members, ideal))
        else:
            summands.append(Summand(gens_d, rels_d, members))
    summands.sort(key=lambda s: (not s.free, tuple(-k for k in s.gen_degrees[0]) if s.free else s.gen_degrees[0],
                                 s.gen_indices))
    return summands, Q


def describe_splitting(summands):
    return " ⊕ ".join(s.describe() for s in summands) if summands else "0"


def random_presentation(rng, r, max_deg=4, max_gens=4, max_rels=4, field=QQ, density=0.6):
    """Random presentation with every degree in the box [0, max_deg]^r."""
    def deg():
        return tuple(rng.randint(0, max_deg) for _ in range(r))

    gens = [deg() for _ in range(rng.randint(1, max_gens))]
    rels = []
    cols = []
    scalars = [1, -1, 2] if field.char != 2 else [1]
    for _ in range(rng.randint(0, max_rels)):
        d = deg()
        below = [i for i, g in enumerate(gens) if leq(g, d)]
        if not below:
            continue
        col = [field.zero] * len(gens)
        for i in below:
            if rng.random() < density:
                col[i] = field(rng.choice(scalars))
        if not any(col):
            col[rng.choice(below)] = field.one
        rels.append(d)
        cols.append(col)
    coeffs = [[cols[j][i] for j in range(len(rels))] for i in range(len(gens))]
    return Presentation(r, field, gens, rels, coeffs)
