"""Multifiltered simplicial complexes: the .mfsc format, snapshots, boundaries."""
import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import algebra
from .algebra import Field, QQ, leq, meet, fmt_degree, minimal_elements, parse_degrees
from .linalg import zeros

log = logging.getLogger(__name__)


class ParseError(ValueError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__("line %d: %s" % (line, msg) if line is not None else msg)


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class Simplex:
    vertices: tuple          # sorted labels
    entries: tuple           # antichain of entry degrees

    @property
    def dim(self):
        return len(self.vertices) - 1

    def present_at(self, u):
        return any(leq(e, u) for e in self.entries)

    def facets(self):
        if len(self.vertices) <= 1:
            return []
        return [self.vertices[:j] + self.vertices[j + 1:] for j in range(len(self.vertices))]

    @property
    def name(self):
        return "".join(self.vertices) if all(len(v) == 1 for v in self.vertices) else "-".join(self.vertices)


def _simplex_key(vertices):
    return (len(vertices), vertices)


@dataclass
class MultifilteredComplex:
    r: int
    simplices: list = dc_field(default_factory=list)   # canonical order: by dim, then lex
    field: Field = QQ

    def __post_init__(self):
        self.simplices = sorted(self.simplices, key=lambda s: _simplex_key(s.vertices))
        self.index = {s.vertices: s for s in self.simplices}

    @property
    def dimension(self):
        return max((s.dim for s in self.simplices), default=-1)

    def of_dim(self, i):
        return [s for s in self.simplices if s.dim == i]

    @property
    def vertices(self):
        return [s.vertices[0] for s in self.of_dim(0)]

    def validate(self):
        for s in self.simplices:
            for e in s.entries:
                if len(e) != self.r:
                    raise ValidationError("simplex %s has entry degree %s, expected r=%d"
                                          % (s.name, fmt_degree(e), self.r))
            if not s.entries:
                raise ValidationError("simplex %s has no entry degree" % s.name)
            for f in s.facets():
                face = self.index.get(f)
                if face is None:
                    raise ValidationError("face %s of %s is missing" % ("".join(f), s.name))
                for e in s.entries:
                    if not face.present_at(e):
                        raise ValidationError(
                            "monotonicity: %s present at %s but its face %s is not"
                            % (s.name, fmt_degree(e), face.name))
        return self


def parse(text):
    """Parse .mfsc text into a validated MultifilteredComplex."""
    r = None
    fld = None
    simplices = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "r":
            if r is not None:
                raise ParseError("duplicate r line", lineno)
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
        elif head == "simplex":
            if r is None:
                raise ParseError("simplex before the r line", lineno)
            verts, sep, degs = rest.partition(";")
            if not sep:
                raise ParseError("missing ';' before entry degrees", lineno)
            labels = tuple(sorted(verts.split()))
            if not labels:
                raise ParseError("simplex without vertices", lineno)
            if len(set(labels)) != len(labels):
                raise ParseError("repeated vertex", lineno)
            entries = parse_degrees(degs)
            if not entries:
                raise ParseError("missing or malformed entry degrees %r" % degs.strip(), lineno)
            if algebra._DEG.sub("", degs).replace(",", "").strip():
                raise ParseError("malformed entry degrees %r" % degs.strip(), lineno)
            for e in entries:
                if len(e) != r:
                    raise ParseError("entry degree %s does not have r=%d coordinates" % (fmt_degree(e), r), lineno)
            if labels in simplices:
                raise ParseError("simplex %s listed twice" % " ".join(labels), lineno)
            anti = minimal_elements(entries)
            if len(anti) != len(set(entries)):
                log.warning("line %d: dominated entry degrees of %s dropped", lineno, " ".join(labels))
            simplices[labels] = Simplex(labels, tuple(anti))
        else:
            raise ParseError("unknown directive %r" % head, lineno)
    if r is None:
        raise ParseError("missing r line")
    K = MultifilteredComplex(r, list(simplices.values()), fld or QQ)
    return K.validate()


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dumps(K):
    lines = ["r %d" % K.r, "field %s" % K.field.token]
    for s in K.simplices:
        lines.append("simplex %s ; %s" % (" ".join(s.vertices), ", ".join(fmt_degree(e) for e in s.entries)))
    return "\n".join(lines) + "\n"


def complex_at(K, u):
    """Simplices present at degree u, in canonical order."""
    return [s for s in K.simplices if s.present_at(u)]


def stabilization_degree(K):
    out = algebra.zero(K.r)
    for s in K.simplices:
        for e in s.entries:
            out = algebra.join(out, e)
    return out


def is_one_critical(K):
    return all(len(s.entries) == 1 for s in K.simplices)


def chain_basis(K, u, i):
    """Vertex tuples of the i-simplices present at u (the basis of C_i(K_u))."""
    if i < 0:
        return []
    return [s.vertices for s in K.simplices if s.dim == i and s.present_at(u)]


def boundary_matrix(field, rows, cols):
    """Matrix of the simplicial boundary from span(cols) to span(rows)."""
    pos = {v: k for k, v in enumerate(rows)}
    out = zeros(field, len(rows), len(cols))
    for j, sigma in enumerate(cols):
        if len(sigma) <= 1:
            continue
        for k in range(len(sigma)):
            face = sigma[:k] + sigma[k + 1:]
            out[pos[face]][j] = field.one if k % 2 == 0 else -field.one
    return out


def boundary_at(K, u, i, field=None):
    """Matrix of d_i : C_i(K_u) -> C_{i-1}(K_u); zero target for i = 0."""
    field = field or K.field
    return boundary_matrix(field, chain_basis(K, u, i - 1), chain_basis(K, u, i))


def clamp(u, s):
    return meet(u, s)


def random_complex(rng, r, n_vertices=5, max_dim=2, max_entry=3, p_simplex=0.5, multicritical=False,
                   field=QQ):
    """Random valid multifiltration: entry degrees of a simplex dominate its faces'."""
    labels = ["v%d" % k for k in range(n_vertices)]
    entries = {}
    for v in labels:
        entries[(v,)] = [tuple(rng.randint(0, max_entry) for _ in range(r))]
    for d in range(1, max_dim + 1):
        for sigma in combinations(labels, d + 1):
            faces = [sigma[:k] + sigma[k + 1:] for k in range(len(sigma))]
            if any(f not in entries for f in faces) or rng.random() > p_simplex:
                continue
            n_entries = rng.randint(1, 2) if multicritical else 1
            sig_entries = []
            for _ in range(n_entries):
                # pick one entry of each face and take the join, then bump
                base = algebra.zero(r)
                for f in faces:
                    base = algebra.join(base, rng.choice(entries[f]))
                bump = tuple(rng.randint(0, 1) for _ in range(r))
                sig_entries.append(tuple(min(max_entry, b + k) for b, k in zip(base, bump)))
            entries[sigma] = minimal_elements(sig_entries)
    # multicritical entries of a face may make a coface's entry invalid; repair
    simplices = []
    for sigma, ents in entries.items():
        simplices.append(Simplex(sigma, tuple(ents)))
    K = MultifilteredComplex(r, simplices, field)
    _repair(K)
    return K.validate()


def _repair(K):
    """Lift coface entry degrees until every face is present (keeps the complex valid)."""
    changed = True
    while changed:
        changed = False
        for s in list(K.simplices):
            new = []
            for e in s.entries:
                cur = e
                for f in s.facets():
                    face = K.index[f]
                    if not face.present_at(cur):
                        best = min(face.entries, key=lambda d: sum(algebra.join(d, cur)))
                        cur = algebra.join(cur, best)
                new.append(cur)
            new = tuple(minimal_elements(new))
            if new != s.entries:
                t = Simplex(s.vertices, new)
                K.simplices[K.simplices.index(s)] = t
                K.index[s.vertices] = t
                changed = True
