"""
Finite-dimensional associative unital algebras in structure-constant form.

Products of basis elements are stored sparsely: ``alg.mult[i][j]`` is a
dict ``k -> c`` with ``b_i b_j = sum_k c b_k``.  Algebras built from
quivers (and the Beilinson pair) additionally carry *vertex data*: one
idempotent basis index per vertex and, for every basis element ``b``,
the pair ``(s, t)`` with ``e_s b e_t = b``.  Paths compose left to
right, so an arrow ``a: s -> t`` satisfies ``a = e_s a e_t`` and right
modules ``e_i A`` are spanned by the paths starting at ``i``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field

from .exactlin import QQ, Matrix, Subspace, kernel_basis, field_from_descriptor


class AlgebraError(ValueError):
    pass


class AssociativityViolation(AlgebraError):
    def __init__(self, triple):
        self.witness = triple
        super().__init__(f"(b{triple[0]} b{triple[1]}) b{triple[2]} != b{triple[0]} (b{triple[1]} b{triple[2]})")


class UnitViolation(AlgebraError):
    def __init__(self, index):
        self.witness = index
        super().__init__(f"unit law fails on basis element {index}")


class InfiniteDimensional(AlgebraError):
    pass


def _axpy(acc, c, vec):
    for k, v in vec.items():
        w = acc.get(k, 0) + c * v
        if w != 0:
            acc[k] = w
        else:
            acc.pop(k, None)
    return acc


class FinDimAlgebra:
    def __init__(self, field, labels, unit, mult, vertices=None, check=True):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.unit = {k: field(v) for k, v in unit.items() if v != 0}
        self.mult = [[{k: field(v) for k, v in mult[i][j].items() if v != 0}
                      for j in range(self.dim)] for i in range(self.dim)]
        # vertices: (idempotent indices, endpoints per basis element)
        self.idempotents = None
        self.endpoints = None
        if vertices is not None:
            self.idempotents = list(vertices[0])
            self.endpoints = [tuple(e) for e in vertices[1]]
        if check:
            self.validate()

    # -- structure ---------------------------------------------------------
    @property
    def has_vertices(self):
        return self.idempotents is not None

    @property
    def n_vertices(self):
        return len(self.idempotents) if self.idempotents is not None else None

    @property
    def radical(self):
        if not self.has_vertices:
            raise AlgebraError("algebra carries no vertex data")
        idem = set(self.idempotents)
        return [i for i in range(self.dim) if i not in idem]

    def product(self, i, j):
        return self.mult[i][j]

    def mul(self, x, y):
        """Product of two sparse vectors."""
        acc = {}
        for i, a in x.items():
            row = self.mult[i]
            for j, b in y.items():
                p = row[j]
                if p:
                    _axpy(acc, a * b, p)
        return acc

    def unit_vector(self):
        return dict(self.unit)

    def table_dense(self):
        z = self.field.zero
        return [[[self.mult[i][j].get(k, z) for k in range(self.dim)]
                 for j in range(self.dim)] for i in range(self.dim)]

    def element(self, coords):
        return AlgebraElement(self, coords)

    def validate(self):
        u = self.unit
        for i in range(self.dim):
            e = {i: self.field.one}
            if self.mul(u, e) != e or self.mul(e, u) != e:
                raise UnitViolation(i)
        witness = associativity_witness(self)
        if witness is not None:
            raise AssociativityViolation(witness)

    def is_commutative(self):
        return all(self.mult[i][j] == self.mult[j][i]
                   for i in range(self.dim) for j in range(i))

    def __repr__(self):
        return f"FinDimAlgebra(dim={self.dim}, {self.field})"

    def __eq__(self, other):
        return (isinstance(other, FinDimAlgebra) and self.field == other.field
                and self.mult == other.mult and self.unit == other.unit)

    __hash__ = object.__hash__


def associativity_witness(alg):
    """First basis triple violating associativity, or None."""
    n = alg.dim
    for i in range(n):
        for j in range(n):
            ij = alg.mult[i][j]
            for k in range(n):
                left = {}
                for m, c in ij.items():
                    _axpy(left, c, alg.mult[m][k])
                right = {}
                for m, c in alg.mult[j][k].items():
                    _axpy(right, c, alg.mult[i][m])
                if left != right:
                    return (i, j, k)
    return None


class AlgebraElement:
    def __init__(self, algebra, coords):
        coords = list(coords)
        if len(coords) != algebra.dim:
            raise ValueError("coordinate length does not match algebra dimension")
        self.algebra = algebra
        self.coords = [algebra.field(c) for c in coords]

    def _sparse(self):
        return {i: c for i, c in enumerate(self.coords) if c != 0}

    def _wrap(self, sparse):
        z = self.algebra.field.zero
        return AlgebraElement(self.algebra, [sparse.get(i, z) for i in range(self.algebra.dim)])

    def __add__(self, other):
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self._wrap(self.algebra.mul(self._sparse(), other._sparse()))
        return AlgebraElement(self.algebra, [a * other for a in self.coords])

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.coords == other.coords

    def __repr__(self):
        terms = [f"{c}*{self.algebra.labels[i]}" for i, c in enumerate(self.coords) if c != 0]
        return " + ".join(terms) or "0"


# -- constructors -------------------------------------------------------------

def from_structure_constants(field, labels, unit, table):
    """Validated algebra from dense data: ``table[i][j]`` is the coordinate list of ``b_i b_j``."""
    n = len(labels)
    if len(unit) != n or len(table) != n or any(len(r) != n for r in table):
        raise AlgebraError("structure constant table has inconsistent dimensions")
    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            vec = table[i][j]
            if len(vec) != n:
                raise AlgebraError(f"product b{i} b{j} has wrong length")
            row.append({k: c for k, c in enumerate(vec) if c != 0})
        mult.append(row)
    return FinDimAlgebra(field, labels, {k: c for k, c in enumerate(unit) if c != 0}, mult)


def dual_numbers(field=QQ):
    """k[x]/(x^2) with basis (1, x)."""
    return from_structure_constants(field, ["1", "x"], [1, 0],
                                    [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])


def ground_field(field=QQ):
    return from_structure_constants(field, ["1"], [1], [[[1]]])


@dataclass
class QuiverPresentation:
    vertices: int
    arrows: list  # (name, source, target)
    relations: list = dc_field(default_factory=list)  # each: list of (coeff, [arrow names])
    field: object = QQ

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        self._index = {a[0]: i for i, a in enumerate(self.arrows)}
        for name, s, t in self.arrows:
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise AlgebraError(f"arrow {name} has an endpoint outside the vertex range")
        self._relations = []
        for rel in self.relations:
            terms = []
            ends = set()
            for coeff, path in rel:
                idx = tuple(self._index[a] for a in path)
                if not idx:
                    raise AlgebraError("relations must consist of paths of positive length")
                for a, b in zip(idx, idx[1:]):
                    if self.arrows[a][2] != self.arrows[b][1]:
                        raise AlgebraError(f"path {path} is not composable")
                ends.add((self.arrows[idx[0]][1], self.arrows[idx[-1]][2]))
                terms.append((self.field(coeff), idx))
            if len(ends) > 1:
                raise AlgebraError("relation terms do not share source and target")
            self._relations.append(terms)

    def source(self, path):
        return self.arrows[path[0]][1]

    def target(self, path):
        return self.arrows[path[-1]][2]


def kronecker_quiver(field=QQ):
    return QuiverPresentation(2, [("a", 0, 1), ("b", 0, 1)], [], field)


def loop_quiver(field=QQ, nilpotency=2):
    return QuiverPresentation(1, [("x", 0, 0)], [[(1, ["x"] * nilpotency)]], field)


def path_algebra(q, cap=64, max_paths=20000):
    """The quotient of the path algebra of ``q`` by the ideal of its relations.

    Path lengths are saturated until every path of the current length
    lies in the ideal; ``InfiniteDimensional`` is raised past ``cap``.
    """
    F = q.field
    out_arrows = {v: [i for i, a in enumerate(q.arrows) if a[1] == v] for v in range(q.vertices)}
    by_len = {1: [(i,) for i in range(len(q.arrows))]}
    rels = q._relations
    min_rel = {id(r): min(len(p) for _, p in r) for r in rels}
    max_rel = {id(r): max(len(p) for _, p in r) for r in rels}

    def paths_upto(N):
        out = []
        for L in range(1, N + 1):
            out.extend(by_len[L])
        return out

    N = 1
    while True:
        if N > cap:
            raise InfiniteDimensional(f"path lengths did not stabilize below {cap}")
        if sum(len(v) for v in by_len.values()) > max_paths:
            raise InfiniteDimensional("too many paths before stabilization")
        allp = paths_upto(N)
        index = {p: i for i, p in enumerate(allp)}
        gens = _ideal_generators(q, rels, by_len, N, truncate=False, max_rel=max_rel, min_rel=min_rel)
        J = Subspace(F, len(allp), [{index[p]: c for p, c in g.items()} for g in gens])
        if all(J.contains({index[p]: F.one}) for p in by_len[N]):
            break
        N += 1
        nxt = []
        for p in by_len[N - 1]:
            for a in out_arrows[q.target(p)]:
                nxt.append(p + (a,))
        by_len[N] = nxt
    # paths of length >= N all lie in the ideal; quotient by truncated generators
    allp = paths_upto(N)
    # columns ordered longest first so pivots land on long paths
    order = sorted(allp, key=lambda p: (-len(p), p))
    col = {p: i for i, p in enumerate(order)}
    gens = _ideal_generators(q, rels, by_len, N, truncate=True, max_rel=max_rel, min_rel=min_rel)
    J = Subspace(F, len(order), [{col[p]: c for p, c in g.items()} for g in gens])
    pivset = set(J.pivots)
    normal = sorted((p for p in allp if col[p] not in pivset), key=lambda p: (len(p), p))

    labels = [f"e{v}" for v in range(q.vertices)] + ["*".join(q.arrows[a][0] for a in p) for p in normal]
    nb = len(labels)
    basis_index = {p: q.vertices + i for i, p in enumerate(normal)}
    endpoints = [(v, v) for v in range(q.vertices)] + [(q.source(p), q.target(p)) for p in normal]

    def reduce_path(p):
        if len(p) > N or p not in col:
            return {}
        red = J.reduce_sparse({col[p]: F.one})
        return {basis_index[order[c]]: v for c, v in red.items()}

    one = F.one
    mult = [[{} for _ in range(nb)] for _ in range(nb)]
    for i in range(nb):
        si, ti = endpoints[i]
        for j in range(nb):
            sj, tj = endpoints[j]
            if ti != sj:
                continue
            if i < q.vertices:
                mult[i][j] = {j: one}
            elif j < q.vertices:
                mult[i][j] = {i: one}
            else:
                mult[i][j] = reduce_path(normal[i - q.vertices] + normal[j - q.vertices])
    unit = {v: one for v in range(q.vertices)}
    return FinDimAlgebra(F, labels, unit, mult,
                         vertices=(list(range(q.vertices)), endpoints))


def _ideal_generators(q, rels, by_len, N, truncate, max_rel, min_rel):
    """Elements u r v of the ideal (as dict path -> coeff) relevant below length N."""
    gens = []

    def paths_into(v, length):
        if length == 0:
            return [None]
        return [p for p in by_len.get(length, []) if q.target(p) == v]

    def paths_from(v, length):
        if length == 0:
            return [None]
        return [p for p in by_len.get(length, []) if q.source(p) == v]

    for r in rels:
        s = q.source(r[0][1])
        t = q.target(r[0][1])
        lo = min_rel[id(r)]
        hi = max_rel[id(r)]
        for lu in range(0, N + 1):
            for lv in range(0, N + 1 - lu):
                if lu + lv + lo > N:
                    continue
                if not truncate and lu + lv + hi > N:
                    continue
                for u in paths_into(s, lu):
                    for v in paths_from(t, lv):
                        g = {}
                        for c, p in r:
                            full = (u or ()) + p + (v or ())
                            if len(full) > N:
                                continue
                            g[full] = g.get(full, 0) + c
                        g = {p: c for p, c in g.items() if c != 0}
                        if g:
                            gens.append(g)
    return gens


def _sort_sign(seq):
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def beilinson_pair(n, field=QQ):
    """The upper triangular symmetric-power algebra and the lower triangular exterior-power algebra.

    With ``dim V = n + 1``: the first algebra has ``e_i A e_j = S^{j-i}(V*)``
    for ``i <= j`` (sorted monomials in the dual basis), the second has
    ``e_i B e_j = Lambda^{i-j}(V)`` for ``i >= j`` (increasing wedges).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = n + 1

    def build(upper):
        elems = []
        for v in range(m):
            elems.append((v, v, ()))
        for gap in range(1, m):
            for lo in range(m - gap):
                if upper:
                    i, j = lo, lo + gap
                    monos = list(itertools.combinations_with_replacement(range(m), gap))
                else:
                    i, j = lo + gap, lo
                    monos = list(itertools.combinations(range(m), gap))
                for mono in monos:
                    elems.append((i, j, mono))
        index = {e: k for k, e in enumerate(elems)}
        one = field.one
        nb = len(elems)
        mult = [[{} for _ in range(nb)] for _ in range(nb)]
        for a, (i, j, x) in enumerate(elems):
            for b, (j2, k, y) in enumerate(elems):
                if j != j2:
                    continue
                if upper:
                    mult[a][b] = {index[(i, k, tuple(sorted(x + y)))]: one}
                else:
                    if set(x) & set(y):
                        continue
                    sgn = _sort_sign(x + y)
                    mult[a][b] = {index[(i, k, tuple(sorted(x + y)))]: field(sgn)}
        if upper:
            labels = [f"e{i}" if not x else f"S[{i},{j}](" + "".join(f"y{t}" for t in x) + ")"
                      for i, j, x in elems]
        else:
            labels = [f"e{i}" if not x else f"L[{i},{j}](" + "^".join(f"v{t}" for t in x) + ")"
                      for i, j, x in elems]
        unit = {v: one for v in range(m)}
        endpoints = [(i, j) for i, j, _ in elems]
        return FinDimAlgebra(field, labels, unit, mult, vertices=(list(range(m)), endpoints))

    return build(True), build(False)


def opposite(a):
    mult = [[dict(a.mult[j][i]) for j in range(a.dim)] for i in range(a.dim)]
    vertices = None
    if a.has_vertices:
        vertices = (a.idempotents, [(t, s) for s, t in a.endpoints])
    return FinDimAlgebra(a.field, a.labels, a.unit, mult,
                         vertices=vertices, check=False)


def tensor(a, b):
    """``a (x) b`` with basis pairs ``(i, j) -> i * dim b + j``."""
    if a.field != b.field:
        raise AlgebraError("tensor factors live over different fields")
    db = b.dim
    labels = [f"{x}|{y}" for x in a.labels for y in b.labels]
    unit = {}
    for i, u in a.unit.items():
        for j, v in b.unit.items():
            unit[i * db + j] = u * v
    n = a.dim * db
    mult = [[None] * n for _ in range(n)]
    for i1 in range(a.dim):
        for j1 in range(db):
            r = i1 * db + j1
            for i2 in range(a.dim):
                pa = a.mult[i1][i2]
                for j2 in range(db):
                    pb = b.mult[j1][j2]
                    prod = {}
                    if pa and pb:
                        for k, x in pa.items():
                            for l, y in pb.items():
                                prod[k * db + l] = x * y
                    mult[r][i2 * db + j2] = prod
    vertices = None
    if a.has_vertices and b.has_vertices:
        nvb = b.n_vertices
        idem = [i * db + j for i in a.idempotents for j in b.idempotents]
        ends = []
        for i in range(a.dim):
            for j in range(db):
                (s1, t1), (s2, t2) = a.endpoints[i], b.endpoints[j]
                ends.append((s1 * nvb + s2, t1 * nvb + t2))
        vertices = (idem, ends)
    return FinDimAlgebra(a.field, labels, unit, mult, vertices=vertices, check=False)


def enveloping(a):
    return tensor(opposite(a), a)


def center(a):
    """Subspace of coordinate vectors z with z b_i = b_i z for every basis element."""
    rows = {}
    n = a.dim
    for i in range(n):
        for k in range(n):
            for l, c in a.mult[k][i].items():
                rows.setdefault(i * n + l, {})
                rows[i * n + l][k] = rows[i * n + l].get(k, 0) + c
            for l, c in a.mult[i][k].items():
                rows.setdefault(i * n + l, {})
                rows[i * n + l][k] = rows[i * n + l].get(k, 0) - c
    return kernel_basis(Matrix(a.field, n * n, n, rows))


# -- JSON ---------------------------------------------------------------------

def algebra_from_json(data, field=None):
    """Build an algebra from the structure-constant or the quiver schema."""
    F = field or field_from_descriptor(data.get("field", "Q"))
    if "vertices" in data:
        arrows = [(a["name"], int(a["src"]), int(a["tgt"])) for a in data.get("arrows", [])]
        rels = [[(t.get("coeff", 1), list(t["path"])) for t in rel] for rel in data.get("relations", [])]
        return path_algebra(QuiverPresentation(int(data["vertices"]), arrows, rels, F))
    table = [[[F(c) for c in vec] for vec in row] for row in data["table"]]
    return from_structure_constants(F, data["basis"], [F(c) for c in data["unit"]], table)


def algebra_to_json(a):
    F = a.field
    return {
        "field": F.descriptor(),
        "basis": list(a.labels),
        "unit": [F.to_json(a.unit.get(i, 0)) for i in range(a.dim)],
        "table": [[[F.to_json(a.mult[i][j].get(k, 0)) for k in range(a.dim)]
                   for j in range(a.dim)] for i in range(a.dim)],
    }


def load_algebra(path, field=None):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return algebra_from_json(json.loads(text), field)
