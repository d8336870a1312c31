"""
Right modules over finite-dimensional algebras with vertex data:
simples, indecomposable projectives, minimal projective resolutions and
Ext, plus the Ext-table computation of ``Hom(T, T[i])`` for ``T`` a sum of
shifted simples.

Conventions: a module element is a row vector and ``m . b_i = m @ act[i]``.
For a quiver algebra the projective ``e_v A`` is spanned by the basis
elements whose first endpoint is v.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import AlgebraError, beilinson_pair
from .exactlin import Matrix, QQ, Subspace, kernel_basis, solve_sparse
from .hochschild import REDUCED, hh_dims


class NoQuiverProvenance(AlgebraError):
    pass


class ModuleError(ValueError):
    pass


def _vecmat(v, m):
    """Row vector (sparse) times Matrix."""
    out = {}
    for i, c in v.items():
        for j, x in m.rows.get(i, {}).items():
            w = out.get(j, 0) + c * x
            if w != 0:
                out[j] = w
            else:
                out.pop(j, None)
    return out


def _require_vertices(a):
    if not a.has_vertices:
        raise NoQuiverProvenance("this operation needs an algebra built from a quiver")


class FDModule:
    """A finite-dimensional right module given by one action matrix per basis element."""

    def __init__(self, algebra, dim, action, check=True, name=None):
        self.algebra = algebra
        self.dim = dim
        self.action = list(action)
        self.name = name
        if check:
            self.validate()

    def validate(self):
        A = self.algebra
        F = A.field
        if len(self.action) != A.dim:
            raise ModuleError("one action matrix per basis element is required")
        ident = Matrix.identity(F, self.dim)
        unit = Matrix.zeros(F, self.dim, self.dim)
        for k, c in A.unit.items():
            unit = unit + self.action[k].scale(c)
        if unit != ident:
            raise ModuleError("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = Matrix.zeros(F, self.dim, self.dim)
                for k, c in A.mult[i][j].items():
                    rhs = rhs + self.action[k].scale(c)
                if lhs != rhs:
                    raise ModuleError(f"action is not associative on ({i}, {j})")

    def act(self, v, b):
        return _vecmat(v, self.action[b])

    def act_element(self, v, x):
        out = {}
        for b, c in x.items():
            for j, y in self.act(v, b).items():
                out[j] = out.get(j, 0) + c * y
        return {j: y for j, y in out.items() if y != 0}

    def vertex_part(self, v):
        """Basis of ``M e_v``."""
        A = self.algebra
        e = A.idempotents[v]
        imgs = [self.act({i: A.field.one}, e) for i in range(self.dim)]
        return Subspace(A.field, self.dim, imgs)

    def dim_vector(self):
        _require_vertices(self.algebra)
        return [self.vertex_part(v).dim for v in range(self.algebra.n_vertices)]

    def radical_image(self):
        """``M . rad A``."""
        A = self.algebra
        vecs = []
        for i in range(self.dim):
            for r in A.radical:
                v = self.act({i: A.field.one}, r)
                if v:
                    vecs.append(v)
        return Subspace(A.field, self.dim, vecs)

    def submodule(self, sub):
        """The submodule spanned by a Subspace closed under the action (new coordinates)."""
        A = self.algebra
        basis = sub.sparse_vectors()
        cols = Matrix.from_columns(A.field, self.dim, basis)
        acts = []
        for b in range(A.dim):
            rows = {}
            for i, v in enumerate(basis):
                img = self.act(v, b)
                x = solve_sparse(cols, img)
                if x is None:
                    raise ModuleError("subspace is not a submodule")
                if x:
                    rows[i] = x
            acts.append(Matrix(A.field, len(basis), len(basis), rows))
        return FDModule(A, len(basis), acts, check=False), basis

    def __repr__(self):
        return f"FDModule(dim={self.dim}{', ' + self.name if self.name else ''})"


def regular_action(a, elems):
    """Action matrices on the span of the given basis indices (assumed closed under right multiplication)."""
    pos = {b: i for i, b in enumerate(elems)}
    acts = []
    for x in range(a.dim):
        rows = {}
        for i, b in enumerate(elems):
            img = {}
            for k, c in a.mult[b][x].items():
                if k not in pos:
                    raise ModuleError("span is not closed under right multiplication")
                img[pos[k]] = c
            if img:
                rows[i] = img
        acts.append(Matrix(a.field, len(elems), len(elems), rows))
    return acts


def projective_basis(a, v):
    """Basis indices spanning ``e_v A``."""
    return [b for b in range(a.dim) if a.endpoints[b][0] == v]


def projectives(a):
    _require_vertices(a)
    out = []
    for v in range(a.n_vertices):
        elems = projective_basis(a, v)
        out.append(FDModule(a, len(elems), regular_action(a, elems), name=f"P{v}"))
    return out


def simples(a):
    _require_vertices(a)
    out = []
    F = a.field
    for v in range(a.n_vertices):
        acts = []
        for x in range(a.dim):
            # only the vertex idempotent e_v acts nontrivially
            acts.append(Matrix(F, 1, 1, {0: {0: F.one}} if x == a.idempotents[v] else {}))
        out.append(FDModule(a, 1, acts, name=f"E{v}"))
    return out


# -- resolutions -------------------------------------------------------------------

@dataclass
class ProjResolution:
    module: FDModule
    terms: list                       # terms[i] = list of vertices (summands e_v A of P_i)
    maps: list                        # maps[i]: generator j of P_{i+1} -> sparse over (summand, basis) of P_i
    augmentation: list                # generator j of P_0 -> element of the module
    complete: bool = False            # True when the last kernel was zero
    checks: dict = dc_field(default_factory=dict)

    @property
    def length(self):
        return len(self.terms)


def _proj_cover(M):
    """Generators of M (one list per vertex) spanning a complement of ``M rad``."""
    A = M.algebra
    rad = M.radical_image()
    gens = []
    for v in range(A.n_vertices):
        part = M.vertex_part(v)
        span = Subspace(A.field, M.dim, rad.sparse_vectors())
        for x in part.sparse_vectors():
            if span.reduce_sparse(dict(x)):
                gens.append((v, x))
                span = Subspace(A.field, M.dim, span.sparse_vectors() + [x])
    return gens


def _free_coords(a, vertices):
    """Coordinates of ``P = sum e_v A``: pairs (summand index, basis index)."""
    return [(j, b) for j, v in enumerate(vertices) for b in projective_basis(a, v)]


def minimal_resolution(M, N):
    """Minimal projective resolution of M through ``P_N``."""
    A = M.algebra
    _require_vertices(A)
    F = A.field
    terms, maps = [], []
    gens = _proj_cover(M)
    augmentation = [x for _, x in gens]
    current, cur_gens = M, gens
    embed = None   # basis of the current module inside the previous free module
    complete = False
    for i in range(N + 1):
        verts = [v for v, _ in cur_gens]
        terms.append(verts)
        if embed is not None:
            maps.append([_to_free_vector(embed, x) for _, x in cur_gens])
        coords = _free_coords(A, verts)
        # the map P_i -> current: (j, b) -> g_j . b
        cols = [current.act(cur_gens[j][1], b) for j, b in coords]
        eps = Matrix.from_columns(F, current.dim, cols)
        K = kernel_basis(eps)
        if K.dim == 0:
            complete = True
            break
        if i == N:
            break
        P = _free_module(A, verts)
        sub, basis = P.submodule(K)
        embed = (coords, basis)
        cur_gens = _proj_cover(sub)
        current = sub
    return ProjResolution(M, terms, maps, augmentation, complete)


def _to_free_vector(embed, x):
    coords, basis = embed
    out = {}
    for i, c in x.items():
        for k, v in basis[i].items():
            key = coords[k]
            out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v != 0}


def _free_module(A, verts):
    blocks = [regular_action(A, projective_basis(A, v)) for v in verts]
    sizes = [len(projective_basis(A, v)) for v in verts]
    offs = [sum(sizes[:j]) for j in range(len(sizes))]
    n = sum(sizes)
    acts = []
    for x in range(A.dim):
        rows = {}
        for j, blk in enumerate(blocks):
            for i, r in blk[x].rows.items():
                rows[offs[j] + i] = {offs[j] + k: v for k, v in r.items()}
        acts.append(Matrix(A.field, n, n, rows))
    return FDModule(A, n, acts, check=False)


def resolution_is_minimal(res):
    A = res.module.algebra
    rad = set(A.radical)
    for m in res.maps:
        for vec in m:
            for (_, b) in vec:
                if b not in rad:
                    return False
    return True


def resolution_is_exact(res):
    """``P_{i+1} -> P_i -> P_{i-1}`` composes to zero and ranks match kernels."""
    A = res.module.algebra
    F = A.field
    mats = [_map_matrix(A, res.terms[i + 1], res.terms[i], res.maps[i]) for i in range(len(res.maps))]
    aug_cols = []
    M = res.module
    for j, b in _free_coords(A, res.terms[0]):
        aug_cols.append(M.act(res.augmentation[j], b))
    eps = Matrix.from_columns(F, M.dim, aug_cols)
    if eps.rank() != M.dim:
        return False
    prev = eps
    for m in mats:
        if not (prev @ m).is_zero():
            return False
        if m.rank() != prev.ncols - prev.rank():
            return False
        prev = m
    return True


def _map_matrix(A, src_verts, tgt_verts, images):
    """Matrix of ``P_src -> P_tgt`` in free coordinates, from generator images."""
    src = _free_coords(A, src_verts)
    tgt = {c: i for i, c in enumerate(_free_coords(A, tgt_verts))}
    cols = []
    for j, b in src:
        col = {}
        for (k, x), c in images[j].items():
            for y, d in A.mult[x][b].items():
                i = tgt[(k, y)]
                col[i] = col.get(i, 0) + c * d
        cols.append({i: v for i, v in col.items() if v != 0})
    return Matrix.from_columns(A.field, len(tgt), cols)


# -- Hom and Ext ------------------------------------------------------------------

def hom_dim(M, N):
    """``dim Hom_A(M, N)`` by solving ``act_M[i] X = X act_N[i]``."""
    A = M.algebra
    F = A.field
    m, n = M.dim, N.dim
    var = lambda r, c: r * n + c
    rows = []
    for i in range(A.dim):
        P, Q = M.action[i], N.action[i]
        for r in range(m):
            for c in range(n):
                eq = {}
                for k, v in P.rows.get(r, {}).items():
                    eq[var(k, c)] = eq.get(var(k, c), 0) + v
                for k in range(n):
                    v = Q.rows.get(k, {}).get(c)
                    if v:
                        eq[var(r, k)] = eq.get(var(r, k), 0) - v
                eq = {j: v for j, v in eq.items() if v != 0}
                if eq:
                    rows.append(eq)
    mat = Matrix(F, len(rows), m * n, dict(enumerate(rows)))
    return m * n - mat.rank()


@dataclass
class ExtGroup:
    degree: int
    dim: int
    basis: list


def _hom_cochain(res, N, i):
    """Matrix of ``Hom(P_i, N) -> Hom(P_{i+1}, N)`` and the coordinates of ``Hom(P_i, N)``."""
    A = N.algebra
    F = A.field
    parts_i = [N.vertex_part(v).sparse_vectors() for v in res.terms[i]]
    coords_i = [(j, t) for j, part in enumerate(parts_i) for t in range(len(part))]
    if i + 1 >= len(res.terms):
        return None, coords_i, parts_i
    parts_n = [N.vertex_part(v).sparse_vectors() for v in res.terms[i + 1]]
    coords_n = [(j, t) for j, part in enumerate(parts_n) for t in range(len(part))]
    # target coordinates: value at generator k of P_{i+1}, expressed in N e_{w_k}
    bases = [Matrix.from_columns(F, N.dim, part) for part in parts_n]
    cols = []
    for j, t in coords_i:
        n_j = parts_i[j][t]
        col = {}
        off = 0
        for k, img in enumerate(res.maps[i]):
            val = {}
            for (jj, x), c in img.items():
                if jj != j:
                    continue
                for y, d in N.act(n_j, x).items():
                    val[y] = val.get(y, 0) + c * d
            val = {y: v for y, v in val.items() if v != 0}
            if val:
                sol = solve_sparse(bases[k], val)
                if sol is None:
                    raise ModuleError("image does not lie in N e_w")
                for s, v in sol.items():
                    col[off + s] = v
            off += len(parts_n[k])
        cols.append(col)
    return Matrix.from_columns(F, len(coords_n), cols), coords_i, parts_i


def ext(M, N, i, resolution=None):
    """``Ext^i_A(M, N)`` as the degree-i cohomology of ``Hom(P_., N)``."""
    if i < 0:
        return ExtGroup(i, 0, [])
    res = resolution or minimal_resolution(M, i + 1)
    if i >= len(res.terms):
        return ExtGroup(i, 0, [])
    F = M.algebra.field
    d_i, coords, _ = _hom_cochain(res, N, i)
    n = len(coords)
    Z = kernel_basis(d_i) if d_i is not None else Subspace(F, n, [{k: F.one} for k in range(n)])
    if i > 0:
        d_prev, _, _ = _hom_cochain(res, N, i - 1)
        B = Subspace(F, n, [] if d_prev is None else
                     [d_prev.apply_sparse({c: F.one}) for c in range(d_prev.ncols)])
    else:
        B = Subspace(F, n, [])
    reps = []
    span = B
    for z in Z.sparse_vectors():
        if span.reduce_sparse(dict(z)):
            reps.append(z)
            span = Subspace(F, n, span.sparse_vectors() + [z])
    return ExtGroup(i, Z.dim - B.dim, reps)


def ext_dims(M, N, top):
    res = minimal_resolution(M, top + 1)
    return [ext(M, N, i, res).dim for i in range(top + 1)]


def cartan_matrix(a):
    _require_vertices(a)
    n = a.n_vertices
    C = [[0] * n for _ in range(n)]
    for b in range(a.dim):
        s, t = a.endpoints[b]
        C[s][t] += 1
    return C


def euler_form(a, dv_m, dv_n):
    """``dimvec(M) C^{-1} dimvec(N)^T`` over the rationals."""
    C = cartan_matrix(a)
    n = len(C)
    F = QQ
    cm = Matrix.from_rows(F, [[F(x) for x in row] for row in C])
    # solve C^T y = dv_m, then result = y . dv_n
    y = solve_sparse(cm.transpose(), {i: F(v) for i, v in enumerate(dv_m) if v})
    if y is None:
        raise ModuleError("Cartan matrix is singular")
    return sum(y.get(i, 0) * dv_n[i] for i in range(n))


# -- the tilting check ---------------------------------------------------------------

def tilting_table(a, max_shift=None):
    """``{i: dim Hom_D(T, T[i])}`` for ``T = sum_j E_j[j]``."""
    S = simples(a)
    nv = len(S)
    top = 2 * nv + 1
    table = {}
    exts = {}
    for j in range(nv):
        res = minimal_resolution(S[j], top + 1)
        for k in range(nv):
            exts[(j, k)] = [ext(S[j], S[k], i, res).dim for i in range(top + 1)]
    shift = nv if max_shift is None else max_shift
    for i in range(-shift, shift + 1):
        total = 0
        for j in range(nv):
            for k in range(nv):
                deg = k + i - j
                if 0 <= deg <= top:
                    total += exts[(j, k)][deg]
        table[i] = total
    return table, exts


def tilting_check_beilinson(n, field=QQ):
    A, B = beilinson_pair(n, field)
    table, exts = tilting_table(A, n + 1)
    vanishing = all(v == 0 for i, v in table.items() if i != 0)
    return {
        "n": n,
        "hom": table,
        "end_dim": table[0],
        "dim_B": B.dim,
        "vanishing": vanishing,
        "ok": vanishing and table[0] == B.dim,
        "ext": {f"{j},{k}": v for (j, k), v in sorted(exts.items())},
    }


def beilinson_hh_comparison(n, max_degree=4, field=QQ):
    A, B = beilinson_pair(n, field)
    return hh_dims(A, max_degree, REDUCED), hh_dims(B, max_degree, REDUCED)
