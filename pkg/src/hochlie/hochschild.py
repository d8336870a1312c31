"""
Hochschild cochains, the Gerstenhaber operations, cup product and cohomology.

A p-cochain is stored sparsely: ``values[(a_1, ..., a_p)]`` is the image
of that basis tuple as a dict ``k -> coefficient``.  Two cochain spaces
are available:

* ``"full"``: every basis tuple, every output coordinate.
* ``"reduced"``: for algebras with vertex data, the E-relative normalized
  cochains.  Their domain is the composable tuples of radical basis
  elements ``(r_1, ..., r_p)`` and the value lies in ``e_s A e_t`` with
  ``s`` the source of ``r_1`` and ``t`` the target of ``r_p``.  Extended
  by zero they are ordinary cochains, closed under the differential,
  the products ``dot_i`` and the cup product.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import AlgebraError
from .exactlin import Matrix, Subspace, image_basis, kernel_basis, solve_sparse

FULL = "full"
REDUCED = "reduced"


class NotACocycle(ValueError):
    pass


def _add_into(acc, key, vec, c):
    slot = acc.get(key)
    if slot is None:
        slot = acc[key] = {}
    for k, v in vec.items():
        w = slot.get(k, 0) + c * v
        if w != 0:
            slot[k] = w
        else:
            slot.pop(k, None)
    if not slot:
        del acc[key]


def _clean(values):
    out = {}
    for t, vec in values.items():
        v = {k: x for k, x in vec.items() if x != 0}
        if v:
            out[tuple(t)] = v
    return out


class Cochain:
    """A multilinear map ``A^{(x)p} -> A``."""

    __slots__ = ("algebra", "degree", "values", "mode")

    def __init__(self, algebra, degree, values=None, mode=FULL):
        self.algebra = algebra
        self.degree = degree
        self.values = _clean(values or {})
        self.mode = mode

    @classmethod
    def zero(cls, algebra, degree, mode=FULL):
        return cls(algebra, degree, {}, mode)

    @classmethod
    def from_element(cls, algebra, vec, mode=FULL):
        return cls(algebra, 0, {(): dict(vec)}, mode)

    @classmethod
    def from_function(cls, algebra, degree, fn, mode=FULL):
        """Tabulate ``fn(tuple) -> sparse vector`` over the domain of the given space."""
        space = cochain_space(algebra, degree, mode)
        return cls(algebra, degree, {t: fn(t) for t in space.tuples}, mode)

    @classmethod
    def identity(cls, algebra):
        one = algebra.field.one
        return cls(algebra, 1, {(i,): {i: one} for i in range(algebra.dim)})

    @classmethod
    def multiplication(cls, algebra):
        return cls(algebra, 2, {(i, j): algebra.mult[i][j]
                                for i in range(algebra.dim) for j in range(algebra.dim)})

    def __call__(self, *args):
        return dict(self.values.get(tuple(args), {}))

    def evaluate(self, vectors):
        """Multilinear evaluation on sparse vectors."""
        out = {}
        for t, vec in self.values.items():
            c = 1
            for a, x in zip(t, vectors):
                w = x.get(a)
                if w is None:
                    c = 0
                    break
                c = c * w
            if c != 0:
                for k, v in vec.items():
                    out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v != 0}

    def is_zero(self):
        return not self.values

    def _combine(self, other, c):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        acc = {t: dict(v) for t, v in self.values.items()}
        for t, vec in other.values.items():
            _add_into(acc, t, vec, c)
        return Cochain(self.algebra, self.degree, acc, _join(self.mode, other.mode))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if c == 0:
            return Cochain.zero(self.algebra, self.degree, self.mode)
        return Cochain(self.algebra, self.degree,
                       {t: {k: c * v for k, v in vec.items()} for t, vec in self.values.items()},
                       self.mode)

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.values == other.values)

    __hash__ = object.__hash__

    def __repr__(self):
        return f"Cochain(degree={self.degree}, support={len(self.values)}, {self.mode})"

    def to_json(self):
        """``{"degree": p, "matrix": [[...]]}`` over the full tensor basis."""
        F = self.algebra.field
        n = self.algebra.dim
        cols = list(itertools.product(range(n), repeat=self.degree)) if self.degree >= 0 else []
        mat = [[F.to_json(self.values.get(t, {}).get(k, 0)) for t in cols] for k in range(n)]
        return {"degree": self.degree, "matrix": mat}


def _join(m1, m2):
    return REDUCED if m1 == REDUCED and m2 == REDUCED else FULL


class CochainSpace:
    """Coordinates of a cochain space: pairs ``(tuple, output index)``."""

    def __init__(self, algebra, degree, mode=FULL):
        self.algebra = algebra
        self.degree = degree
        self.mode = mode
        n = algebra.dim
        if degree < 0:
            self.tuples = []
            self.outputs = {}
        elif mode == FULL:
            self.tuples = list(itertools.product(range(n), repeat=degree))
            allout = list(range(n))
            self.outputs = {t: allout for t in self.tuples}
        elif mode == REDUCED:
            if not algebra.has_vertices:
                raise AlgebraError("reduced mode needs an algebra with vertex data")
            ends = algebra.endpoints
            rad = algebra.radical
            if degree == 0:
                self.tuples = [()]
                self.outputs = {(): [b for b in range(n) if ends[b][0] == ends[b][1]]}
            else:
                tuples = [(r,) for r in rad]
                for _ in range(degree - 1):
                    tuples = [t + (r,) for t in tuples for r in rad if ends[t[-1]][1] == ends[r][0]]
                self.tuples = tuples
                self.outputs = {}
                for t in tuples:
                    s, e = ends[t[0]][0], ends[t[-1]][1]
                    self.outputs[t] = [b for b in range(n) if ends[b] == (s, e)]
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self.coords = [(t, k) for t in self.tuples for k in self.outputs[t]]
        self.index = {c: i for i, c in enumerate(self.coords)}
        self.tuple_set = set(self.tuples)

    @property
    def dim(self):
        return len(self.coords)

    def to_vector(self, c):
        vec = {}
        for t, val in c.values.items():
            for k, v in val.items():
                i = self.index.get((t, k))
                if i is None:
                    raise ValueError(f"cochain has support {t}->{k} outside the {self.mode} space")
                vec[i] = v
        return vec

    def from_vector(self, vec):
        values = {}
        for i, v in (vec.items() if isinstance(vec, dict) else enumerate(vec)):
            if v != 0:
                t, k = self.coords[i]
                values.setdefault(t, {})[k] = v
        return Cochain(self.algebra, self.degree, values, self.mode)

    def basis_cochain(self, i):
        t, k = self.coords[i]
        return Cochain(self.algebra, self.degree, {t: {k: self.algebra.field.one}}, self.mode)

    def random(self, rng, lo=-3, hi=3, density=1.0):
        F = self.algebra.field
        values = {}
        for t, k in self.coords:
            if density < 1.0 and rng.random() >= density:
                continue
            v = rng.randint(lo, hi)
            if v:
                values.setdefault(t, {})[k] = F(v)
        return Cochain(self.algebra, self.degree, values, self.mode)


_space_cache = {}


def cochain_space(algebra, degree, mode=FULL):
    key = (id(algebra), degree, mode)
    sp = _space_cache.get(key)
    if sp is None or sp.algebra is not algebra:
        sp = _space_cache[key] = CochainSpace(algebra, degree, mode)
    return sp


def _factorizations(algebra):
    fac = getattr(algebra, "_factorizations", None)
    if fac is None:
        fac = [[] for _ in range(algebra.dim)]
        for x in range(algebra.dim):
            for y in range(algebra.dim):
                for k, c in algebra.mult[x][y].items():
                    fac[k].append((x, y, c))
        algebra._factorizations = fac
    return fac


# -- operations -----------------------------------------------------------------

def differential(c):
    """Hochschild coboundary.

    ``(dc)(a_0..a_p) = a_0 c(a_1..a_p) + sum_i (-1)^i c(.., a_{i-1} a_i, ..)
    + (-1)^{p+1} c(a_0..a_{p-1}) a_p``; for p = 0 this is ``a -> a c - c a``.
    Computed by scattering each support tuple of ``c``.
    """
    A = c.algebra
    p = c.degree
    if p < 0:
        return Cochain.zero(A, p + 1, c.mode)
    n = A.dim
    mult = A.mult
    fac = _factorizations(A)
    dom = None if c.mode == FULL else cochain_space(A, p + 1, c.mode).tuple_set
    out = {}
    for u, val in c.values.items():
        # a_0 * c(u)
        for a0 in range(n):
            t = (a0,) + u
            if dom is not None and t not in dom:
                continue
            acc = {}
            for j, v in val.items():
                for k, w in mult[a0][j].items():
                    acc[k] = acc.get(k, 0) + v * w
            _add_into(out, t, acc, 1)
        # (-1)^i c(.., a_{i-1} a_i, ..) with a_{i-1} a_i hitting u_{i-1}
        for i in range(1, p + 1):
            sgn = -1 if i % 2 else 1
            for x, y, coef in fac[u[i - 1]]:
                t = u[:i - 1] + (x, y) + u[i:]
                if dom is not None and t not in dom:
                    continue
                _add_into(out, t, val, sgn * coef)
        # (-1)^{p+1} c(u) * a_p
        sgn = -1 if (p + 1) % 2 else 1
        for ap in range(n):
            t = u + (ap,)
            if dom is not None and t not in dom:
                continue
            acc = {}
            for j, v in val.items():
                for k, w in mult[j][ap].items():
                    acc[k] = acc.get(k, 0) + v * w
            _add_into(out, t, acc, sgn)
    return Cochain(A, p + 1, out, c.mode)


def dot_i(c1, c2, i):
    """``(c1 .i c2)(a..) = c1(a_1..a_i, c2(a_{i+1}..a_{i+q}), ..)``."""
    p, q = c1.degree, c2.degree
    if not 0 <= i <= p - 1:
        raise IndexError(f"slot {i} out of range for a {p}-cochain")
    A = c1.algebra
    mode = _join(c1.mode, c2.mode)
    if q < 0:
        return Cochain.zero(A, p + q - 1, mode)
    by_slot = {}
    for t1, v1 in c1.values.items():
        by_slot.setdefault(t1[i], []).append((t1, v1))
    out = {}
    for t2, v2 in c2.values.items():
        for k, coef in v2.items():
            for t1, v1 in by_slot.get(k, ()):
                _add_into(out, t1[:i] + t2 + t1[i + 1:], v1, coef)
    return Cochain(A, p + q - 1, out, mode)


def gerstenhaber_product(c1, c2):
    """``c1 . c2 = sum_i (-1)^{i(q-1)} c1 .i c2``; zero when ``c1`` has degree 0."""
    p, q = c1.degree, c2.degree
    A = c1.algebra
    mode = _join(c1.mode, c2.mode)
    if p <= 0 or q < 0:
        return Cochain.zero(A, p + q - 1, mode)
    out = {}
    for i in range(p):
        sgn = -1 if (i * (q - 1)) % 2 else 1
        for t, v in dot_i(c1, c2, i).values.items():
            _add_into(out, t, v, sgn)
    return Cochain(A, p + q - 1, out, mode)


def bracket(c1, c2):
    """Gerstenhaber bracket ``c1 . c2 - (-1)^{(p-1)(q-1)} c2 . c1``."""
    p, q = c1.degree, c2.degree
    sgn = -1 if ((p - 1) * (q - 1)) % 2 else 1
    return gerstenhaber_product(c1, c2) - gerstenhaber_product(c2, c1).scale(sgn)


def cup(c1, c2):
    """``(c1 u c2)(a_1..a_{p+q}) = c1(a_1..a_p) c2(a_{p+1}..a_{p+q})``."""
    A = c1.algebra
    mult = A.mult
    out = {}
    for t1, v1 in c1.values.items():
        for t2, v2 in c2.values.items():
            acc = {}
            for i, x in v1.items():
                row = mult[i]
                for j, y in v2.items():
                    for k, w in row[j].items():
                        acc[k] = acc.get(k, 0) + x * y * w
            _add_into(out, t1 + t2, acc, 1)
    return Cochain(A, c1.degree + c2.degree, out, _join(c1.mode, c2.mode))


def associator(c1, c2, c3):
    gp = gerstenhaber_product
    return gp(gp(c1, c2), c3) - gp(c1, gp(c2, c3))


# -- cohomology -----------------------------------------------------------------

_dmat_cache = {}


def differential_matrix(algebra, p, mode=FULL):
    """Matrix of ``d: C^p -> C^{p+1}`` in the coordinates of the two spaces."""
    key = (id(algebra), p, mode)
    hit = _dmat_cache.get(key)
    if hit is not None and hit[0] is algebra:
        return hit[1]
    src = cochain_space(algebra, p, mode)
    dst = cochain_space(algebra, p + 1, mode)
    rows = {}
    for j in range(src.dim):
        dc = differential(src.basis_cochain(j))
        for t, vec in dc.values.items():
            for k, v in vec.items():
                i = dst.index[(t, k)]
                rows.setdefault(i, {})[j] = v
    m = Matrix(algebra.field, dst.dim, src.dim, rows)
    _dmat_cache[key] = (algebra, m)
    return m


def hh_dims(algebra, max_degree, mode=FULL):
    """``[dim HH^0, ..., dim HH^max_degree]`` from ranks alone."""
    ranks = {-1: 0}
    for p in range(max_degree + 1):
        ranks[p] = differential_matrix(algebra, p, mode).rank()
    return [cochain_space(algebra, p, mode).dim - ranks[p] - ranks[p - 1]
            for p in range(max_degree + 1)]


class HHSpace:
    """``HH^i`` with cocycles Z, coboundaries B and chosen representatives."""

    def __init__(self, algebra, degree, mode=FULL):
        self.algebra = algebra
        self.degree = degree
        self.mode = mode
        self.space = cochain_space(algebra, degree, mode)
        self.Z = kernel_basis(differential_matrix(algebra, degree, mode))
        if degree == 0:
            self.B = Subspace(algebra.field, self.space.dim, [])
        else:
            self.B = image_basis(differential_matrix(algebra, degree - 1, mode))
        # pivot completion of Z against B
        span = Subspace(algebra.field, self.space.dim, self.B.sparse_vectors())
        reps = []
        for z in self.Z.sparse_vectors():
            if span.reduce_sparse(dict(z)):
                reps.append(z)
                span = Subspace(algebra.field, self.space.dim, span.sparse_vectors() + [z])
        self._rep_vectors = reps
        self._reduced_reps = [self.B.reduce_sparse(dict(r)) for r in reps]
        self.representatives = [self.space.from_vector(r) for r in reps]
        self._coord_matrix = Matrix.from_columns(algebra.field, self.space.dim, self._reduced_reps)

    @property
    def dim(self):
        return len(self.representatives)

    def coordinates(self, vec):
        red = self.B.reduce_sparse(dict(vec))
        x = solve_sparse(self._coord_matrix, red)
        if x is None:
            raise ValueError("vector is not in the cocycle space")
        z = self.algebra.field.zero
        return [x.get(i, z) for i in range(self.dim)]

    def class_of(self, c):
        return class_of(c, self)

    def basis_class(self, i):
        z = self.algebra.field.zero
        coords = [z] * self.dim
        coords[i] = self.algebra.field.one
        return HHClass(self, coords, self.representatives[i])

    def __repr__(self):
        return f"HHSpace(HH^{self.degree}, dim={self.dim}, {self.mode})"


@dataclass
class HHClass:
    space: HHSpace
    coords: list
    representative: Cochain

    @property
    def degree(self):
        return self.space.degree

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, HHClass) and self.space is other.space
                and self.coords == other.coords)

    def __add__(self, other):
        return class_of(self.representative + other.representative, self.space)

    def scale(self, c):
        return class_of(self.representative.scale(c), self.space)

    def __neg__(self):
        return self.scale(-1)


_hh_cache = {}


def hh_space(algebra, degree, mode=FULL):
    key = (id(algebra), degree, mode)
    hit = _hh_cache.get(key)
    if hit is None or hit.algebra is not algebra:
        hit = _hh_cache[key] = HHSpace(algebra, degree, mode)
    return hit


def class_of(c, space):
    if c.degree != space.degree:
        raise ValueError("cochain degree does not match the HH space")
    if not differential(c).is_zero():
        raise NotACocycle(f"d c != 0 for {c!r}")
    if c.mode != space.mode:
        c = Cochain(c.algebra, c.degree, c.values, space.mode)
    vec = space.space.to_vector(c)
    return HHClass(space, space.coordinates(vec), c)


def induced_cup(x, y):
    A = x.space.algebra
    target = hh_space(A, x.degree + y.degree, x.space.mode)
    return class_of(cup(x.representative, y.representative), target)


def induced_bracket(x, y):
    A = x.space.algebra
    target = hh_space(A, x.degree + y.degree - 1, x.space.mode)
    return class_of(bracket(x.representative, y.representative), target)
