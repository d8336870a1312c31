"""
Bounded cochain complexes of vector spaces on labelled bases, chain maps,
homology, and the twisted tensor constructions built on the bar coalgebra.

A complex is given by ``bases[p]`` (a list of hashable keys for each
degree p) and a differential ``dfun(p, key) -> {key: coeff}`` landing in
degree p + 1.  Matrices are produced lazily from ``dfun``.

Twisted tensor differentials (``convention="koszul"``, the default):

* ``M (x)_tau C``:  ``d(m (x) w) = dm (x) w + (-1)^{|m|} m (x) d_C w
  + (-1)^{|m|} sum m tau(w_(1)) (x) w_(2)``
* ``C (x)_tau M``:  ``d(w (x) m) = d_C w (x) m + (-1)^{|w|} w (x) dm
  - sum (-1)^{|w_(1)|} w_(1) (x) tau(w_(2)) m``

``convention="literal"`` replaces the middle term by ``(-1)^p x (x) y``
and drops the Koszul signs in the twisting terms; it does not square to
zero and exists so that this can be demonstrated.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .barcoalg import BarCoalgebra, TruncationTooSmall, bar_differential
from .exactlin import Matrix, Subspace, image_basis, kernel_basis
from .signs import koszul, parity_sign, word_degree

KOSZUL = "koszul"
LITERAL = "literal"
NO_KOSZUL = "no_koszul"
CONVENTIONS = (KOSZUL, LITERAL, NO_KOSZUL)


class ComplexError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class TwistingEquationViolated(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def _acc(out, key, c):
    v = out.get(key, 0) + c
    if v != 0:
        out[key] = v
    else:
        out.pop(key, None)


def _addvec(out, vec, c=1):
    for k, v in vec.items():
        _acc(out, k, c * v)


class BoundedComplex:
    """Finite cochain complex with labelled bases in degrees ``lo..hi``."""

    def __init__(self, field, bases, dfun, check=True, name=None,
                 left_action=None, right_action=None):
        self.field = field
        self.bases = {p: list(b) for p, b in bases.items() if len(b)}
        self.name = name
        self._dfun = dfun
        self._index = {}
        self._dmat = {}
        self.left_action = left_action
        self.right_action = right_action
        if check:
            w = self.d_squared_witness()
            if w is not None:
                raise ComplexError(f"d^2 != 0 on {w!r}", w)

    @property
    def lo(self):
        return min(self.bases) if self.bases else 0

    @property
    def hi(self):
        return max(self.bases) if self.bases else 0

    @property
    def window(self):
        return (self.lo, self.hi)

    def degrees(self):
        return sorted(self.bases)

    def basis(self, p):
        return self.bases.get(p, [])

    def dim(self, p):
        return len(self.bases.get(p, ()))

    def index(self, p):
        idx = self._index.get(p)
        if idx is None:
            idx = self._index[p] = {k: i for i, k in enumerate(self.basis(p))}
        return idx

    def d(self, p, vec):
        """Apply the differential to a sparse vector of degree-p keys."""
        if isinstance(vec, dict):
            items = vec.items()
        else:
            items = [(vec, self.field.one)]
        out = {}
        if p + 1 not in self.bases:
            return out
        for k, c in items:
            _addvec(out, self._dfun(p, k), c)
        return out

    def differential(self, p):
        """Matrix of ``d^p``: rows index degree p+1, columns degree p."""
        m = self._dmat.get(p)
        if m is not None:
            return m
        rows = {}
        tgt = self.index(p + 1)
        for j, k in enumerate(self.basis(p)):
            if p + 1 not in self.bases:
                break
            for k2, v in self._dfun(p, k).items():
                i = tgt.get(k2)
                if i is None:
                    raise ComplexError(f"d({k!r}) leaves the complex at {k2!r}", k)
                rows.setdefault(i, {})[j] = v
        m = Matrix(self.field, self.dim(p + 1), self.dim(p), rows)
        self._dmat[p] = m
        return m

    def d_squared_witness(self):
        for p in self.degrees():
            if p + 2 not in self.bases:
                continue
            for k in self.basis(p):
                if self.d(p + 1, self.d(p, k)):
                    return (p, k)
        return None

    def module_map_witness(self, algebra):
        """First ``(side, p, key, a)`` where d fails to commute with an action."""
        for side, act in (("left", self.left_action), ("right", self.right_action)):
            if act is None:
                continue
            for p in self.degrees():
                for k in self.basis(p):
                    for a in range(algebra.dim):
                        lhs = self.d(p, act(p, k, a))
                        rhs = {}
                        for k2, v in self.d(p, k).items():
                            _addvec(rhs, act(p + 1, k2, a), v)
                        if lhs != rhs:
                            return (side, p, k, a)
        return None

    def to_vector(self, p, vec):
        idx = self.index(p)
        return {idx[k]: v for k, v in vec.items()}

    def from_vector(self, p, vec):
        b = self.basis(p)
        return {b[i]: v for i, v in vec.items() if v != 0}

    def to_json(self):
        lo, hi = self.window
        return {
            "window": [lo, hi],
            "components": [self.dim(p) for p in range(lo, hi + 1)],
            "differentials": [[[self.field.to_json(x) for x in row]
                               for row in self.differential(p).to_lists()] for p in range(lo, hi)],
        }

    def __repr__(self):
        dims = {p: self.dim(p) for p in self.degrees()}
        return f"BoundedComplex({self.name or ''} dims={dims})"


def zero_complex(field):
    return BoundedComplex(field, {}, lambda p, k: {})


def complex_from_matrices(field, dims, diffs, check=True):
    """``dims[p]`` components with basis ``0..n-1``; ``diffs[p]`` is d^p as a Matrix."""
    bases = {p: list(range(n)) for p, n in dims.items()}

    def dfun(p, k):
        m = diffs.get(p)
        if m is None:
            return {}
        return {i: r[k] for i, r in m.rows.items() if k in r}

    return BoundedComplex(field, bases, dfun, check=check)


# -- homology -----------------------------------------------------------------------

@dataclass
class Homology:
    degree: int
    dim: int
    representatives: list = dc_field(default_factory=list)
    cycles: Subspace = None
    boundaries: Subspace = None


def _cycles(K, p):
    n = K.dim(p)
    if p + 1 in K.bases:
        return kernel_basis(K.differential(p))
    return Subspace(K.field, n, [{i: K.field.one} for i in range(n)])


def _boundaries(K, p):
    if p - 1 in K.bases and p in K.bases:
        return image_basis(K.differential(p - 1))
    return Subspace(K.field, K.dim(p), [])


def homology(K, p):
    """``ker d^p / im d^{p-1}`` with representatives by pivot completion."""
    Z = _cycles(K, p)
    B = _boundaries(K, p)
    reps = []
    span = B
    for z in Z.sparse_vectors():
        if span.reduce_sparse(dict(z)):
            reps.append(K.from_vector(p, z))
            span = Subspace(K.field, K.dim(p), span.sparse_vectors() + [z])
    return Homology(p, Z.dim - B.dim, reps, Z, B)


def homology_dims(K, degrees=None):
    degs = K.degrees() if degrees is None else degrees
    return {p: homology(K, p).dim for p in degs}


def shift(K, i):
    """``K[i]^p = K^{i+p}`` with differential ``(-1)^i d``."""
    s = parity_sign(i)
    bases = {p - i: b for p, b in K.bases.items()}

    def dfun(p, k):
        return {k2: s * v for k2, v in K._dfun(p + i, k).items()}

    la = ra = None
    if K.left_action is not None:
        la = lambda p, k, a: K.left_action(p + i, k, a)
    if K.right_action is not None:
        ra = lambda p, k, a: K.right_action(p + i, k, a)
    out = BoundedComplex(K.field, bases, dfun, check=False, name=f"{K.name}[{i}]",
                         left_action=la, right_action=ra)
    if hasattr(K, "algebra"):
        out.algebra = K.algebra
    return out


# -- chain maps ------------------------------------------------------------------

class ChainMap:
    """Degree-preserving map given by ``ffun(p, key) -> {target key: coeff}``."""

    def __init__(self, source, target, ffun, check=True):
        self.source = source
        self.target = target
        self._f = ffun
        if check:
            w = self.commutation_witness()
            if w is not None:
                raise ComplexError(f"not a chain map at {w!r}", w)

    def __call__(self, p, vec):
        if not isinstance(vec, dict):
            vec = {vec: self.source.field.one}
        out = {}
        if p not in self.target.bases:
            return out
        for k, c in vec.items():
            _addvec(out, self._f(p, k), c)
        return out

    def matrix(self, p):
        tgt = self.target.index(p)
        rows = {}
        for j, k in enumerate(self.source.basis(p)):
            for k2, v in self(p, k).items():
                rows.setdefault(tgt[k2], {})[j] = v
        return Matrix(self.source.field, self.target.dim(p), self.source.dim(p), rows)

    def commutation_witness(self, degrees=None):
        degs = self.source.degrees() if degrees is None else degrees
        for p in degs:
            for k in self.source.basis(p):
                lhs = self.target.d(p, self(p, k))
                rhs = self(p + 1, self.source.d(p, k))
                if lhs != rhs:
                    return (p, k)
        return None

    def compose(self, other):
        """``self o other``."""
        return ChainMap(other.source, self.target,
                        lambda p, k: self(p, other(p, k)), check=False)


@dataclass
class QuasiIsoResult:
    ok: bool
    witness: int = None
    ranks: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.ok


def induced_rank(f, p):
    """Rank of ``H^p(f)``."""
    S, T = f.source, f.target
    Z = _cycles(S, p)
    B = _boundaries(T, p)
    imgs = [T.to_vector(p, f(p, S.from_vector(p, z))) for z in Z.sparse_vectors()]
    both = Subspace(T.field, T.dim(p), B.sparse_vectors() + imgs)
    return both.dim - B.dim


def quasi_iso_check(f, degrees=None):
    """Does ``f`` induce isomorphisms on homology in the given degrees?"""
    degs = degrees
    if degs is None:
        degs = sorted(set(f.source.degrees()) | set(f.target.degrees()))
    ranks = {}
    for p in degs:
        hs = homology(f.source, p).dim
        ht = homology(f.target, p).dim
        r = induced_rank(f, p) if hs and ht else 0
        ranks[p] = (hs, ht, r)
        if not (hs == ht == r):
            return QuasiIsoResult(False, p, ranks)
    return QuasiIsoResult(True, None, ranks)


# -- the algebra as a complex, and plain tensor products --------------------------

def _mult_vec(A, x, y):
    return dict(A.mult[x][y])


def algebra_complex(A, degree=0):
    """``A`` concentrated in one degree, with both regular actions."""
    def left(p, k, a):
        return _mult_vec(A, a, k)

    def right(p, k, a):
        return _mult_vec(A, k, a)

    return BoundedComplex(A.field, {degree: list(range(A.dim))}, lambda p, k: {},
                          check=False, name="A", left_action=left, right_action=right)


class RightFreeComplex:
    """A complex of free right A-modules ``V^p (x) A``.

    ``generators[p]`` lists the generator keys; ``dgen(p, g)`` is the
    differential of ``g (x) 1`` as ``{(g', a): coeff}`` meaning
    ``sum coeff g' (x) b_a``.
    """

    def __init__(self, algebra, generators, dgen):
        self.algebra = algebra
        self.generators = {p: list(g) for p, g in generators.items() if len(g)}
        self.dgen = dgen


def tensor_over_A(K, N):
    """``K (x)_A N`` for ``K`` right free and ``N`` a complex of left modules.

    Uses ``d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy``.
    """
    A = K.algebra
    if N.left_action is None:
        raise ValueError("second factor needs a left action")
    bases = {}
    for p, gens in K.generators.items():
        for q, nb in N.bases.items():
            bases.setdefault(p + q, []).extend((g, n) for g in gens for n in nb)
    qdeg = {}
    for q, nb in N.bases.items():
        for n in nb:
            qdeg[n] = q

    def dfun(t, key):
        g, n = key
        q = qdeg[n]
        p = t - q
        out = {}
        for (g2, a), c in K.dgen(p, g).items():
            for n2, v in N.left_action(q, n, a).items():
                _acc(out, (g2, n2), c * v)
        s = parity_sign(p)
        for n2, v in N.d(q, n).items():
            _acc(out, (g, n2), s * v)
        return out

    return BoundedComplex(A.field, bases, dfun, name="tensor")


# -- twisting cochain -------------------------------------------------------------

def check_twisting_equation(coalg, tau=None):
    """``tau * tau = d tau + tau d_C`` on every word (``d_A = 0`` here).

    ``(f * g)(w) = mu (f (x) g) Delta(w)`` with ``(f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) g(y)``.
    """
    A = coalg.algebra
    tau = tau or (lambda w: {w[0]: A.field.one} if len(w) == 1 else {})
    dC = bar_differential(coalg).op
    for w in coalg.words():
        lhs = {}
        for i in range(len(w) + 1):
            x, y = w[:i], w[i:]
            tx, ty = tau(x), tau(y)
            if not tx or not ty:
                continue
            s = koszul(1, word_degree(x))
            for a, ca in tx.items():
                for b, cb in ty.items():
                    _addvec(lhs, A.mult[a][b], s * ca * cb)
        rhs = {}
        for u, c in dC(w).items():
            _addvec(rhs, tau(u), c)
        if lhs != rhs:
            raise TwistingEquationViolated(f"tau*tau != tau d on {w!r}", w)
    return True


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")


def _word_bases(coalg, m_bases):
    """Bases of ``M (x) C`` keyed by ``(m, w)``."""
    bases = {}
    for q in range(coalg.L + 1):
        words = coalg.basis(q)
        for p, mb in m_bases.items():
            bases.setdefault(p - q, []).extend((m, w) for m in mb for w in words)
    return bases


def twisted_tensor_right(M, coalg, convention=KOSZUL, check=True):
    """``M (x)_tau C+`` for a complex ``M`` of right A-modules (the functor B)."""
    _check_convention(convention)
    check_twisting_equation(coalg)
    if M.right_action is None and M.bases:
        raise ValueError("M needs a right action")
    dC = bar_differential(coalg).op
    mdeg = {m: p for p, mb in M.bases.items() for m in mb}
    bases = _word_bases(coalg, M.bases)

    def dfun(t, key):
        m, w = key
        p = mdeg[m]
        out = {}
        for m2, v in M.d(p, m).items():
            _acc(out, (m2, w), v)
        s = parity_sign(p)
        if convention == LITERAL:
            _acc(out, (m, w), s)
        else:
            for u, v in dC(w).items():
                _acc(out, (m, u), s * v)
        if w:
            st = 1 if convention != KOSZUL else s
            for m2, v in M.right_action(p, m, w[0]).items():
                _acc(out, (m2, w[1:]), st * v)
        return out

    return BoundedComplex(M.field, bases, dfun, check=check, name="B(M)")


def twisted_tensor_left(coalg, M, convention=KOSZUL, check=True):
    """``C+ (x)_tau M`` for a complex ``M`` of left A-modules."""
    _check_convention(convention)
    check_twisting_equation(coalg)
    if M.left_action is None and M.bases:
        raise ValueError("M needs a left action")
    dC = bar_differential(coalg).op
    mdeg = {m: p for p, mb in M.bases.items() for m in mb}
    bases = {}
    for q in range(coalg.L + 1):
        words = coalg.basis(q)
        for p, mb in M.bases.items():
            bases.setdefault(p - q, []).extend((w, m) for w in words for m in mb)

    def dfun(t, key):
        w, m = key
        p = mdeg[m]
        out = {}
        for u, v in dC(w).items():
            _acc(out, (u, m), v)
        s = parity_sign(word_degree(w))
        if convention == LITERAL:
            _acc(out, (w, m), s)
        else:
            for m2, v in M.d(p, m).items():
                _acc(out, (w, m2), s * v)
        if w:
            st = 1 if convention != KOSZUL else parity_sign(word_degree(w[:-1]))
            for m2, v in M.left_action(p, m, w[-1]).items():
                _acc(out, (w[:-1], m2), -st * v)
        return out

    return BoundedComplex(M.field, bases, dfun, check=check, name="C(x)M")


# -- the bar resolution -----------------------------------------------------------

def bar_differential_on(A, dC, key, convention=KOSZUL):
    """Differential of ``a (x) w (x) b`` in ``A (x)_tau C+ (x)_tau A``."""
    a, w, b = key
    out = {}
    if convention == LITERAL:
        _acc(out, key, 1)
    else:
        for u, v in dC(w).items():
            _acc(out, (a, u, b), v)
    if w:
        for k, v in A.mult[a][w[0]].items():
            _acc(out, (k, w[1:], b), v)
        s = 1 if convention != KOSZUL else parity_sign(word_degree(w[:-1]))
        for k, v in A.mult[w[-1]][b].items():
            _acc(out, (a, w[:-1], k), -s * v)
    return out


def _bimodule_bases(A, L):
    n = A.dim
    coalg = BarCoalgebra(A, L)
    return {-q: [(a, w, b) for a in range(n) for w in coalg.basis(q) for b in range(n)]
            for q in range(L + 1)}


def bar_resolution(A, L, convention=KOSZUL, check=True):
    """``A (x)_tau C+ (x)_tau A`` truncated at weight L, with its augmentation to A.

    Degree -q holds ``A (x) (SA)^{(x) q} (x) A``.  The augmentation sends
    ``a (x) () (x) b`` to ``ab``.  Returns ``(P, aug)``.
    """
    _check_convention(convention)
    coalg = BarCoalgebra(A, L)
    check_twisting_equation(coalg)
    dC = bar_differential(coalg).op
    bases = _bimodule_bases(A, L)

    def dfun(p, key):
        return bar_differential_on(A, dC, key, convention)

    def left(p, key, x):
        a, w, b = key
        return {(k, w, b): v for k, v in A.mult[x][a].items()}

    def right(p, key, x):
        a, w, b = key
        return {(a, w, k): v for k, v in A.mult[b][x].items()}

    P = BoundedComplex(A.field, bases, dfun, check=check, name="bar",
                       left_action=left, right_action=right)
    P.algebra = A
    P.coalg = coalg
    target = algebra_complex(A)

    def aug(p, key):
        a, w, b = key
        if p != 0:
            return {}
        return dict(_prod(A, {a: A.field.one}, {b: A.field.one}))

    return P, ChainMap(P, target, aug, check=check)


def bar_resolution_right_free(A, L):
    """The bar resolution as a complex of free right modules on ``a (x) w (x) 1``."""
    coalg = BarCoalgebra(A, L)
    dC = bar_differential(coalg).op
    gens = {-q: [(a, w) for a in range(A.dim) for w in coalg.basis(q)] for q in range(L + 1)}
    one = A.unit

    def dgen(p, g):
        a, w = g
        out = {}
        for u, c in one.items():
            for (a2, w2, b2), v in bar_differential_on(A, dC, (a, w, u)).items():
                _acc(out, ((a2, w2), b2), c * v)
        return out

    return RightFreeComplex(A, gens, dgen)


def _prod(A, x, y):
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, v in A.mult[i][j].items():
                _acc(out, k, a * b * v)
    return out


def contracting_homotopy(A, key):
    """``h(a (x) w (x) b) = 1 (x) (a, w) (x) b``; a left-module contraction of the bar resolution."""
    a, w, b = key
    return {(u, (a,) + w, b): c for u, c in A.unit.items()}


def section(A, b):
    """``A -> P^0``, ``b -> 1 (x) () (x) b``."""
    return {(u, (), b): c for u, c in A.unit.items()}


# -- functors B and Omega -------------------------------------------------------------

def functor_B(M, L, convention=KOSZUL):
    """``B M = M (x)_tau C+`` for a complex of right A-modules (weights <= L)."""
    A = M.algebra
    return twisted_tensor_right(M, BarCoalgebra(A, L), convention)


UNIT_PLUS = "1"   # the adjoined unit of A+ = k + A


def _aplus_mult(A, x, y):
    """Product in ``A+ = k + A``; ``UNIT_PLUS`` is the unit, ``1_A`` only an idempotent."""
    one = A.field.one
    if x == UNIT_PLUS:
        return {y: one}
    if y == UNIT_PLUS:
        return {x: one}
    return dict(A.mult[x][y])


def functor_Omega(BM, M, L, part="all"):
    """``Omega(B M) = (M (x)_tau C+) (x)_tau A+``.

    ``part`` selects the full complex (``"all"``), the subcomplex with last
    factor in A (``"A"``) or the quotient with last factor in k (``"k"``).
    """
    A = M.algebra
    coalg = BarCoalgebra(A, L)
    dC = bar_differential(coalg).op
    mdeg = {m: p for p, mb in M.bases.items() for m in mb}
    last = {"all": [UNIT_PLUS] + list(range(A.dim)), "A": list(range(A.dim)),
            "k": [UNIT_PLUS]}[part]
    bases = {}
    for t, keys in BM.bases.items():
        bases[t] = [(m, w, x) for (m, w) in keys for x in last]

    def dfun(t, key):
        m, w, x = key
        out = {}
        for (m2, w2), v in BM.d(t, (m, w)).items():
            _acc(out, (m2, w2, x), v)
        if w and part != "k":
            s = parity_sign(mdeg[m] + word_degree(w[:-1]))
            for k, v in _aplus_mult(A, w[-1], x).items():
                _acc(out, (m, w[:-1], k), -s * v)
        return out

    def left(t, key, a):
        return {}

    def right(t, key, a):
        m, w, x = key
        return {(m, w, k): v for k, v in _aplus_mult(A, x, a).items()}

    return BoundedComplex(A.field, bases, dfun, name=f"Omega B ({part})", right_action=right)


def omega_counit(OBM, M):
    """``M (x)_tau C+ (x)_tau A+ -> M``: ``m (x) () (x) x -> m x``, zero on longer words."""
    A = M.algebra

    def f(t, key):
        m, w, x = key
        if w:
            return {}
        if x == UNIT_PLUS:
            return {m: A.field.one}
        return M.right_action(t, m, x)

    return ChainMap(OBM, M, f)


def module_complex_from_algebra(A):
    """The regular bimodule ``A`` as a complex in degree 0, with ``.algebra`` set."""
    M = algebra_complex(A)
    M.algebra = A
    return M


def split_exact_sequence(M, L):
    """``0 -> M C A -> M C A+ -> M C k -> 0`` with inclusion, projection and exactness data."""
    A = M.algebra
    BM = functor_B(M, L)
    sub = functor_Omega(BM, M, L, "A")
    mid = functor_Omega(BM, M, L, "all")
    quo = functor_Omega(BM, M, L, "k")
    inc = ChainMap(sub, mid, lambda t, k: {k: A.field.one})
    proj = ChainMap(mid, quo, lambda t, k: {k: A.field.one} if k[2] == UNIT_PLUS else {})
    report = {}
    exact = True
    for t in mid.degrees():
        ri = inc.matrix(t).rank()
        rp = proj.matrix(t).rank()
        comp = (proj.matrix(t) @ inc.matrix(t)).is_zero()
        row = {"sub": sub.dim(t), "mid": mid.dim(t), "quo": quo.dim(t),
               "rank_inc": ri, "rank_proj": rp, "composite_zero": comp}
        ok = (ri == sub.dim(t) and rp == quo.dim(t) and comp
              and sub.dim(t) + quo.dim(t) == mid.dim(t)
              and ri == mid.dim(t) - rp)
        row["exact"] = ok
        exact = exact and ok
        report[t] = row
    return {"sub": sub, "mid": mid, "quo": quo, "inclusion": inc, "projection": proj,
            "rows": report, "exact": exact, "B": BM}
