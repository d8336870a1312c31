"""
The weight-truncated bar coalgebra of an algebra, coderivations and
counital automorphisms over small nilpotent coefficient rings.

A bar word ``(a_1, ..., a_n)`` is a tuple of basis indices standing for
``sa_1 (x) ... (x) sa_n``; it has weight n and degree -n.  Linear
combinations are dicts ``word -> coefficient``.

Sign dictionary (pinned here, used everywhere):

* a p-cochain f is read as the map ``(sa_1..sa_p) -> s f(a_1..a_p)``;
* the coderivation it induces is
  ``D_f(x_1..x_n) = sum_i (-1)^{(p-1) i} (x_1..x_i, f(x_{i+1}..x_{i+p}), ..)``,
  so ``tau D_{c1} D_{c2} = c1 . c2`` with no extra signs;
* the bar differential is ``D_{-mu}``, i.e. ``d(sa, sb) = -s(ab)``.
"""
from __future__ import annotations

import itertools

from .hochschild import Cochain, bracket, gerstenhaber_product
from .signs import coextension_sign, koszul, word_degree


class TruncationTooSmall(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


def _acc(out, key, c):
    v = out.get(key, 0) + c
    if v != 0:
        out[key] = v
    else:
        out.pop(key, None)


class BarCoalgebra:
    """``W_0 + W_1 + ... + W_L`` with ``W_q = (SA)^{(x) q}``."""

    def __init__(self, algebra, weight):
        if weight < 0:
            raise ValueError("truncation weight must be nonnegative")
        self.algebra = algebra
        self.L = weight
        self.field = algebra.field

    def basis(self, q):
        if q > self.L:
            raise TruncationTooSmall(f"weight {q} exceeds truncation {self.L}")
        return list(itertools.product(range(self.algebra.dim), repeat=q))

    def words(self, max_weight=None):
        top = self.L if max_weight is None else max_weight
        for q in range(top + 1):
            yield from self.basis(q)

    def component_dim(self, q):
        return self.algebra.dim ** q

    def check_weight(self, vec):
        for w in vec:
            if len(w) > self.L:
                raise TruncationTooSmall(f"weight {len(w)} exceeds truncation {self.L}")

    def counit(self, vec):
        return vec.get((), 0)

    def tau(self, vec):
        """Projection onto ``SA`` followed by desuspension: ``(a) -> a``."""
        out = {}
        for w, c in vec.items():
            if len(w) == 1:
                _acc(out, w[0], c)
        return out

    def __repr__(self):
        return f"BarCoalgebra(dim A={self.algebra.dim}, L={self.L})"


def comultiplication(b, vec):
    """Deconcatenation ``Delta(a_1..a_p) = sum_i (a_1..a_i) (x) (a_{i+1}..a_p)``.

    Returns a dict ``(left word, right word) -> coefficient``.
    """
    if isinstance(vec, tuple):
        vec = {vec: b.field.one}
    b.check_weight(vec)
    out = {}
    for w, c in vec.items():
        for i in range(len(w) + 1):
            _acc(out, (w[:i], w[i:]), c)
    return out


def check_coassociativity(b, max_weight=None):
    """``(Delta (x) 1) Delta = (1 (x) Delta) Delta`` and the counit laws on every word."""
    one = b.field.one
    for w in b.words(max_weight):
        left, right = {}, {}
        for (x, y), c in comultiplication(b, w).items():
            for (x1, x2), c2 in comultiplication(b, x).items():
                _acc(left, (x1, x2, y), c * c2)
            for (y1, y2), c2 in comultiplication(b, y).items():
                _acc(right, (x, y1, y2), c * c2)
        if left != right:
            return False, w
        delta = comultiplication(b, w)
        if delta.get(((), w)) != one or delta.get((w, ())) != one:
            return False, w
    return True, None


# -- linear operators on the truncation -------------------------------------------

class LinOp:
    """A linear map on bar words of weight <= ``max_weight``.

    ``cols[w]`` is the image of the word ``w`` (missing means zero).
    ``degree`` is the cohomological degree when homogeneous, else None.
    """

    def __init__(self, coalg, max_weight, cols, degree=None):
        self.coalg = coalg
        self.max_weight = max_weight
        self.cols = {w: v for w, v in cols.items() if v}
        self.degree = degree

    @classmethod
    def zero(cls, coalg, degree=0):
        return cls(coalg, coalg.L, {}, degree)

    @classmethod
    def identity(cls, coalg):
        one = coalg.field.one
        return cls(coalg, coalg.L, {w: {w: one} for w in coalg.words()}, 0)

    def __call__(self, vec):
        if isinstance(vec, tuple):
            vec = {vec: self.coalg.field.one}
        out = {}
        for w, c in vec.items():
            if len(w) > self.max_weight:
                raise TruncationTooSmall(
                    f"operator defined up to weight {self.max_weight}, got {len(w)}")
            for u, d in self.cols.get(w, {}).items():
                _acc(out, u, c * d)
        return out

    def weight_raise(self):
        up = None
        for w, v in self.cols.items():
            for u in v:
                s = len(u) - len(w)
                if up is None or s > up:
                    up = s
        return up

    def compose(self, other):
        """``self o other``."""
        up = other.weight_raise()
        mw = other.max_weight
        if up is not None:
            mw = min(mw, self.max_weight - up)
        cols = {}
        for w, v in other.cols.items():
            if len(w) <= mw:
                cols[w] = self(v)
        deg = None if self.degree is None or other.degree is None else self.degree + other.degree
        return LinOp(self.coalg, mw, cols, deg)

    __matmul__ = compose

    def _lincomb(self, other, c):
        mw = min(self.max_weight, other.max_weight)
        cols = {w: dict(v) for w, v in self.cols.items() if len(w) <= mw}
        for w, v in other.cols.items():
            if len(w) > mw:
                continue
            slot = cols.setdefault(w, {})
            for u, d in v.items():
                _acc(slot, u, c * d)
        deg = self.degree if self.degree == other.degree else None
        if not self.cols:
            deg = other.degree
        elif not other.cols:
            deg = self.degree
        return LinOp(self.coalg, mw, cols, deg)

    def __add__(self, other):
        return self._lincomb(other, 1)

    def __sub__(self, other):
        return self._lincomb(other, -1)

    def scale(self, c):
        if c == 0:
            return LinOp(self.coalg, self.max_weight, {}, self.degree)
        return LinOp(self.coalg, self.max_weight,
                     {w: {u: c * d for u, d in v.items()} for w, v in self.cols.items()},
                     self.degree)

    def __neg__(self):
        return self.scale(-1)

    def restrict(self, max_weight):
        return LinOp(self.coalg, min(max_weight, self.max_weight),
                     {w: v for w, v in self.cols.items() if len(w) <= max_weight}, self.degree)

    def is_zero(self):
        return not self.cols

    def __eq__(self, other):
        if not isinstance(other, LinOp):
            return NotImplemented
        mw = min(self.max_weight, other.max_weight)
        a = {w: v for w, v in self.cols.items() if len(w) <= mw}
        b = {w: v for w, v in other.cols.items() if len(w) <= mw}
        return a == b

    __hash__ = object.__hash__

    def difference_witness(self, other):
        mw = min(self.max_weight, other.max_weight)
        for w in sorted(set(self.cols) | set(other.cols)):
            if len(w) <= mw and self.cols.get(w, {}) != other.cols.get(w, {}):
                return w
        return None

    def __repr__(self):
        return f"LinOp(max_weight={self.max_weight}, degree={self.degree}, nnz_cols={len(self.cols)})"


# -- coderivations ----------------------------------------------------------------

def _coextend(coalg, f, max_weight):
    """Columns of the coderivation induced by a single p-cochain ``f``."""
    p = f.degree
    cols = {}
    for w in coalg.words(max_weight):
        n = len(w)
        if n < p:
            continue
        out = {}
        for i in range(n - p + 1):
            val = f.values.get(w[i:i + p])
            if not val:
                continue
            sgn = coextension_sign(p, i)
            pre, post = w[:i], w[i + p:]
            for k, c in val.items():
                _acc(out, pre + (k,) + post, sgn * c)
        if out:
            cols[w] = out
    return cols


class Coderivation:
    """A coderivation of the truncated bar coalgebra with its corestriction family.

    ``family`` maps p to a p-cochain; the operator is the sum of the
    coextensions.  The operator is only trusted on words whose image stays
    within the truncation, which ``op.max_weight`` records.
    """

    def __init__(self, coalg, family, op=None):
        self.coalg = coalg
        self.family = {p: f for p, f in family.items() if not f.is_zero()}
        if op is None:
            op = LinOp.zero(coalg, self.degree if self.degree is not None else 0)
            for p, f in sorted(self.family.items()):
                mw = min(coalg.L, coalg.L + p - 1)
                op = op + LinOp(coalg, mw, _coextend(coalg, f, mw), p - 1)
            if not self.family:
                op = LinOp.zero(coalg, 0)
        self.op = op

    @property
    def degree(self):
        ps = set(self.family)
        if len(ps) == 1:
            return ps.pop() - 1
        return None if ps else 0

    def __call__(self, vec):
        return self.op(vec)

    def __repr__(self):
        return f"Coderivation(components={sorted(self.family)}, {self.op!r})"


def coder_from_cochains(coalg, family):
    """``family``: a Cochain, or a dict ``p -> Cochain``."""
    if isinstance(family, Cochain):
        family = {family.degree: family}
    for p, f in family.items():
        if f.degree != p:
            raise ValueError("family key does not match cochain degree")
    return Coderivation(coalg, dict(family))


def corestriction(coalg, op, max_weight=None):
    """``tau o op`` as a family ``q -> q-cochain`` over weights <= max_weight."""
    A = coalg.algebra
    top = op.max_weight if max_weight is None else min(max_weight, op.max_weight)
    fam = {}
    for q in range(top + 1):
        vals = {}
        for w in coalg.basis(q):
            v = coalg.tau(op.cols.get(w, {}))
            if v:
                vals[w] = v
        if vals:
            fam[q] = Cochain(A, q, vals)
    return fam


def cochains_from_coder(D):
    return corestriction(D.coalg, D.op)


def bar_differential(coalg):
    """The coderivation ``D_{-mu}``; ``d(sa, sb) = -s(ab)``."""
    mu = Cochain.multiplication(coalg.algebra)
    return coder_from_cochains(coalg, {2: -mu})


def bar_differential_square_witness(coalg):
    """First word on which ``d o d`` is nonzero, or None."""
    d = bar_differential(coalg).op
    dd = d.compose(d)
    for w in sorted(dd.cols):
        return w
    return None


def supercommutator(op1, op2, deg1, deg2):
    return op1.compose(op2) - op2.compose(op1).scale(koszul(deg1, deg2))


def coder_bracket(D1, D2):
    """``D1 D2 - (-1)^{|D1||D2|} D2 D1``."""
    d1, d2 = D1.degree, D2.degree
    if d1 is None or d2 is None:
        raise DegreeMismatch("bracket needs homogeneous coderivations")
    op = supercommutator(D1.op, D2.op, d1, d2)
    op.degree = d1 + d2
    return Coderivation(D1.coalg, corestriction(D1.coalg, op), op)


def is_coderivation(coalg, op, degree):
    """Koszul co-Leibniz ``Delta D = (D (x) 1 + 1 (x) D) Delta`` and ``counit D = 0``."""
    for w in coalg.words(op.max_weight):
        img = op(w)
        if img.get(()):
            return False, w
        lhs = comultiplication(coalg, img)
        rhs = {}
        for (x, y), c in comultiplication(coalg, w).items():
            for u, d in op(x).items():
                _acc(rhs, (u, y), c * d)
            s = koszul(degree, word_degree(x))
            for u, d in op(y).items():
                _acc(rhs, (x, u), s * c * d)
        if lhs != rhs:
            return False, w
    return True, None


def stasheff_transport_check(coalg, c1, c2, return_witness=False):
    """``[D_{c1}, D_{c2}] = D_{[c1, c2]}`` on every word where both sides are defined.

    The corestriction weight ``p + q - 1`` must fit in the truncation.
    """
    p, q = c1.degree, c2.degree
    if p + q - 1 > coalg.L or max(p, q) > coalg.L:
        raise TruncationTooSmall(f"need L >= {max(p + q - 1, p, q)}, have {coalg.L}")
    D1 = coder_from_cochains(coalg, {p: c1})
    D2 = coder_from_cochains(coalg, {q: c2})
    lhs = supercommutator(D1.op, D2.op, p - 1, q - 1)
    br = bracket(c1, c2)
    rhs = coder_from_cochains(coalg, {br.degree: br}).op if br.degree >= 0 else LinOp.zero(coalg)
    ok = True
    witness = None
    # corestriction: tau o [D1, D2] equals the Gerstenhaber bracket
    tau_lhs = corestriction(coalg, lhs).get(p + q - 1)
    if br.degree >= 0 and (tau_lhs or Cochain.zero(c1.algebra, br.degree)) != br:
        ok, witness = False, ("corestriction", p, q)
    w = lhs.difference_witness(rhs)
    if ok and w is not None:
        ok, witness = False, ("operator", w)
    return (ok, witness) if return_witness else ok


def composition_transport_check(coalg, c1, c2):
    """``tau o D_{c1} o D_{c2} = c1 . c2`` on weight ``p + q - 1``."""
    p, q = c1.degree, c2.degree
    D1 = coder_from_cochains(coalg, {p: c1})
    D2 = coder_from_cochains(coalg, {q: c2})
    got = corestriction(coalg, D1.op.compose(D2.op)).get(p + q - 1)
    want = gerstenhaber_product(c1, c2)
    return (got or Cochain.zero(c1.algebra, p + q - 1)) == want


# -- nilpotent coefficient rings ---------------------------------------------------

class NilpotentRing:
    """``k + m`` with a graded basis of ``m`` and a graded-commutative product.

    ``names[i]`` has degree ``degrees[i]``; ``table[(i, j)] = (k, c)`` means
    ``m_i m_j = c m_k``; missing pairs multiply to zero.
    """

    def __init__(self, field, names, degrees, table):
        self.field = field
        self.names = list(names)
        self.degrees = list(degrees)
        self.table = dict(table)
        self._check()

    def _check(self):
        n = len(self.names)
        for (i, j), (k, c) in self.table.items():
            if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                raise ValueError("product does not respect the grading")
            back = self.table.get((j, i))
            want = koszul(self.degrees[i], self.degrees[j]) * c
            if back is None or back[0] != k or back[1] != want:
                raise ValueError("product is not graded commutative")
        # nilpotency: products of length n+1 vanish
        mons = {(i,): 1 for i in range(n)}
        for _ in range(n):
            nxt = {}
            for m in mons:
                for j in range(n):
                    if self.mul(m[0], j) is not None:
                        nxt[(self.mul(m[0], j)[0],)] = 1
            mons = nxt
        if mons:
            raise ValueError("maximal ideal is not nilpotent")

    def mul(self, i, j):
        return self.table.get((i, j))

    def index(self, name):
        return self.names.index(name)

    @classmethod
    def dual_numbers(cls, field, degree=0, name="e"):
        """``k[e]/(e^2)`` with ``|e| = degree``."""
        return cls(field, [name], [degree], {})

    @classmethod
    def two_parameter(cls, field, d1=0, d2=0):
        """``k[e1, e2]/(e1^2, e2^2)``; basis of m is e1, e2, e1e2."""
        s = koszul(d1, d2)
        return cls(field, ["e1", "e2", "e1e2"], [d1, d2, d1 + d2],
                   {(0, 1): (2, field.one), (1, 0): (2, field.one * s)})

    def __repr__(self):
        return f"NilpotentRing({list(zip(self.names, self.degrees))})"


class CoalgAutomorphism:
    """``phi = 1 + sum_m m D_m`` on ``C+ (x) R``, coefficients written on the left.

    ``parts[m]`` is the LinOp ``D_m``; R-linearity means ``phi(r x) = r phi(x)``.
    """

    def __init__(self, coalg, ring, parts):
        self.coalg = coalg
        self.ring = ring
        self.parts = {m: op for m, op in parts.items() if not op.is_zero()}
        for m, op in self.parts.items():
            if op.degree is not None and op.degree != -ring.degrees[m]:
                raise DegreeMismatch(
                    f"part {ring.names[m]} has degree {op.degree}, expected {-ring.degrees[m]}")

    @classmethod
    def identity(cls, coalg, ring):
        return cls(coalg, ring, {})

    @property
    def max_weight(self):
        return min([op.max_weight for op in self.parts.values()] + [self.coalg.L])

    def compose(self, other):
        """``self o other``: ``(1 + sum m D_m)(1 + sum n E_n) = 1 + D + E + sum (n m) D_m E_n``."""
        parts = _add_parts(self.parts, other.parts)
        for (m, D), (n, E) in itertools.product(self.parts.items(), other.parts.items()):
            prod = self.ring.mul(n, m)
            if prod is None:
                continue
            k, c = prod
            term = D.compose(E).scale(c)
            parts[k] = parts[k] + term if k in parts else term
        return CoalgAutomorphism(self.coalg, self.ring, parts)

    __matmul__ = compose

    def inverse(self):
        # (1 + N)^{-1} = sum (-N)^k, finite by nilpotency
        neg = CoalgAutomorphism(self.coalg, self.ring,
                                {m: op.scale(-1) for m, op in self.parts.items()})
        result = CoalgAutomorphism.identity(self.coalg, self.ring)
        power = CoalgAutomorphism.identity(self.coalg, self.ring)
        for _ in range(len(self.ring.names) + 1):
            power = _nilpart_product(power, neg) if power.parts else neg
            if not power.parts:
                break
            result = CoalgAutomorphism(self.coalg, self.ring, _add_parts(result.parts, power.parts))
        return result

    def is_identity(self):
        return not self.parts

    def __eq__(self, other):
        if not isinstance(other, CoalgAutomorphism):
            return NotImplemented
        keys = set(self.parts) | set(other.parts)
        for k in keys:
            a = self.parts.get(k, LinOp.zero(self.coalg))
            b = other.parts.get(k, LinOp.zero(self.coalg))
            mw = min(a.max_weight if k in self.parts else other.coalg.L,
                     b.max_weight if k in other.parts else self.coalg.L)
            if a.restrict(mw).cols != b.restrict(mw).cols:
                return False
        return True

    __hash__ = object.__hash__

    def apply(self, vec):
        """Returns ``{None: x, m: D_m x}`` for a coefficient-free input."""
        out = {None: dict(vec)}
        for m, op in self.parts.items():
            v = op(vec)
            if v:
                out[m] = v
        return out

    def is_counital(self):
        for op in self.parts.values():
            for v in op.cols.values():
                if v.get(()):
                    return False
        return True

    def is_comultiplicative(self):
        """``Delta phi = (phi (x) phi) Delta`` over R, on weights <= max_weight."""
        R = self.ring
        ident = LinOp.identity(self.coalg)
        ops = {None: ident}
        ops.update(self.parts)

        def deg(m):
            return 0 if m is None else R.degrees[m]

        def rmul(a, b):
            if a is None:
                return (b, 1)
            if b is None:
                return (a, 1)
            return R.mul(a, b)

        for w in self.coalg.words(self.max_weight):
            lhs = {}
            for m, op in ops.items():
                for (x, y), c in comultiplication(self.coalg, op(w)).items():
                    _acc(lhs, (m, x, y), c)
            rhs = {}
            for (x, y), c in comultiplication(self.coalg, w).items():
                for (m, A), (n, B) in itertools.product(ops.items(), ops.items()):
                    prod = rmul(m, n)
                    if prod is None:
                        continue
                    k, pc = prod
                    ax, by = A(x), B(y)
                    # m A x (x) n B y = (-1)^{|n| |A x|} m n (A x (x) B y)
                    for u, d1 in ax.items():
                        s = koszul(deg(n), word_degree(u))
                        for v, d2 in by.items():
                            _acc(rhs, (k, u, v), s * pc * c * d1 * d2)
            if lhs != rhs:
                return False
        return True

    def __repr__(self):
        names = [self.ring.names[m] for m in sorted(self.parts)]
        return f"CoalgAutomorphism(parts={names})"


def _add_parts(a, b):
    out = dict(a)
    for k, op in b.items():
        out[k] = out[k] + op if k in out else op
    return {k: v for k, v in out.items() if not v.is_zero()}


def _nilpart_product(phi, psi):
    """The ``N_phi N_psi`` part of a composition."""
    parts = {}
    for (m, D), (n, E) in itertools.product(phi.parts.items(), psi.parts.items()):
        prod = phi.ring.mul(n, m)
        if prod is None:
            continue
        k, c = prod
        term = D.compose(E).scale(c)
        parts[k] = parts[k] + term if k in parts else term
    return CoalgAutomorphism(phi.coalg, phi.ring, parts)


def automorphism_from_coderivation(D, ring, generator=0):
    """``1 + e D`` for the generator ``e`` of ``ring``."""
    op = D.op if isinstance(D, Coderivation) else D
    if op.degree is not None and op.degree != -ring.degrees[generator]:
        raise DegreeMismatch(
            f"coderivation of degree {op.degree} needs a parameter of degree {-op.degree}")
    return CoalgAutomorphism(D.coalg if isinstance(D, Coderivation) else op.coalg, ring,
                             {generator: op})


def commutator(phi, psi):
    """``phi psi phi^{-1} psi^{-1}``."""
    return phi.compose(psi).compose(phi.inverse()).compose(psi.inverse())


def expected_commutator(D1, D2, ring):
    """``1 + e2 e1 [D1, D2]`` on ``k[e1,e2]/(e1^2,e2^2)``, with e2 e1 = (-1)^{|e1||e2|} e1 e2."""
    d1, d2 = D1.op.degree, D2.op.degree
    br = supercommutator(D1.op, D2.op, d1, d2)
    k, c = ring.mul(1, 0)
    br = br.scale(c)
    br.degree = d1 + d2
    return CoalgAutomorphism(D1.coalg, ring, {k: br})
