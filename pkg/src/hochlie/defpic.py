"""
Deformations of the diagonal bimodule over nilpotent coefficient rings.

Everything lives on the bar resolution ``P = A (x)_tau C+ (x)_tau A``
(keys ``(a, w, b)``, degree ``-len(w)``).  A deformation over
``R = k + m`` is ``R (x) P`` with differential
``d_L = d_P + sum_m m D_m`` where each ``D_m`` is a bimodule map of degree
``1 - |m|``; coefficients are written on the left and
``d_L(r x) = (-1)^{|r|} r d_L(x)``.

Bimodule maps are stored through their values on the free generators
``1 (x) w (x) 1``.

Sign constants (measured, then held fixed by the tests):

* ``ROUTE_SIGN``: ``phi_extract(x_of_automorphism(1 + e D_f)) = ROUTE_SIGN [f]``.
* ``BRACKET_SIGN``: the class read off the commutator of ``1 + e1 D_f`` and
  ``1 + e2 D_g`` equals ``BRACKET_SIGN`` times the opposite bracket
  ``[g, f] = -(-1)^{(p-1)(q-1)} [f, g]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .barcoalg import (BarCoalgebra, CoalgAutomorphism, DegreeMismatch, LinOp, NilpotentRing,
                       TruncationTooSmall, automorphism_from_coderivation, bar_differential,
                       coder_from_cochains, commutator)
from .complexes import (BoundedComplex, ChainMap, bar_differential_on, bar_resolution,
                        contracting_homotopy, quasi_iso_check)
from .hochschild import (FULL, Cochain, NotACocycle, bracket, class_of, differential, hh_space)
from .signs import koszul, parity_sign, word_degree

ROUTE_SIGN = -1
BRACKET_SIGN = 1


def _acc(out, key, c):
    v = out.get(key, 0) + c
    if v != 0:
        out[key] = v
    else:
        out.pop(key, None)


def _addvec(out, vec, c=1):
    for k, v in vec.items():
        _acc(out, k, c * v)


class BarModel:
    """Shared data for one algebra and truncation weight: words, d_P and the homotopy."""

    def __init__(self, algebra, L):
        self.algebra = algebra
        self.L = L
        self.coalg = BarCoalgebra(algebra, L)
        self.dC = bar_differential(self.coalg).op
        self.field = algebra.field

    def generator(self, w):
        """``1 (x) w (x) 1`` as a sparse vector."""
        u = self.algebra.unit
        return {(a, w, b): ca * cb for a, ca in u.items() for b, cb in u.items()}

    def d(self, vec):
        out = {}
        A = self.algebra
        for key, c in vec.items():
            if len(key[1]) == 0:
                continue
            _addvec(out, bar_differential_on(A, self.dC, key), c)
        return out

    def h(self, vec):
        out = {}
        for key, c in vec.items():
            if len(key[1]) >= self.L:
                raise TruncationTooSmall("contracting homotopy leaves the truncation")
            _addvec(out, contracting_homotopy(self.algebra, key), c)
        return out

    def aug(self, vec):
        out = {}
        A = self.algebra
        for (a, w, b), c in vec.items():
            if not w:
                _addvec(out, A.mult[a][b], c)
        return out

    def words(self, q):
        return self.coalg.basis(q)

    def sandwich(self, a, vec, b):
        """``a . vec . b`` for basis elements ``a, b`` acting on the outer factors."""
        A = self.algebra
        out = {}
        for (x, w, y), c in vec.items():
            for x2, c1 in A.mult[a][x].items():
                for y2, c2 in A.mult[y][b].items():
                    _acc(out, (x2, w, y2), c * c1 * c2)
        return out


class BimodMap:
    """A bimodule map ``P -> P`` of cohomological degree ``degree``.

    ``gens[w]`` is the image of ``1 (x) w (x) 1``.  It is defined on
    generators of weight ``<= max_weight``.
    """

    def __init__(self, model, degree, gens, max_weight=None):
        self.model = model
        self.degree = degree
        self.gens = {w: v for w, v in gens.items() if v}
        self.max_weight = model.L if max_weight is None else max_weight

    def apply(self, vec):
        out = {}
        A = self.model.algebra
        for (a, w, b), c in vec.items():
            if len(w) > self.max_weight:
                raise TruncationTooSmall(f"map defined up to weight {self.max_weight}")
            img = self.gens.get(w)
            if img:
                _addvec(out, self.model.sandwich(a, img, b), c)
        return out

    def compose(self, other):
        mw = min(other.max_weight, self.max_weight + other.degree)
        gens = {}
        for q in range(mw + 1):
            for w in self.model.words(q):
                img = other.gens.get(w)
                if img:
                    gens[w] = self.apply(img)
        return BimodMap(self.model, self.degree + other.degree, gens, mw)

    def _lincomb(self, other, c):
        if self.degree != other.degree and self.gens and other.gens:
            raise DegreeMismatch("adding maps of different degree")
        mw = min(self.max_weight, other.max_weight)
        gens = {w: dict(v) for w, v in self.gens.items() if len(w) <= mw}
        for w, v in other.gens.items():
            if len(w) <= mw:
                slot = gens.setdefault(w, {})
                _addvec(slot, v, c)
        deg = self.degree if self.gens else other.degree
        return BimodMap(self.model, deg, gens, mw)

    def __add__(self, other):
        return self._lincomb(other, 1)

    def __sub__(self, other):
        return self._lincomb(other, -1)

    def scale(self, c):
        return BimodMap(self.model, self.degree,
                        {w: {k: c * v for k, v in img.items()} for w, img in self.gens.items()},
                        self.max_weight)

    def is_zero(self):
        return not self.gens

    def __eq__(self, other):
        mw = min(self.max_weight, other.max_weight)
        return ({w: v for w, v in self.gens.items() if len(w) <= mw}
                == {w: v for w, v in other.gens.items() if len(w) <= mw})

    __hash__ = object.__hash__


def d_map(model):
    """``d_P`` as a bimodule map of degree 1."""
    gens = {}
    for q in range(1, model.L + 1):
        for w in model.words(q):
            gens[w] = model.d(model.generator(w))
    return BimodMap(model, 1, gens)


def _graded_commutator_with_d(model, F, sign):
    """``F d - sign d F`` on generators."""
    dm = d_map(model)
    return F.compose(dm) - dm.compose(F).scale(sign)


# -- deformations -----------------------------------------------------------------

class Deformation:
    """``R (x) P`` with ``d_L = d_P + sum_m m D_m``.

    ``parts[m]`` is the BimodMap ``D_m``.  The reduction ``L (x)_R k`` is
    ``P`` itself, and the canonical identification with A is the
    augmentation of ``P``.
    """

    def __init__(self, model, ring, parts, check=True):
        self.model = model
        self.ring = ring
        self.parts = {m: F for m, F in parts.items() if not F.is_zero()}
        for m, F in self.parts.items():
            if F.degree != 1 - ring.degrees[m]:
                raise DegreeMismatch(f"part {ring.names[m]} has degree {F.degree}")
        if check:
            w = self.d_squared_witness()
            if w is not None:
                raise ValueError(f"d_L^2 != 0 on generator {w!r}")

    @property
    def algebra(self):
        return self.model.algebra

    @property
    def max_weight(self):
        return min([F.max_weight for F in self.parts.values()] + [self.model.L])

    def d_L(self, vec):
        """``d_L`` on a dict ``(mono, key) -> coeff`` (``mono`` None for 1)."""
        R = self.ring
        out = {}
        for (n, key), c in vec.items():
            s = 1 if n is None else parity_sign(R.degrees[n])
            x = {key: c * s}
            for k2, v in self.model.d(x).items():
                _acc(out, (n, k2), v)
            for m, F in self.parts.items():
                prod = (m, 1) if n is None else R.mul(n, m)
                if prod is None:
                    continue
                k, pc = prod
                for k2, v in F.apply(x).items():
                    _acc(out, (k, k2), pc * v)
        return out

    def d_squared_witness(self, max_weight=None):
        top = self.max_weight if max_weight is None else min(max_weight, self.max_weight)
        for q in range(top + 1):
            for w in self.model.words(q):
                x = {(None, k): c for k, c in self.model.generator(w).items()}
                if self.d_L(self.d_L(x)):
                    return w
        return None

    def to_complex(self, max_weight=None):
        """The underlying k-complex with keys ``(mono, (a, w, b))``."""
        R = self.ring
        top = self.max_weight if max_weight is None else min(max_weight, self.max_weight)
        monos = [None] + list(range(len(R.names)))
        n = self.algebra.dim
        bases = {}
        for q in range(top + 1):
            for w in self.model.words(q):
                for mono in monos:
                    deg = (0 if mono is None else R.degrees[mono]) - q
                    bases.setdefault(deg, []).extend(
                        (mono, (a, w, b)) for a in range(n) for b in range(n))

        def dfun(p, key):
            return {k: v for k, v in self.d_L({key: self.model.field.one}).items()
                    if len(k[1][1]) <= top}

        return BoundedComplex(self.model.field, bases, dfun, name="deformation")

    def reduction(self):
        """``(P, u)``: the reduction mod m and its augmentation quasi-isomorphism."""
        return bar_resolution(self.algebra, self.model.L, check=False)

    def extract_cochain(self, mono):
        """``w -> aug(D_m(1 (x) w (x) 1))`` on weight ``1 - |m|``."""
        F = self.parts.get(mono)
        p = 1 - self.ring.degrees[mono]
        A = self.algebra
        if p < 0:
            raise ValueError("parameter degree too large for a cochain")
        if p > self.max_weight:
            raise TruncationTooSmall(f"need weight {p}, have {self.max_weight}")
        vals = {}
        if F is not None:
            for w in self.model.words(p):
                v = self.model.aug(F.apply(self.model.generator(w)))
                if v:
                    vals[w] = v
        return Cochain(A, p, vals)

    def rebase(self, mono, H):
        """Conjugate by ``theta = 1 + m H`` (H of degree ``-|m|``): block becomes ``D + H d - (-1)^{|m|} d H``."""
        s = parity_sign(self.ring.degrees[mono])
        corr = _graded_commutator_with_d(self.model, H, s)
        parts = dict(self.parts)
        parts[mono] = parts[mono] + corr if mono in parts else corr
        return Deformation(self.model, self.ring, parts)


@dataclass
class DefClass:
    algebra: object
    eps_degree: int
    hh_class: object

    @property
    def coords(self):
        return self.hh_class.coords

    def is_zero(self):
        return self.hh_class.is_zero()


def trivial_deformation(model, ring):
    return Deformation(model, ring, {})


def lift_cocycle(model, f):
    """The bimodule map ``f^ : P -> P`` of degree p with ``f^ d = (-1)^p d f^``.

    On weight p generators ``f^(1 w 1) = f(w) (x) () (x) 1``; above that
    ``f^(g) = h((-1)^p f^(d g))``.
    """
    p = f.degree
    s = parity_sign(p)
    A = model.algebra
    gens = {}
    F = BimodMap(model, p, {})
    for w in model.words(p) if p <= model.L else []:
        val = f.values.get(w)
        if val:
            gens[w] = {(k, (), u): c * cu for k, c in val.items() for u, cu in A.unit.items()}
    F.gens = dict(gens)
    for q in range(p + 1, model.L + 1):
        for w in model.words(q):
            img = F.apply(model.d(model.generator(w)))
            if img:
                v = model.h({k: s * c for k, c in img.items()})
                if v:
                    F.gens[w] = v
    return F


def psi_build(f, eps_degree=None, L=None, model=None, ring=None):
    """Deformation with off-diagonal block the lift of the cocycle ``f``."""
    p = f.degree
    e = 1 - p if eps_degree is None else eps_degree
    if e != 1 - p:
        raise DegreeMismatch(f"a {p}-cocycle needs a parameter of degree {1 - p}")
    if not differential(f).is_zero():
        raise NotACocycle("psi_build needs a cocycle")
    if model is None:
        L = p + 2 if L is None else L
        if p + 2 > L:
            raise TruncationTooSmall(f"need L >= {p + 2}")
        model = BarModel(f.algebra, L)
    elif p + 2 > model.L:
        raise TruncationTooSmall(f"need L >= {p + 2}")
    ring = ring or NilpotentRing.dual_numbers(f.algebra.field, e)
    return Deformation(model, ring, {0: lift_cocycle(model, f)})


def phi_extract(defo, mono=0):
    c = defo.extract_cochain(mono)
    sp = hh_space(defo.algebra, c.degree, FULL)
    return DefClass(defo.algebra, defo.ring.degrees[mono], class_of(c, sp))


def coboundary_isomorphism(model, g, eps_degree=None):
    """``H`` with ``f^ = H d - (-1)^{|e|} d H`` for ``f = dg``; ``v = 1 + e H`` is then an iso
    from the trivial deformation to ``psi_build(dg)``.
    """
    p = g.degree + 1
    e = 1 - p if eps_degree is None else eps_degree
    s = parity_sign(e)
    A = model.algebra
    F = lift_cocycle(model, differential(g))
    H = BimodMap(model, p - 1, {})
    if g.degree <= model.L:
        for w in model.words(g.degree):
            val = g.values.get(w)
            if val:
                H.gens[w] = {(k, (), u): c * cu for k, c in val.items() for u, cu in A.unit.items()}
    # d H(x) = s (H d x - F x), solved with the contracting homotopy
    for q in range(g.degree + 1, model.L + 1):
        for w in model.words(q):
            x = model.generator(w)
            rhs = H.apply(model.d(x))
            _addvec(rhs, F.apply(x), -1)
            v = model.h({k: s * c for k, c in rhs.items()}) if rhs else {}
            if v:
                H.gens[w] = v
    return H, F


def check_isomorphism(model, H, F, eps_degree):
    """``d_{Psi(f)} (1 + e H) = (1 + e H) d_triv``, i.e. ``F = H d - (-1)^{|e|} d H``."""
    s = parity_sign(eps_degree)
    return _graded_commutator_with_d(model, H, s) == F


# -- cochains versus bimodule maps to A ------------------------------------------------

@dataclass
class BarCochainMap:
    """A bimodule map ``P^{-p} -> A`` stored on generators."""

    algebra: object
    degree: int
    gens: dict

    def on(self, model, vec):
        A = self.algebra
        out = {}
        for (a, w, b), c in vec.items():
            if len(w) != self.degree:
                continue
            img = self.gens.get(w)
            if not img:
                continue
            left = {}
            for i, x in img.items():
                _addvec(left, A.mult[a][i], x)
            for i, x in left.items():
                _addvec(out, A.mult[i][b], c * x)
        return out

    def compose_d(self, model):
        """``g o d_P`` as a BarCochainMap of degree p + 1."""
        gens = {}
        if self.degree + 1 <= model.L:
            for w in model.words(self.degree + 1):
                v = self.on(model, model.d(model.generator(w)))
                if v:
                    gens[w] = v
        return BarCochainMap(self.algebra, self.degree + 1, gens)

    def is_chain_map(self, model):
        return not self.compose_d(model).gens


def barmap_from_cocycle(f):
    return BarCochainMap(f.algebra, f.degree, {w: dict(v) for w, v in f.values.items()})


def cocycle_from_barmap(g, model=None):
    """Restriction to weight p generators ``1 (x) w (x) 1``."""
    if model is None:
        return Cochain(g.algebra, g.degree, {w: dict(v) for w, v in g.gens.items()})
    vals = {}
    for w in model.words(g.degree):
        v = g.on(model, model.generator(w))
        if v:
            vals[w] = v
    return Cochain(g.algebra, g.degree, vals)


def augmentation_barmap(A):
    """The augmentation as the degree-0 bar map: ``1 (x) () (x) 1 -> 1``."""
    return BarCochainMap(A, 0, {(): dict(A.unit)})


# -- X(phi) ---------------------------------------------------------------------------

def _tau_of(op, word):
    """``tau(op(word))``; the weight-1 part of the image."""
    out = {}
    for u, c in op(word).items():
        if len(u) == 1:
            _acc(out, u[0], c)
    return out


class InvalidAutomorphism(ValueError):
    pass


def dg_commutation_witness(phi):
    """First word where ``D_m d_C != (-1)^{|m|} d_C D_m`` for some part."""
    dC = bar_differential(phi.coalg).op
    for m, op in phi.parts.items():
        s = parity_sign(phi.ring.degrees[m])
        lhs = op.compose(dC)
        rhs = dC.compose(op).scale(s)
        w = lhs.difference_witness(rhs)
        if w is not None:
            return (m, w)
    return None


def x_of_automorphism(phi, model=None, validate=True):
    """``X(phi) = A (x)_tau C+_phi (x)_tau A`` as a Deformation.

    The right twist uses ``(1 (x) phi) Delta``; the extra part for ``m`` is
    ``a (x) w (x) b -> -sum (-1)^{(|m|+1)|w_(1)|} a (x) w_(1) (x) tau(phi_m(w_(2))) b``.
    """
    if validate:
        if not phi.is_counital():
            raise InvalidAutomorphism("automorphism is not counital")
        w = dg_commutation_witness(phi)
        if w is not None:
            raise InvalidAutomorphism(f"automorphism does not commute with d_C at {w!r}")
    A = phi.coalg.algebra
    if model is None:
        model = BarModel(A, phi.coalg.L)
    R = phi.ring
    parts = {}
    top = min(phi.max_weight, model.L)
    for m, op in phi.parts.items():
        e = R.degrees[m]
        gens = {}
        for q in range(top + 1):
            for w in model.words(q):
                out = {}
                for i in range(q + 1):
                    x1, x2 = w[:i], w[i:]
                    t = _tau_of(op, x2)
                    if not t:
                        continue
                    s = -koszul(e + 1, word_degree(x1))
                    for k, c in t.items():
                        for a, ca in A.unit.items():
                            _acc(out, (a, x1, k), s * c * ca)
                if out:
                    gens[w] = out
        parts[m] = BimodMap(model, 1 - e, gens, top)
    return Deformation(model, R, parts)


# -- the comparison map X(psi phi) -> X(phi) (x)_A X(psi) ------------------------------

def _xphi_terms(model, phi, key):
    """``d_{X(phi)}`` of ``a (x) w (x) b`` as ``{(mono, key): coeff}``."""
    out = {}
    for k2, v in model.d({key: model.field.one}).items():
        _acc(out, (None, k2), v)
    if phi is None:
        return out
    A = model.algebra
    a, w, b = key
    for m, op in phi.parts.items():
        e = phi.ring.degrees[m]
        for i in range(len(w) + 1):
            x1, x2 = w[:i], w[i:]
            t = _tau_of(op, x2)
            if not t:
                continue
            s = -koszul(e + 1, word_degree(x1))
            for k, c in t.items():
                for k2, c2 in A.mult[k][b].items():
                    _acc(out, (m, (a, x1, k2)), s * c * c2)
    return out


def double_complex(model, phi, psi, ring, L=None):
    """``X(phi) (x)_A X(psi)`` with keys ``(mono, (a, w, mid, w2, b))``, total weight <= L."""
    A = model.algebra
    top = model.L if L is None else L
    n = A.dim
    monos = [None] + list(range(len(ring.names)))
    bases = {}
    for q in range(top + 1):
        for q1 in range(q + 1):
            for w1 in model.words(q1):
                for w2 in model.words(q - q1):
                    for mono in monos:
                        deg = (0 if mono is None else ring.degrees[mono]) - q
                        bases.setdefault(deg, []).extend(
                            (mono, (a, w1, mid, w2, b))
                            for a in range(n) for mid in range(n) for b in range(n))

    def rmul(n_, m):
        if n_ is None:
            return (m, 1)
        if m is None:
            return (n_, 1)
        return ring.mul(n_, m)

    def dfun(t, key):
        mono, (a, w1, mid, w2, b) = key
        s0 = 1 if mono is None else parity_sign(ring.degrees[mono])
        out = {}
        # d_phi on the left factor a (x) w1 (x) mid
        for (m, (a2, u, mid2)), c in _xphi_terms(model, phi, (a, w1, mid)).items():
            pr = rmul(mono, m)
            if pr is None:
                continue
            _acc(out, (pr[0], (a2, u, mid2, w2, b)), s0 * pr[1] * c)
        # (-1)^{|x|} x (x) d_psi(1 (x) w2 (x) b), moving m past x
        sx = parity_sign(word_degree(w1))
        for u0, cu in A.unit.items():
            for (m, (a3, u, b3)), c in _xphi_terms(model, psi, (u0, w2, b)).items():
                pr = rmul(mono, m)
                if pr is None:
                    continue
                sm = 1 if m is None else koszul(ring.degrees[m], word_degree(w1))
                for mid2, c3 in A.mult[mid][a3].items():
                    _acc(out, (pr[0], (a, w1, mid2, u, b3)), s0 * sx * sm * pr[1] * cu * c * c3)
        return out

    return BoundedComplex(model.field, bases, dfun, name="X(phi) (x)_A X(psi)")


def x_complex(model, phi, ring, L=None):
    """``X(phi)`` as a k-complex with keys ``(mono, (a, w, b))``."""
    A = model.algebra
    top = model.L if L is None else L
    n = A.dim
    monos = [None] + list(range(len(ring.names)))
    bases = {}
    for q in range(top + 1):
        for w in model.words(q):
            for mono in monos:
                deg = (0 if mono is None else ring.degrees[mono]) - q
                bases.setdefault(deg, []).extend(
                    (mono, (a, w, b)) for a in range(n) for b in range(n))

    def dfun(t, key):
        mono, k = key
        s0 = 1 if mono is None else parity_sign(ring.degrees[mono])
        out = {}
        for (m, k2), c in _xphi_terms(model, phi, k).items():
            if mono is None:
                pr = (m, 1)
            elif m is None:
                pr = (mono, 1)
            else:
                pr = ring.mul(mono, m)
            if pr is None:
                continue
            _acc(out, (pr[0], k2), s0 * pr[1] * c)
        return out

    return BoundedComplex(model.field, bases, dfun, name="X(phi)")


def group_hom_map(phi, psi, L=None, check=True):
    """Chain map ``X(psi phi) -> X(phi) (x)_A X(psi)``, ``c -> sum c_(1) (x) 1 (x) phi(c_(2))``.

    ``phi`` and ``psi`` are CoalgAutomorphisms over the same ring (or None
    for the identity together with ``L`` and a ring passed via ``psi``).
    Source and target are truncated at weight ``L``; a word whose image
    under phi would leave the truncation is dropped from the source.
    """
    ring = phi.ring
    coalg = phi.coalg
    A = coalg.algebra
    top = coalg.L if L is None else L
    model = BarModel(A, top)
    comp = psi.compose(phi)
    src = x_complex(model, comp, ring, top)
    tgt = double_complex(model, phi, psi, ring, top)
    ident = LinOp.identity(coalg)
    ops = [(None, ident)] + list(phi.parts.items())

    def rmul(n_, m):
        if n_ is None:
            return (m, 1)
        if m is None:
            return (n_, 1)
        return ring.mul(n_, m)

    def f(t, key):
        mono, (a, w, b) = key
        out = {}
        for i in range(len(w) + 1):
            c1, c2 = w[:i], w[i:]
            for m, op in ops:
                pr = rmul(mono, m)
                if pr is None:
                    continue
                s = 1 if m is None else koszul(ring.degrees[m], word_degree(c1))
                for u, c in op(c2).items():
                    if len(c1) + len(u) > top:
                        continue
                    for one, cu in A.unit.items():
                        _acc(out, (pr[0], (a, c1, one, u, b)), s * pr[1] * c * cu)
        return out

    return ChainMap(src, tgt, f, check=check)


def reduce_map(F):
    """Restrict a map between R-extended complexes to the coefficient-1 part (mod m)."""
    def keep(bases):
        return {p: [k for k in b if k[0] is None] for p, b in bases.items()}

    def dfun_s(p, k):
        return {k2: v for k2, v in F.source._dfun(p, k).items() if k2[0] is None}

    def dfun_t(p, k):
        return {k2: v for k2, v in F.target._dfun(p, k).items() if k2[0] is None}

    src = BoundedComplex(F.source.field, keep(F.source.bases), dfun_s, check=False)
    tgt = BoundedComplex(F.target.field, keep(F.target.bases), dfun_t, check=False)
    return ChainMap(src, tgt, lambda p, k: {k2: v for k2, v in F(p, k).items() if k2[0] is None},
                    check=False)


# -- the bracket via commutators ----------------------------------------------------------

def coderivation_automorphism(coalg, f, ring, generator):
    D = coder_from_cochains(coalg, {f.degree: f})
    return automorphism_from_coderivation(D, ring, generator)


def opposite_bracket(f, g):
    """``[g, f] = -(-1)^{(p-1)(q-1)} [f, g]``."""
    return bracket(g, f)


@dataclass
class BracketComparison:
    left: object      # DefClass from the commutator route
    right: object     # HHClass of the opposite Gerstenhaber bracket
    sign: int         # BRACKET_SIGN if consistent, else None
    side_parts_vanish: bool

    @property
    def ok(self):
        return self.sign == BRACKET_SIGN and self.side_parts_vanish


def liedpic_bracket(f, g, L=None, return_automorphisms=False):
    """Class of the ``e1 e2`` block of ``X([1 + e1 D_f, 1 + e2 D_g])``.

    Over ``k[e1, e2]/(e1^2, e2^2)`` with ``|e1| = 1 - p``, ``|e2| = 1 - q``.
    """
    p, q = f.degree, g.degree
    for c in (f, g):
        if not differential(c).is_zero():
            raise NotACocycle("liedpic_bracket needs cocycles")
    need = max(p + q - 1, p, q)
    L = need + 1 if L is None else L
    if L < need:
        raise TruncationTooSmall(f"need L >= {need}")
    A = f.algebra
    ring = NilpotentRing.two_parameter(A.field, 1 - p, 1 - q)
    coalg = BarCoalgebra(A, L)
    phi = coderivation_automorphism(coalg, f, ring, 0)
    psi = coderivation_automorphism(coalg, g, ring, 1)
    com = commutator(phi, psi)
    model = BarModel(A, min(L, com.max_weight))
    X = x_of_automorphism(com, model)
    cls = phi_extract(X, 2)
    side = 0 not in X.parts and 1 not in X.parts
    if return_automorphisms:
        return cls, side, (phi, psi, com)
    return cls, side


def compare_bracket(f, g, L=None, sign_override=None):
    """Both routes for one pair; ``sign`` is the measured constant (None if inconsistent)."""
    left, side = liedpic_bracket(f, g, L)
    right_c = opposite_bracket(f, g)
    sp = left.hh_class.space
    right = class_of(right_c, sp)
    sign = _relative_sign(left.hh_class.coords, right.coords)
    if sign_override is not None:
        sign = sign * sign_override if sign is not None else None
    return BracketComparison(left, right, sign, side)


def _relative_sign(a, b):
    """``s`` in {1, -1} with ``a = s b``; 0-vectors count as any sign (returns BRACKET_SIGN)."""
    if all(x == 0 for x in a) and all(x == 0 for x in b):
        return BRACKET_SIGN
    if a == list(b):
        return 1
    if a == [-x for x in b]:
        return -1
    return None


def route_sign(f, L=None):
    """Measured ``s`` with ``phi_extract(X(1 + e D_f)) = s [f]`` (None if not +-1)."""
    p = f.degree
    L = max(p + 2, 2) if L is None else L
    A = f.algebra
    ring = NilpotentRing.dual_numbers(A.field, 1 - p)
    coalg = BarCoalgebra(A, L)
    phi = coderivation_automorphism(coalg, f, ring, 0)
    via_x = phi_extract(x_of_automorphism(phi))
    via_psi = phi_extract(psi_build(f, L=L))
    return _relative_sign(via_x.coords, via_psi.coords)
