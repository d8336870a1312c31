"""
Verification suites.  Each suite runs a list of identity checks on a fixed
corpus of algebras and returns records sorted by their key.  A record is a
plain dict with ``suite``, ``algebra``, ``check``, ``case``, ``pass`` and
``witness`` (None unless the check failed), plus optional extra fields.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import beilinson_pair, dual_numbers, kronecker_quiver, path_algebra
from .barcoalg import (BarCoalgebra, NilpotentRing, automorphism_from_coderivation,
                       bar_differential_square_witness, check_coassociativity, coder_from_cochains,
                       commutator, composition_transport_check, expected_commutator,
                       stasheff_transport_check)
from .complexes import (KOSZUL, LITERAL, NO_KOSZUL, ComplexError, bar_resolution, homology,
                        quasi_iso_check)
from .defpic import (BRACKET_SIGN, ROUTE_SIGN, BarModel, BimodMap, check_isomorphism,
                     coboundary_isomorphism, compare_bracket, phi_extract, psi_build, route_sign)
from .exactlin import QQ
from .hochschild import (FULL, REDUCED, associator, bracket, class_of, cochain_space,
                         differential, hh_space)

SUITES = ("gerstenhaber", "stasheff", "barres", "defo", "bracket")

DEFAULT_WEIGHTS = {"stasheff": 6, "barres": 4, "bracket": 6}


@dataclass
class RunConfig:
    field: object = QQ
    max_degree: int = 3
    weight: int | None = None     # None: each suite uses its own default
    seed: int = 0
    tuples: int = 50              # random tuples per algebra in the gerstenhaber suite
    pairs: int = 1                # random pairs per degree combination in the stasheff suite
    inject_fault: str | None = None

    def weight_for(self, suite):
        return self.weight if self.weight is not None else DEFAULT_WEIGHTS.get(suite)

    def rng(self, *tags):
        return random.Random(":".join(str(t) for t in (self.seed,) + tags))

    def echo(self):
        return {
            "field": self.field.descriptor(),
            "max_degree": self.max_degree,
            "weight": self.weight,
            "seed": self.seed,
            "tuples": self.tuples,
            "pairs": self.pairs,
            "inject_fault": self.inject_fault,
        }


def sign_constants():
    return {"route_sign": ROUTE_SIGN, "bracket_sign": BRACKET_SIGN}


def corpus(field, names=None):
    """Named test algebras together with the complex mode used for them."""
    makers = {
        "dual_numbers": lambda: (dual_numbers(field), FULL),
        "kronecker": lambda: (path_algebra(kronecker_quiver(field)), FULL),
        "beilinson_A1": lambda: (beilinson_pair(1, field)[0], REDUCED),
        "beilinson_B1": lambda: (beilinson_pair(1, field)[1], REDUCED),
        "beilinson_A2": lambda: (beilinson_pair(2, field)[0], REDUCED),
        "beilinson_B2": lambda: (beilinson_pair(2, field)[1], REDUCED),
    }
    names = names or list(makers)
    return [(n,) + makers[n]() for n in names]


def _record(suite, algebra, check, case, ok, witness=None, **extra):
    rec = {"suite": suite, "algebra": algebra, "check": check, "case": case,
           "pass": bool(ok), "witness": None if ok else witness}
    rec.update(extra)
    return rec


def _sorted(records):
    return sorted(records, key=lambda r: (r["suite"], r["algebra"], r["check"], r["case"]))


def _diff_witness(c1, c2):
    """First tuple where two cochains differ, as a string."""
    for t in sorted(set(c1.values) | set(c2.values)):
        if c1.values.get(t, {}) != c2.values.get(t, {}):
            return f"tuple {list(t)}"
    return "degree mismatch" if c1.degree != c2.degree else None


def _check_eq(lhs, rhs):
    if lhs == rhs or (lhs.is_zero() and rhs.is_zero()):
        return True, None
    return False, _diff_witness(lhs, rhs)


def _sgn(n):
    return -1 if n % 2 else 1


# -- gerstenhaber -------------------------------------------------------------------

def gerstenhaber_identities(c1, c2, c3):
    """``{name: (ok, witness)}`` for one random triple."""
    p, q, r = c1.degree, c2.degree, c3.degree
    out = {}
    dd = differential(differential(c1))
    out["d_squared"] = (dd.is_zero(), None if dd.is_zero() else _diff_witness(dd, dd.scale(0)))
    out["associator_symmetry"] = _check_eq(associator(c1, c2, c3),
                                           associator(c1, c3, c2).scale(_sgn((q - 1) * (r - 1))))
    out["antisymmetry"] = _check_eq(bracket(c1, c2), bracket(c2, c1).scale(-_sgn((p - 1) * (q - 1))))
    lhs = bracket(c1, bracket(c2, c3))
    rhs = bracket(bracket(c1, c2), c3) + bracket(c2, bracket(c1, c3)).scale(_sgn((p - 1) * (q - 1)))
    out["jacobi"] = _check_eq(lhs, rhs)

    out["leibniz"] = _check_eq(*leibniz_sides(c1, c2))
    return out


def minus_d(c):
    return differential(c).scale(-1)


def leibniz_sides(c1, c2, left_form=False):
    """Both sides of the Leibniz rule for ``-d`` on the shifted complex.

    The default is the rule for a differential acting from the right,
    ``D[x, y] = [x, Dy] + (-1)^{|y|} [Dx, y]`` with ``|y| = q - 1``, which is
    the form that holds for these sign conventions.  ``left_form`` gives
    ``D[x, y] = [Dx, y] + (-1)^{|x|} [x, Dy]``, which does not.
    """
    p, q = c1.degree, c2.degree
    lhs = minus_d(bracket(c1, c2))
    if left_form:
        return lhs, bracket(minus_d(c1), c2) + bracket(c1, minus_d(c2)).scale(_sgn(p - 1))
    return lhs, bracket(c1, minus_d(c2)) + bracket(minus_d(c1), c2).scale(_sgn(q - 1))


def suite_gerstenhaber(cfg, names=None):
    recs = []
    for name, A, mode in corpus(cfg.field, names):
        rng = cfg.rng("gerstenhaber", name)
        for n in range(cfg.tuples):
            degs = [rng.randint(0, cfg.max_degree) for _ in range(3)]
            cs = [cochain_space(A, d, mode).random(rng, density=0.5) for d in degs]
            case = f"{n:03d}:{degs[0]}{degs[1]}{degs[2]}"
            for check, (ok, w) in gerstenhaber_identities(*cs).items():
                recs.append(_record("gerstenhaber", name, check, case, ok, w))
    return _sorted(recs)


# -- stasheff (coalgebra side) -----------------------------------------------------------

def suite_stasheff(cfg, names=("dual_numbers", "kronecker")):
    L = cfg.weight_for("stasheff")
    recs = []
    for name, A, _ in corpus(cfg.field, list(names)):
        rng = cfg.rng("stasheff", name)
        coalg = BarCoalgebra(A, L)
        ok, w = check_coassociativity(coalg)
        recs.append(_record("stasheff", name, "coassociativity", f"L{L}", ok, str(w)))
        w = bar_differential_square_witness(coalg)
        recs.append(_record("stasheff", name, "bar_differential_square", f"L{L}", w is None, str(w)))
        for p in range(cfg.max_degree + 1):
            for q in range(cfg.max_degree + 1):
                if max(p + q - 1, p, q) > L:
                    continue
                for k in range(cfg.pairs):
                    c1 = cochain_space(A, p, FULL).random(rng, density=0.5)
                    c2 = cochain_space(A, q, FULL).random(rng, density=0.5)
                    case = f"{p}{q}:{k}"
                    ok, w = stasheff_transport_check(coalg, c1, c2, return_witness=True)
                    recs.append(_record("stasheff", name, "transport", case, ok, str(w)))
                    ok = composition_transport_check(coalg, c1, c2)
                    recs.append(_record("stasheff", name, "composition", case, ok, case))
        recs.extend(_commutator_records(cfg, name, A, rng))
    return _sorted(recs)


def _commutator_records(cfg, name, A, rng, L=4):
    """The automorphism commutator against ``1 + e2 e1 [D1, D2]`` for random coderivations."""
    recs = []
    coalg = BarCoalgebra(A, L)
    for p in range(1, 3):
        for q in range(1, 3):
            ring = NilpotentRing.two_parameter(A.field, 1 - p, 1 - q)
            D1 = coder_from_cochains(coalg, cochain_space(A, p, FULL).random(rng, density=0.5))
            D2 = coder_from_cochains(coalg, cochain_space(A, q, FULL).random(rng, density=0.5))
            phi = automorphism_from_coderivation(D1, ring, 0)
            psi = automorphism_from_coderivation(D2, ring, 1)
            com = commutator(phi, psi)
            ok = com == expected_commutator(D1, D2, ring)
            recs.append(_record("stasheff", name, "commutator", f"{p}{q}", ok, f"weights <= {L}"))
    return recs


# -- bar resolution -------------------------------------------------------------------

def bar_resolution_report(A, L):
    """Homology of the truncated resolution and the induced map to A."""
    P, aug = bar_resolution(A, L)
    dims = {p: homology(P, p).dim for p in range(-(L - 1), 1)}
    qi = quasi_iso_check(aug, [0])
    return dims, qi


def suite_barres(cfg, names=("dual_numbers", "kronecker")):
    L = cfg.weight_for("barres")
    recs = []
    for name, A, _ in corpus(cfg.field, list(names)):
        dims, qi = bar_resolution_report(A, L)
        recs.append(_record("barres", name, "H0_is_A", f"L{L}", dims[0] == A.dim and qi.ok,
                            f"H0 dim {dims[0]}, ranks {qi.ranks}", homology=dims))
        for p in range(-1, -(L - 1) - 1, -1):
            recs.append(_record("barres", name, "acyclic", f"H{p}", dims[p] == 0,
                                f"H^{p} has dim {dims[p]}"))
        # the twisting terms need Koszul signs: other conventions must break d^2 = 0
        for conv in (LITERAL, NO_KOSZUL):
            try:
                bar_resolution(A, min(L, 3), conv)
                ok, w = False, f"{conv} convention unexpectedly squares to zero"
            except ComplexError:
                ok, w = True, None
            recs.append(_record("barres", name, "convention_rejected", conv, ok, w))
    return _sorted(recs)


# -- deformation roundtrip -----------------------------------------------------------------

def _random_rebase(model, p, rng):
    """A random bimodule map of degree p - 1 (for the R-basis change ``1 + e H``)."""
    A = model.algebra
    H = BimodMap(model, p - 1, {})
    for q in range(max(p - 1, 0), model.L + 1):
        for w in model.words(q):
            if rng.random() < 0.3:
                tail = w[p - 1:] if p >= 1 else w
                H.gens[w] = {(rng.randrange(A.dim), tail, rng.randrange(A.dim)): A.field(rng.randint(-2, 2) or 1)}
    return H


def suite_defo(cfg, names=("dual_numbers", "kronecker")):
    recs = []
    for name, A, _ in corpus(cfg.field, list(names)):
        rng = cfg.rng("defo", name)
        for p in range(cfg.max_degree + 1):
            sp = hh_space(A, p)
            L = cfg.weight if cfg.weight is not None else p + 2
            for i in range(sp.dim):
                f = sp.representatives[i]
                case = f"HH{p}:{i}"
                D = psi_build(f, L=L)
                got = phi_extract(D)
                want = sp.basis_class(i).coords
                recs.append(_record("defo", name, "roundtrip", case, got.coords == want,
                                    f"got {_json_coords(A, got.coords)}"))
                s = route_sign(f, L=L)
                recs.append(_record("defo", name, "route_sign", case, s == ROUTE_SIGN,
                                    f"measured {s}"))
                if p == 0:
                    continue
                g = cochain_space(A, p - 1, FULL).random(rng, density=0.5)
                shifted = phi_extract(psi_build(f + differential(g), L=L))
                recs.append(_record("defo", name, "coboundary_shift", case,
                                    shifted.coords == want, f"got {_json_coords(A, shifted.coords)}"))
                H, F = coboundary_isomorphism(D.model, g)
                recs.append(_record("defo", name, "explicit_isomorphism", case,
                                    check_isomorphism(D.model, H, F, 1 - p), None))
                rebased = phi_extract(D.rebase(0, _random_rebase(D.model, p, rng)))
                recs.append(_record("defo", name, "rebase", case, rebased.coords == want,
                                    f"got {_json_coords(A, rebased.coords)}"))
            # extraction after construction is the projection Z -> HH on random cocycles
            if sp.Z.dim:
                L = cfg.weight if cfg.weight is not None else p + 2
                vecs = sp.Z.sparse_vectors()
                z = {}
                for v in vecs:
                    c = rng.randint(-2, 2)
                    for k, x in v.items():
                        z[k] = z.get(k, 0) + c * x
                z = {k: x for k, x in z.items() if x != 0}
                f = sp.space.from_vector(z)
                ok = phi_extract(psi_build(f, L=L)).coords == class_of(f, sp).coords
                recs.append(_record("defo", name, "square", f"HH{p}", ok, None))
    return _sorted(recs)


def _json_coords(A, coords):
    return [A.field.to_json(c) for c in coords]


# -- bracket comparison ------------------------------------------------------------------

def bracket_pairs(field):
    """The (algebra, p, i, q, j) pairs compared by the bracket suite."""
    K = path_algebra(kronecker_quiver(field))
    d = dual_numbers(field)
    pairs = [("kronecker", K, 1, i, 1, j) for i in range(3) for j in range(3)]
    pairs.append(("dual_numbers", d, 1, 0, 2, 0))
    return pairs


def suite_bracket(cfg):
    L = cfg.weight_for("bracket")
    override = -1 if cfg.inject_fault == "bracket-sign" else None
    recs = []
    for name, A, p, i, q, j in bracket_pairs(cfg.field):
        f = hh_space(A, p).representatives[i]
        g = hh_space(A, q).representatives[j]
        r = compare_bracket(f, g, L=L, sign_override=override)
        left = _json_coords(A, r.left.coords)
        right = _json_coords(A, r.right.coords)
        w = None if r.ok else {"p": p, "q": q, "class_left": left, "class_right": right,
                               "sign": r.sign, "side_parts_vanish": r.side_parts_vanish}
        recs.append(_record("bracket", name, "opposite_bracket", f"{p}{q}:{i}{j}", r.ok, w,
                            p=p, q=q, class_left=left, class_right=right, sign=r.sign))
    return _sorted(recs)


RUNNERS = {
    "gerstenhaber": suite_gerstenhaber,
    "stasheff": suite_stasheff,
    "barres": suite_barres,
    "defo": suite_defo,
    "bracket": suite_bracket,
}


def run_suite(name, cfg):
    if name not in RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return RUNNERS[name](cfg)
