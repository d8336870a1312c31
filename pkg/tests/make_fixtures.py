"""
Regenerate tests/fixtures/hh_oracle.json from the brute-force oracles.

The algebras are written out as literal structure constants so that the
fixture does not depend on the library's constructors.
Run: python3 tests/make_fixtures.py
"""
import json
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(__file__))
from oracles import derivation_dims, naive_hh_dims  # noqa: E402


def table(n, products):
    """``products[(i, j)] = k`` for basis products equal to a basis element, all others zero."""
    mult = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), k in products.items():
        mult[i][j][k] = Fraction(1)
    return mult


GROUND = table(1, {(0, 0): 0})
# basis 1, x with x^2 = 0
DUAL = table(2, {(0, 0): 0, (0, 1): 1, (1, 0): 1})
# basis e0, e1, a, b with a, b arrows from vertex 0 to vertex 1
KRONECKER = table(4, {(0, 0): 0, (1, 1): 1, (0, 2): 2, (0, 3): 3, (2, 1): 2, (3, 1): 3})
# basis 1, x, y, xy for k[x]/x^2 (x) k[y]/y^2
DUAL2 = table(4, {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2, (0, 3): 3, (3, 0): 3,
                  (1, 2): 3, (2, 1): 3})

CASES = {
    "ground": (GROUND, 3),
    "dual_numbers": (DUAL, 3),
    "kronecker": (KRONECKER, 2),
    "dual_numbers_squared": (DUAL2, 2),
}


def build():
    out = {}
    for name, (mult, top) in CASES.items():
        der, inn = derivation_dims(mult)
        out[name] = {"hh": naive_hh_dims(mult, top), "der": der, "inn": inn}
    return out


if __name__ == "__main__":
    path = os.path.join(os.path.dirname(__file__), "fixtures", "hh_oracle.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(build(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(open(path).read())
