"""
Every Koszul sign used by the bar coalgebra and the twisted tensor
products is computed here so conventions cannot drift between modules.

Degrees are cohomological.  A bar word of weight n sits in degree -n.
"""


def parity_sign(n):
    """(-1)^n."""
    return -1 if n % 2 else 1


def koszul(deg_a, deg_b):
    """Sign for moving an element of degree ``deg_a`` past one of degree ``deg_b``."""
    return parity_sign(deg_a * deg_b)


def word_degree(word):
    """Degree of a bar word ``(sa_1, ..., sa_n)``; each ``sa`` has degree -1."""
    return -len(word)


def coextension_sign(cochain_degree, prefix_len):
    """Sign of inserting a p-cochain after ``prefix_len`` letters.

    The induced coderivation has degree p - 1 and passes a prefix of
    degree -prefix_len.
    """
    return koszul(cochain_degree - 1, -prefix_len)


def tensor_sign(deg_x, deg_map):
    """Sign in ``(1 (x) g)(x (x) y) = (-1)^{|g||x|} x (x) g(y)``."""
    return koszul(deg_x, deg_map)
