from fractions import Fraction

import pytest

from divisor_series.newton import LaurentPoly

X = LaurentPoly.x()
Y = LaurentPoly.y()

F_A = Y**3 + Y**2 * X - X**5
F_B = Y**2 - X**3
F_C = Y**2 - X**4
F_E = Y**3 - X**4
F_D = (Y - X) * (Y**2 - X**3)
# same Newton diagram as F_D, with terms strictly above it
F_D_PERTURBED = F_D + X * Y**4 + X**6

POLY_CORPUS = {
    "cusp": F_B,
    "tacnode": F_C,
    "e6": F_E,
    "example1": F_A,
    "line_cusp": F_D,
    "line_cusp_perturbed": F_D_PERTURBED,
}


def poly(*terms) -> LaurentPoly:
    """``poly((coef, kx, ky), ...)``"""
    return LaurentPoly({(i, j): Fraction(c) for c, i, j in terms})


@pytest.fixture
def x():
    return X


@pytest.fixture
def y():
    return Y
