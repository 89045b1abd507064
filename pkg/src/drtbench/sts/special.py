"""Special functions used by the statistical tests.

Thin wrappers so every test shares one implementation: the regularized
upper incomplete gamma function and the complementary error function are
the cephes routines (via scipy / libm), which is also what the reference
statistical suite links against.
"""

import math

from scipy.special import gammaincc as _gammaincc


def erfc(x: float) -> float:
    return math.erfc(x)


def igamc(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a)."""
    return float(_gammaincc(a, x))


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))
