"""Complex dilogarithm and the Bloch-Wigner function (double precision)."""

from __future__ import annotations

import cmath
import math

_PI2_6 = math.pi * math.pi / 6.0

# Bernoulli numbers B_{2k} for the Debye series
_B2K = (
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
    7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138,
)


def _li2_series(z: complex) -> complex:
    """Li2 via the Debye series in w = -log(1-z); fast for |w| < 2ish."""
    w = -cmath.log(1 - z)
    total = w - w * w / 4.0
    wk = w  # w^(2k-1)
    w2 = w * w
    fact = 1.0
    for k, b in enumerate(_B2K, start=1):
        wk *= w2
        fact *= (2 * k) * (2 * k + 1)
        term = b * wk / fact
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
    return total


def li2(z: complex) -> complex:
    """Dilogarithm Li2(z) = sum z^k / k^2, principal branch."""
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(_PI2_6)
    if abs(z) > 1.2:
        lz = cmath.log(-z)
        return -li2(1.0 / z) - _PI2_6 - 0.5 * lz * lz
    if z.real > 0.6 and abs(1 - z) < 0.8:
        return _PI2_6 - cmath.log(z) * cmath.log(1 - z) - li2(1 - z)
    return _li2_series(z)


def bloch_wigner(z: complex) -> float:
    """D(z) = Im(Li2(z)) + arg(1-z) * log|z|: volume of the ideal tet of shape z."""
    z = complex(z)
    if z.imag == 0 or z in (0, 1):
        return 0.0
    return li2(z).imag + cmath.phase(1 - z) * math.log(abs(z))


MAX_TET_VOLUME = 1.0149416064096536  # vol of the regular ideal tetrahedron
