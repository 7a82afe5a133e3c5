"""Dilogarithm and Bloch-Wigner tests against mpmath reference values."""

import cmath
import math
import random

import mpmath
import pytest

from modlink.dilog import MAX_TET_VOLUME, bloch_wigner, li2

mpmath.mp.dps = 30


def _ref_li2(z: complex) -> complex:
    v = mpmath.polylog(2, mpmath.mpc(z.real, z.imag))
    return complex(v)


def _ref_bw(z: complex) -> float:
    zc = mpmath.mpc(z.real, z.imag)
    v = mpmath.im(mpmath.polylog(2, zc)) + mpmath.arg(1 - zc) * mpmath.log(abs(zc))
    return float(v)


def test_li2_special_values():
    assert abs(li2(0.0 + 0j)) == 0.0
    assert abs(li2(1.0 + 0j) - math.pi**2 / 6) < 1e-14
    assert abs(li2(-1.0 + 0j) + math.pi**2 / 12) < 1e-14
    assert abs(li2(0.5 + 0j) - (math.pi**2 / 12 - math.log(2) ** 2 / 2)) < 1e-14


def test_li2_random_against_mpmath():
    rng = random.Random(7)
    for _ in range(1000):
        r = math.exp(rng.uniform(-3.0, 3.0))
        th = rng.uniform(-math.pi, math.pi)
        z = cmath.rect(r, th)
        if abs(z - 1) < 1e-6:
            continue
        assert abs(li2(z) - _ref_li2(z)) < 1e-12 * max(1.0, abs(_ref_li2(z)))


def test_bloch_wigner_random_against_mpmath():
    rng = random.Random(11)
    for _ in range(1000):
        z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        if abs(z) < 1e-6 or abs(z - 1) < 1e-6:
            continue
        assert abs(bloch_wigner(z) - _ref_bw(z)) < 1e-12


def test_bloch_wigner_regular_tetrahedron():
    z = cmath.exp(1j * math.pi / 3)
    assert abs(bloch_wigner(z) - MAX_TET_VOLUME) < 1e-13


def test_bloch_wigner_symmetries():
    rng = random.Random(13)
    for _ in range(200):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3.0))
        b = bloch_wigner(z)
        # Six-fold symmetry of the Bloch-Wigner function.
        assert abs(bloch_wigner(1 / (1 - z)) - b) < 1e-11
        assert abs(bloch_wigner((z - 1) / z) - b) < 1e-11
        assert abs(bloch_wigner(1 / z) + b) < 1e-11
        assert abs(bloch_wigner(1 - z) + b) < 1e-11
        assert abs(bloch_wigner(z.conjugate()) + b) < 1e-11


def test_five_term_relation():
    rng = random.Random(17)
    for _ in range(200):
        x = complex(rng.uniform(-2, 2), rng.uniform(0.05, 2.0))
        y = complex(rng.uniform(-2, 2), rng.uniform(0.05, 2.0))
        if abs(1 - x * y) < 1e-3:
            continue
        terms = (
            bloch_wigner(x)
            + bloch_wigner(y)
            + bloch_wigner((1 - x) / (1 - x * y))
            + bloch_wigner(1 - x * y)
            + bloch_wigner((1 - y) / (1 - x * y))
        )
        assert abs(terms) < 1e-10


def test_bloch_wigner_real_is_zero():
    for x in (-2.5, -0.3, 0.4, 2.0, 17.0):
        assert abs(bloch_wigner(complex(x, 0.0))) < 1e-13
