"""Real quadratic field arithmetic.

Discriminants, fundamental (Pell) units, regulators, reduced indefinite
binary quadratic forms, reduction cycles, and narrow class enumeration.

All integer work is exact (Python bigints); only regulators and lengths are
floats.  Every operation is a pure function on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt


# --------------------------------------------------------------------------
# discriminants


def is_squarefree(m: int) -> bool:
    if m < 1:
        return False
    if m % 4 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 2 if d > 2 else 1
    return True


@dataclass(frozen=True)
class Discriminant:
    m: int
    D: int

    def __post_init__(self):
        if self.D <= 0 or self.D % 4 not in (0, 1):
            raise ValueError(f"invalid discriminant {self.D}")
        s = isqrt(self.D)
        if s * s == self.D:
            raise ValueError(f"discriminant {self.D} is a perfect square")


def fundamental_discriminant(m: int) -> Discriminant:
    """D = m if m = 1 mod 4, else 4m, for squarefree m > 1."""
    if m <= 1:
        raise ValueError(f"m must be > 1, got {m}")
    s = isqrt(m)
    if s * s == m:
        raise ValueError(f"m must not be a perfect square, got {m}")
    if not is_squarefree(m):
        raise ValueError(f"m must be squarefree, got {m}")
    D = m if m % 4 == 1 else 4 * m
    return Discriminant(m=m, D=D)


# --------------------------------------------------------------------------
# fundamental unit (Pell +-4) via exact continued fractions


def _pell_pm1(n: int) -> tuple[int, int, int]:
    """Minimal (x, y, sign) with x^2 - n*y^2 = sign in {+1,-1}, y >= 1.

    Continued-fraction expansion of sqrt(n); exact over bigints.
    """
    a0 = isqrt(n)
    if a0 * a0 == n:
        raise ValueError("n is a perfect square")
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    P, Q = a0, n - a0 * a0
    while True:
        sign = p * p - n * q * q
        if Q == 1 and sign in (1, -1):
            return p, q, sign
        a = (P + a0) // Q
        P = a * Q - P
        Q = (n - P * P) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev


def _icbrt(n: int) -> int:
    """Floor cube root of n >= 0."""
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    return x


def _log_half_unit(t: int, u: int, D: int) -> float:
    """log((t + u*sqrt(D)) / 2) as a float, safe for huge t, u."""
    # log(t) accepts arbitrary-size ints; the ratio u*sqrt(D)/t is O(1).
    r = math.sqrt(float(Fraction(u * u * D, t * t)))
    return math.log(t) + math.log1p(r) - math.log(2.0)


@dataclass(frozen=True)
class FundamentalUnit:
    t: int
    u: int
    norm: int  # +1 or -1: t^2 - D u^2 = 4*norm
    regulator: float


@lru_cache(maxsize=None)
def fundamental_unit(D: int) -> FundamentalUnit:
    """Minimal (t, u) with t^2 - D u^2 = +-4, u >= 1; regulator log((t+u sqrt D)/2)."""
    if D <= 0 or D % 4 not in (0, 1):
        raise ValueError(f"invalid discriminant {D}")
    if isqrt(D) ** 2 == D:
        raise ValueError(f"square discriminant {D}")
    if D % 4 == 0:
        x, y, sign = _pell_pm1(D // 4)
        t, u, norm = 2 * x, y, sign
    else:
        x, y, sign = _pell_pm1(D)
        t, u, norm = 2 * x, 2 * y, sign
        # The order Z[(1+sqrt D)/2] may contain a cube root of x + y*sqrt(D):
        # ((t'+u' sqrt D)/2)^3 = x + y sqrt(D) forces t'^3 - 3*sign*t' = 2x
        # (the cube root's norm cubes to sign, hence equals sign).  The index
        # of Z[sqrt D]* in O_D* is 1 or 3, so no deeper roots exist.
        tp = _icbrt(2 * x)
        for cand in (tp - 1, tp, tp + 1, tp + 2):
            if cand > 0 and cand ** 3 - 3 * sign * cand == 2 * x:
                u2, rem = divmod(cand * cand - 4 * sign, D)
                if rem == 0 and u2 > 0:
                    us = isqrt(u2)
                    if us * us == u2:
                        t, u, norm = cand, us, sign
                break
    assert t * t - D * u * u == 4 * norm
    return FundamentalUnit(t=t, u=u, norm=norm, regulator=_log_half_unit(t, u, D))


def norm_plus_unit(D: int) -> tuple[int, int]:
    """Minimal (t, u) with t^2 - D u^2 = +4 (the fundamental unit squared if norm -1)."""
    fu = fundamental_unit(D)
    if fu.norm == 1:
        return fu.t, fu.u
    # epsilon^2 = ((t^2+2) + t*u*sqrt(D))/2 ... for half-units:
    # ((t+u sqrt D)/2)^2 = ((t^2 + D u^2)/2 + t u sqrt D)/2; t^2+Du^2 = 2t^2+4*(-1)...
    t, u = fu.t, fu.u
    return t * t + 2, t * u


# --------------------------------------------------------------------------
# indefinite binary quadratic forms


@dataclass(frozen=True, order=True)
class QuadraticForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1


def _check_indefinite(q: QuadraticForm) -> int:
    D = q.disc
    if D <= 0:
        raise ValueError(f"form {tuple(q)} has non-positive discriminant {D}")
    if isqrt(D) ** 2 == D:
        raise ValueError(f"form {tuple(q)} has square discriminant {D}")
    return D


def is_reduced(q: QuadraticForm) -> bool:
    """0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, exactly."""
    D = _check_indefinite(q)
    s = isqrt(D)
    b, a2 = q.b, 2 * abs(q.a)
    if not (0 < b <= s):
        return False
    if a2 + b < s + 1:  # need sqrt(D) < 2|a| + b
        return False
    if a2 - b > 0 and (a2 - b) ** 2 >= D:  # need 2|a| - b < sqrt(D)
        return False
    return True


def rho_step(q: QuadraticForm) -> QuadraticForm:
    """One reduction step (a,b,c) -> (c, b', (b'^2-D)/(4c))."""
    D = _check_indefinite(q)
    s = isqrt(D)
    c = q.c
    ac = abs(c)
    if ac == 0:
        raise ValueError("degenerate form with c = 0")
    if ac > s:  # |c| >= sqrt(D): pick b' in (-|c|, |c|]
        r = (-q.b) % (2 * ac)
        bp = r - 2 * ac if r > ac else r
    else:  # |c| < sqrt(D): pick b' in (sqrt(D)-2|c|, sqrt(D))
        bp = s - ((s + q.b) % (2 * ac))
    cp, rem = divmod(bp * bp - D, 4 * c)
    assert rem == 0
    return QuadraticForm(c, bp, cp)


def reduce_form(q: QuadraticForm) -> QuadraticForm:
    """Gauss reduction: iterate the rho step until reduced."""
    _check_indefinite(q)
    for _ in range(10_000):
        if is_reduced(q):
            return q
        q = rho_step(q)
    raise RuntimeError("reduction did not terminate")  # pragma: no cover


def reduction_cycle(q: QuadraticForm) -> list[QuadraticForm]:
    """The full rho-cycle of a reduced form; q appears exactly once, first."""
    if not is_reduced(q):
        raise ValueError(f"form {tuple(q)} is not reduced")
    cycle = [q]
    cur = rho_step(q)
    while cur != q:
        cycle.append(cur)
        cur = rho_step(cur)
    return cycle


def all_reduced_forms(D: int) -> list[QuadraticForm]:
    """Every primitive reduced form of discriminant D, exhaustively."""
    if D <= 0 or D % 4 not in (0, 1) or isqrt(D) ** 2 == D:
        raise ValueError(f"invalid discriminant {D}")
    s = isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (D - b * b) % 4 != 0:
            continue
        prod = (b * b - D) // 4  # = a*c < 0
        n = -prod
        a = 1
        while a * a <= n:
            if n % a == 0:
                for aa in {a, n // a}:
                    for sa in (1, -1):
                        q = QuadraticForm(sa * aa, b, prod // (sa * aa))
                        if is_reduced(q) and q.is_primitive():
                            out.append(q)
            a += 1
    return sorted(set(out))


def narrow_classes(D: int) -> list[QuadraticForm]:
    """One representative per rho-cycle of primitive reduced forms; len = h+."""
    remaining = set(all_reduced_forms(D))
    reps = []
    while remaining:
        q = min(remaining)
        reps.append(q)
        remaining.difference_update(reduction_cycle(q))
    return sorted(reps)


def principal_form(D: int) -> QuadraticForm:
    """The principal form of discriminant D: x^2 + b0*xy + c0*y^2."""
    b0 = D % 2
    return QuadraticForm(1, b0, (b0 * b0 - D) // 4)


# --------------------------------------------------------------------------
# field summary


@dataclass(frozen=True)
class FieldSummary:
    disc: Discriminant
    unit: FundamentalUnit
    h: int
    h_plus: int
    reps: tuple[QuadraticForm, ...]
    total_length_paper: float
    total_length_geom: float


def field_summary(m: int) -> FieldSummary:
    disc = fundamental_discriminant(m)
    unit = fundamental_unit(disc.D)
    reps = tuple(narrow_classes(disc.D))
    h_plus = len(reps)
    if unit.norm == -1:
        h = h_plus
    else:
        if h_plus % 2 != 0:
            raise ArithmeticError(
                f"h+ = {h_plus} odd with norm(eps) = +1 for D = {disc.D}"
            )
        h = h_plus // 2
    tp, up = norm_plus_unit(disc.D)
    # 2*arccosh(t+/2) = 2*log((t+ + sqrt(t+^2-4))/2) = 2*log((t+ + u+*sqrt(D))/2)
    per_class = 2.0 * _log_half_unit(tp, up, disc.D)
    return FieldSummary(
        disc=disc,
        unit=unit,
        h=h,
        h_plus=h_plus,
        reps=reps,
        total_length_paper=2.0 * h * unit.regulator,
        total_length_geom=h_plus * per_class,
    )
