"""Independent brute-force oracles, written before the main implementation.

These deliberately use the dumbest correct algorithms (bounded brute force,
exhaustive enumeration) so that agreement with the fast implementations is
meaningful.
"""

from math import gcd, isqrt


def oracle_pell4(D: int, u_cap: int = 100_000) -> tuple[int, int, int]:
    """Minimal (t, u, norm) with t^2 - D u^2 = 4*norm.

    Brute force over u; beyond the scan cap, fall back to sympy's
    independent Pell machinery (minimal x^2 - D y^2 = +-1) and take the
    half-integer cube root when the order of discriminant D contains one.
    """
    for u in range(1, u_cap):
        for s in (-4, 4):
            t2 = D * u * u + s
            if t2 <= 0:
                continue
            t = isqrt(t2)
            if t * t == t2:
                return t, u, s // 4

    from sympy.solvers.diophantine.diophantine import diop_DN

    n = D // 4 if D % 4 == 0 else D
    neg = diop_DN(n, -1)
    if neg:
        x, y = min((abs(x), abs(y)) for x, y in neg)
        sign = -1
    else:
        x, y = min((abs(x), abs(y)) for x, y in diop_DN(n, 1))
        sign = 1
    if D % 4 == 0:
        return 2 * x, y, sign
    t, u = 2 * x, 2 * y
    # possible half-integer cube root: t'^3 - 3*sign*t' = 2x
    lo, hi = 1, 2
    while hi ** 3 < 2 * x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** 3 - 3 * sign * mid < 2 * x:
            lo = mid + 1
        else:
            hi = mid
    if lo ** 3 - 3 * sign * lo == 2 * x:
        u2, rem = divmod(lo * lo - 4 * sign, D)
        if rem == 0 and u2 > 0 and isqrt(u2) ** 2 == u2:
            return lo, isqrt(u2), sign
    return t, u, sign


def _oracle_is_reduced(a: int, b: int, c: int, D: int) -> bool:
    if b <= 0:
        return False
    sD = D ** 0.5
    return b < sD and sD - b < 2 * abs(a) < sD + b


def oracle_all_reduced(D: int) -> set:
    """All primitive reduced forms of discriminant D by exhaustive scan."""
    from modlink.arith import QuadraticForm

    out = set()
    s = isqrt(D)
    bound = s + 2
    for a in range(-bound, bound + 1):
        if a == 0:
            continue
        for b in range(1, s + 1):
            num = b * b - D
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if gcd(gcd(a, b), c) != 1:
                continue
            if _oracle_is_reduced(a, b, c, D):
                out.add(QuadraticForm(a, b, c))
    return out
