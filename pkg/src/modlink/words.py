"""Word coding: narrow classes -> automorph matrices -> U,V words -> X,Y words.

PSL2(Z) conventions (pinned):
    U = (0,1;-1,0)   order 2
    V = (0,-1;1,1)   order 3
    X = U*V = (1,1;0,1)
    Y = U*V*V = (1,0;1,1)
Matrices are identified with their negation; the canonical sign makes the
first nonzero entry of (a, c) positive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import QuadraticForm


@dataclass(frozen=True)
class PslMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant != 1: {(self.a, self.b, self.c, self.d)}")

    def canonical(self) -> "PslMatrix":
        first = self.a if self.a != 0 else self.c
        if first < 0:
            return PslMatrix(-self.a, -self.b, -self.c, -self.d)
        return self

    def __matmul__(self, o: "PslMatrix") -> "PslMatrix":
        return PslMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    @property
    def trace(self) -> int:
        return self.a + self.d

    def same_psl(self, o: "PslMatrix") -> bool:
        return self.canonical() == o.canonical()


U = PslMatrix(0, 1, -1, 0)
V = PslMatrix(0, -1, 1, 1)
X = PslMatrix(1, 1, 0, 1)
Y = PslMatrix(1, 0, 1, 1)
IDENT = PslMatrix(1, 0, 0, 1)


def automorph(q: QuadraticForm, unit_plus: tuple[int, int]) -> PslMatrix:
    """M = ((t-bu)/2, -cu; au, (t+bu)/2) for the minimal norm-+1 unit (t, u)."""
    t, u = unit_plus
    D = q.disc
    if t * t - D * u * u != 4:
        raise ValueError(f"(t,u)=({t},{u}) is not a norm-+1 unit for D={D}")
    if (t - q.b * u) % 2 != 0:
        raise ArithmeticError(f"parity failure for q={tuple(q)}, unit ({t},{u})")
    M = PslMatrix((t - q.b * u) // 2, -q.c * u, q.a * u, (t + q.b * u) // 2)
    assert M.trace == t
    return M.canonical()


# --------------------------------------------------------------------------
# UV words: sequences of ('U',) | ('V', 1) | ('V', 2), freely reduced in Z2*Z3


def _reduce_uv(letters: list[tuple]) -> list[tuple]:
    out: list[tuple] = []
    for let in letters:
        out.append(let)
        while len(out) >= 2 and out[-1][0] == out[-2][0]:
            b = out.pop()
            a = out.pop()
            if a[0] == "U":
                pass  # U^2 = 1: drop both
            else:
                e = (a[1] + b[1]) % 3
                if e:
                    out.append(("V", e))
    return out


def uv_word_matrix(word: list[tuple]) -> PslMatrix:
    M = IDENT
    for let in word:
        if let[0] == "U":
            M = M @ U
        else:
            for _ in range(let[1]):
                M = M @ V
    return M.canonical()


def matrix_to_uv_word(M: PslMatrix) -> list[tuple]:
    """Reduced U,V word evaluating to +-M, via the Euclidean algorithm.

    Left-multiplying by X^-q subtracts q times the second row from the
    first; U swaps the rows (up to sign).  Euclid on the first column
    terminates at +-X^b.
    """
    if abs(M.trace) <= 2:
        raise ValueError(f"matrix with |trace| <= 2 is not hyperbolic: {M}")
    M = M.canonical()
    S = U  # row swap
    S_inv = PslMatrix(0, -1, 1, 0)
    X_inv = PslMatrix(1, -1, 0, 1)
    factors: list[tuple[str, int]] = []  # ('T', q) or ('S', 1), left to right
    cur = M
    while cur.c != 0:
        q = cur.a // cur.c
        if q != 0:
            factors.append(("T", q))
            cur = PslMatrix(cur.a - q * cur.c, cur.b - q * cur.d, cur.c, cur.d)
        factors.append(("S", 1))
        cur = S_inv @ cur
    # cur = +-(1, b; 0, 1)
    bpow = cur.b if cur.a == 1 else -cur.b
    if bpow != 0:
        factors.append(("T", bpow))

    letters: list[tuple] = []
    for kind, q in factors:
        if kind == "S":
            letters.append(("U",))
        elif q > 0:
            letters.extend([("U",), ("V", 1)] * q)  # X = UV
        else:
            letters.extend([("V", 2), ("U",)] * (-q))  # X^-1 = V^2 U
    word = _reduce_uv(letters)
    assert uv_word_matrix(word).same_psl(M), "UV decomposition failed to evaluate"
    return word


# --------------------------------------------------------------------------
# XY words: cyclic strings over 'x' < 'y'


class NotHyperbolicWord(ValueError):
    pass


def uv_to_xy(word: list[tuple]) -> str:
    """Cyclically reduce a U,V word and read it as a positive X,Y word."""
    w = _reduce_uv(list(word))
    # cyclic reduction: merge across the seam
    while len(w) >= 2 and w[0][0] == w[-1][0]:
        a, b = w.pop(), w[0]
        w = w[1:]
        if a[0] == "U":
            pass
        else:
            e = (a[1] + b[1]) % 3
            if e:
                w = [("V", e)] + w
        w = _reduce_uv(w)
    if len(w) < 2:
        raise NotHyperbolicWord(f"word is finite order or trivial: {w}")
    # alternating U, V^e word of even length; rotate to start at U
    if w[0][0] != "U":
        w = w[1:] + w[:1]
    if len(w) % 2 != 0 or any(w[i][0] != ("U" if i % 2 == 0 else "V")
                              for i in range(len(w))):
        raise NotHyperbolicWord(f"not an alternating U,V word: {w}")
    out = []
    for i in range(0, len(w), 2):
        out.append("x" if w[i + 1][1] == 1 else "y")
    return canonical_cyclic("".join(out))


def canonical_cyclic(w: str) -> str:
    """Lexicographically least rotation (x < y)."""
    if not w:
        raise ValueError("empty word")
    return min(w[i:] + w[:i] for i in range(len(w)))


def is_primitive(w: str) -> bool:
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    for d in range(1, n):
        if n % d == 0 and w == w[:d] * (n // d):
            return False
    return True


def word_to_matrix(w: str) -> PslMatrix:
    M = IDENT
    for ch in w:
        if ch == "x":
            M = M @ X
        elif ch == "y":
            M = M @ Y
        else:
            raise ValueError(f"bad symbol {ch!r}")
    return M.canonical()


def class_word(q: QuadraticForm, unit_plus: tuple[int, int]) -> str:
    """Canonical primitive X,Y word of the geodesic of class q."""
    M = automorph(q, unit_plus)
    w = uv_to_xy(matrix_to_uv_word(M))
    if "x" not in w or "y" not in w:
        raise NotHyperbolicWord(
            f"boundary word {w!r} for form {tuple(q)} (parabolic on the template)")
    return w
