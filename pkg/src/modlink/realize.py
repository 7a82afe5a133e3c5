"""Realize a DT code as a planar link diagram.

DT text format: ``DT:[(e11,e12,...),(e21,...),...]`` — one parenthesized
signed-even list per component, components in traversal order.  Passages
are numbered 1..2n consecutively along the components; each crossing pairs
one odd with one even label, and the i-th entry of a component's list is
the even label paired with that component's i-th odd label.  In the
standard sign convention a negative even label means the even passage goes
over (the paper convention negates under-passages; the two differ by
negating every entry).

Every component of a link diagram carries an even number of passages (it
meets every other component an even number of times), so component i
covers exactly 2*len(tuple_i) consecutive labels and the label ranges are
reconstructible from the code alone.

A DT code fixes the pairing and the over/under data but not the local
handedness of each crossing.  Realization searches the 2^(n-1) handedness
assignments (the first crossing is pinned: mirrors are equivalent here,
volume being mirror-invariant) for one whose 4-valent map is planar, i.e.
whose face count satisfies Euler's formula V - E + F = n - 2n + F = 2.
This is exponential but only fixture-scale codes arrive this way; survey
diagrams are built directly and never round-trip through a DT code.
"""

from __future__ import annotations

import re

from .octa import build_triangulation
from .solver import CONVERGED, FAILED, VolumeResult
from .volume import link_volume
from .template import EXIT_SLOT, NE, NW, SE, SW, Crossing
from .tri import Triangulation

_DT_RE = re.compile(r"^DT:\[(.*)\]$")
_TUPLE_RE = re.compile(r"\(([^()]*)\)")


def parse_dt(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse ``DT:[(4,6,8,2)]``-style text into component tuples."""
    compact = "".join(text.split())
    m = _DT_RE.match(compact)
    if not m:
        raise ValueError(f"malformed DT string: {text!r}")
    body = m.group(1)
    tuples = _TUPLE_RE.findall(body)
    if not tuples or ",".join(f"({t})" for t in tuples) != body:
        raise ValueError(f"malformed DT string: {text!r}")
    comps = []
    for t in tuples:
        try:
            comp = tuple(int(v) for v in t.split(",") if v != "")
        except ValueError:
            raise ValueError(f"malformed DT string: {text!r}") from None
        if not comp:
            raise ValueError(f"empty component in DT string: {text!r}")
        comps.append(comp)
    validate_dt(tuple(comps))
    return tuple(comps)


def validate_dt(components: tuple[tuple[int, ...], ...]) -> int:
    """Check the evens are a permutation of +-{2,...,2n}; return n."""
    evens = [v for comp in components for v in comp]
    n = len(evens)
    if sorted(abs(v) for v in evens) != list(range(2, 2 * n + 1, 2)):
        raise ValueError(
            "invalid DT code: even labels are not a permutation of "
            f"2..{2 * n}")
    return n


def realize(components: tuple[tuple[int, ...], ...],
            convention: str = "standard") -> list[Crossing]:
    """Build diagram crossings (with arcs and over/under) from a DT code.

    Raises ValueError for split diagrams and unrealizable codes.
    """
    if convention not in ("standard", "paper"):
        raise ValueError(f"unknown convention {convention!r}")
    n = validate_dt(components)

    # label ranges, pairing, and over/under per passage
    succ: dict[int, int] = {}
    start = 1
    odd_labels: list[int] = []
    for comp in components:
        length = 2 * len(comp)
        for lab in range(start, start + length):
            succ[lab] = start if lab == start + length - 1 else lab + 1
        odd_labels.extend(range(start, start + length, 2))
        start += length
    crossing_of: dict[int, int] = {}
    over: dict[int, bool] = {}  # label -> passage goes over
    flat = [v for comp in components for v in comp]
    for q, (odd, signed_even) in enumerate(zip(odd_labels, flat)):
        even = abs(signed_even)
        even_over = (signed_even < 0) == (convention == "standard")
        crossing_of[odd] = crossing_of[even] = q
        over[even] = even_over
        over[odd] = not even_over

    # connectivity of the 4-valent graph is independent of handedness
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab, nxt in succ.items():
        parent[find(crossing_of[lab])] = find(crossing_of[nxt])
    if len({find(q) for q in range(n)}) != 1:
        raise ValueError("split diagram: DT code is disconnected")

    # search crossing handedness for a planar embedding
    signs = [0] * n
    if _search(0, signs, n, succ, crossing_of, over):
        return _wire(signs, n, succ, crossing_of, over)
    raise ValueError("unrealizable DT code: no planar embedding exists")


def _entry_slot(sign: int, is_over: bool) -> int:
    # sign +1: the strand entering at SW exits NE passing over
    if sign > 0:
        return SW if is_over else SE
    return SE if is_over else SW


def _wire(signs, n, succ, crossing_of, over) -> list[Crossing]:
    crossings = [Crossing(sign=s) for s in signs]
    for lab, nxt in succ.items():
        q, q2 = crossing_of[lab], crossing_of[nxt]
        s_out = EXIT_SLOT[_entry_slot(signs[q], over[lab])]
        s_in = _entry_slot(signs[q2], over[nxt])
        crossings[q].arcs[s_out] = (q2, s_in)
        crossings[q2].arcs[s_in] = (q, s_out)
    return crossings


def _face_count(crossings) -> int:
    darts = {(q, s) for q in range(len(crossings)) for s in range(4)}
    faces = 0
    while darts:
        start = cur = min(darts)
        while True:
            darts.remove(cur)
            q2, s2 = crossings[cur[0]].arcs[cur[1]]
            cur = (q2, (s2 + 1) % 4)
            if cur == start:
                break
        faces += 1
    return faces


def _search(q, signs, n, succ, crossing_of, over) -> bool:
    if q == n:
        return _face_count(_wire(signs, n, succ, crossing_of, over)) == n + 2
    # the full map is mirror-symmetric: pin the first crossing's handedness
    for s in ((1,) if q == 0 else (1, -1)):
        signs[q] = s
        if _search(q + 1, signs, n, succ, crossing_of, over):
            return True
    return False


def mirror_diagram(crossings) -> list[Crossing]:
    """Switch every crossing; the arc wiring is unchanged."""
    return [Crossing(sign=-c.sign, arcs=list(c.arcs),
                     component=dict(c.component)) for c in crossings]


def triangulation_from_dt(text: str,
                          convention: str = "standard") -> Triangulation:
    return build_triangulation(realize(parse_dt(text), convention))


def volume_from_dt(text: str, convention: str = "standard",
                   **solver_kw) -> VolumeResult:
    """Realize the DT code and solve for the volume.

    A DT code determines a link only up to mirror image, and realization
    pins the first crossing's handedness arbitrarily, so both mirrors are
    tried (volume is mirror-invariant; the solve basins are not).
    """
    crossings = realize(parse_dt(text), convention)
    best = None
    for diagram in (crossings, mirror_diagram(crossings)):
        res = link_volume(diagram, **solver_kw)
        if res.status == CONVERGED:
            return res
        if best is None or best.volume is None and res.volume is not None \
                or (best.status == FAILED and res.status != FAILED):
            best = res
    return best
