"""Template links: orbits on the Lorenz template plus the trefoil component.

The whole augmented link is realized as one closed braid on k+2 strands,
where k is the total number of branch-line points (total symbol count):

  bottom order:  T1, x-block (n_x points), y-block (n_y points), T2

  1. T1 travels outward UNDER every x-strand and parks between the blocks.
  2. T2 travels inward UNDER every y-strand and parks just outside T1.
  3. T1 and T2 cross three times with equal sign (the trefoil's three
     self-crossings: a clasp plus one more).
  4. T2 continues inward OVER every x-strand to the innermost position.
  5. T1 continues outward OVER every y-strand to the outermost position.
  6. The Lorenz permutation braid acts on the k orbit strands: each
     inverting pair crosses once, x-strand over y-strand (positive braid).

Closing the braid joins branch point i to its one-symbol shift pi(i), and
joins the two T-strands into a single trefoil winding twice around the
braid axis.  Along each orbit strand the trefoil is crossed exactly twice,
over first and under second, so the crossing count is inv(pi) + 2L + 3.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .words import canonical_cyclic, is_primitive

# germ slots at a crossing, counterclockwise
SW, SE, NE, NW = 0, 1, 2, 3
SLOT_NAMES = ("SW", "SE", "NE", "NW")


# --------------------------------------------------------------------------
# branch-line placement


@dataclass(frozen=True)
class BranchPoint:
    owner: int  # index of source word
    shift: int  # rotation index
    key: str  # the rotated word (period of the infinite sequence)


@dataclass(frozen=True)
class OrbitPlacement:
    words: tuple[str, ...]
    points: tuple[BranchPoint, ...]  # sorted by infinite lexicographic key
    successor: tuple[int, ...]  # pi: position -> position of one-symbol shift


def _cmp_periodic(a: str, b: str) -> int:
    n = len(a) + len(b)
    ea = (a * (n // len(a) + 1))[:n]
    eb = (b * (n // len(b) + 1))[:n]
    return -1 if ea < eb else (1 if ea > eb else 0)


def ordered_shifts(words: list[str]) -> OrbitPlacement:
    """Merge all cyclic shifts of all words in lexicographic order."""
    canon = []
    for w in words:
        if not w or any(ch not in "xy" for ch in w):
            raise ValueError(f"bad word {w!r}")
        if "x" not in w or "y" not in w:
            raise ValueError(
                f"single-letter word {w!r} is a boundary orbit of the template")
        if not is_primitive(w):
            raise ValueError(f"word {w!r} is not primitive")
        canon.append(canonical_cyclic(w))
    if len(set(canon)) != len(canon):
        raise ValueError(f"duplicate cyclic words in {words}")

    pts = []
    for j, w in enumerate(canon):
        for s in range(len(w)):
            pts.append(BranchPoint(owner=j, shift=s, key=w[s:] + w[:s]))
    pts.sort(key=functools.cmp_to_key(lambda p, q: _cmp_periodic(p.key, q.key)))
    for p, q in zip(pts, pts[1:]):
        if _cmp_periodic(p.key, q.key) == 0:
            raise ValueError(f"indistinguishable branch points {p} {q}")

    index = {(p.owner, p.shift): i for i, p in enumerate(pts)}
    succ = tuple(
        index[(p.owner, (p.shift + 1) % len(canon[p.owner]))] for p in pts
    )
    return OrbitPlacement(words=tuple(canon), points=tuple(pts), successor=succ)


def lorenz_inversions(p: OrbitPlacement) -> int:
    pi = p.successor
    return sum(
        1 for i in range(len(pi)) for j in range(i + 1, len(pi)) if pi[i] > pi[j]
    )


# --------------------------------------------------------------------------
# diagram


@dataclass
class Crossing:
    sign: int  # +1: the strand entering at SW exits NE passing over
    # arcs[slot] = (other crossing id, other slot); filled by the builder
    arcs: list = field(default_factory=lambda: [None] * 4)
    component: dict = field(default_factory=dict)  # slot -> component index

    def over_slots(self) -> tuple[int, int]:
        return (SW, NE) if self.sign > 0 else (SE, NW)

    def is_over(self, slot: int) -> bool:
        return slot in self.over_slots()


@dataclass
class AugmentedLinkDiagram:
    crossings: list[Crossing]
    # components: ordered lists of (crossing, entry slot) passages
    components: list[list[tuple[int, int]]]
    n_orbit_components: int
    placement: OrbitPlacement | None
    trefoil_component: int  # index into components, -1 if absent
    component_words: tuple[str, ...] = ()  # word of each orbit component, in order

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)


EXIT_SLOT = {SW: NE, SE: NW}  # strands enter from below, leave above


def _braid_closure_diagram(
    letters: list[tuple[int, int]],
    n_strands: int,
    strand_ids: list,
) -> tuple[list[Crossing], dict]:
    """Build the 4-valent diagram of a closed braid.

    letters: (position p, sign) with sign +1 meaning the strand at p goes
    over the strand at p+1 while they swap.  Returns crossings with arcs
    wired through the closure, and a map strand id -> first passage.
    """
    crossings = [Crossing(sign=s) for _, s in letters]
    # pending[p] = (crossing, exit slot) or ('bottom', p)
    pending: list = [("bottom", p) for p in range(n_strands)]
    first_passage: dict = {}
    bottom_entry: dict = {}  # position -> (crossing, entry slot)
    order = list(strand_ids)

    def connect(src, dst):
        c, slot = dst
        if src[0] == "bottom":
            bottom_entry[src[1]] = dst
        else:
            sc, ss = src
            crossings[sc].arcs[ss] = dst
            crossings[c].arcs[slot] = (sc, ss)

    for t, (p, s) in enumerate(letters):
        for pos, slot in ((p, SW), (p + 1, SE)):
            src = pending[pos]
            connect(src, (t, slot))
            if order[pos] not in first_passage:
                first_passage[order[pos]] = (t, slot)
        pending[p] = (t, NW)
        pending[p + 1] = (t, NE)
        order[p], order[p + 1] = order[p + 1], order[p]

    for p in range(n_strands):  # closure: top position p -> bottom position p
        src = pending[p]
        if src[0] == "bottom":
            raise ValueError(f"free loop at position {p}: zero-crossing component")
        dst = bottom_entry.get(p)
        if dst is None:
            raise ValueError(f"free loop at position {p}")
        sc, ss = src
        c, slot = dst
        crossings[sc].arcs[ss] = (c, slot)
        crossings[c].arcs[slot] = (sc, ss)
    return crossings, first_passage


def build_diagram(p: OrbitPlacement | None) -> AugmentedLinkDiagram:
    """Trefoil-augmented link diagram for a branch-line placement.

    p = None (or empty placement) builds the bare trefoil (3 crossings).
    """
    if p is None:
        p = OrbitPlacement(words=(), points=(), successor=())
    k = len(p.points)
    n_x = sum(1 for pt in p.points if pt.key[0] == "x")
    n_y = k - n_x
    clasp = -1  # trefoil handedness relative to the positive template braid

    letters: list[tuple[int, int]] = []
    # 1. T1 outward under the x-block
    letters += [(j, -1) for j in range(n_x)]
    # 2. T2 inward under the y-block
    letters += [(j, +1) for j in range(k, n_x, -1)]
    # 3. three trefoil self-crossings of equal sign
    letters += [(n_x, clasp)] * 3
    # 4. T2 inward over the x-block
    letters += [(j, -1) for j in range(n_x - 1, -1, -1)]
    # 5. T1 outward over the y-block
    letters += [(j, +1) for j in range(n_x + 1, k + 1)]
    # 6. Lorenz permutation braid on the orbit strands (positions 1..k)
    seq = list(p.successor)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            if seq[i] > seq[i + 1]:
                letters.append((i + 1, +1))  # x-strand over y-strand
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                changed = True

    strand_ids = [("T", 1)] + [("pt", i) for i in range(k)] + [("T", 2)]
    crossings, first_passage = _braid_closure_diagram(letters, k + 2, strand_ids)

    # trace components
    visited = set()
    components: list[list[tuple[int, int]]] = []
    comp_of_start: dict = {}

    def trace(start):
        comp = []
        cur = start
        while cur not in visited:
            visited.add(cur)
            comp.append(cur)
            c, slot = cur
            cur = crossings[c].arcs[EXIT_SLOT[slot]]
        assert cur == start, "component trace did not close"
        return comp

    # orbit components ordered by their leftmost branch point; trefoil last
    comp_starts = []
    comp_words = []
    seen_words = set()
    for i, pt in enumerate(p.points):
        if pt.owner not in seen_words:
            seen_words.add(pt.owner)
            comp_starts.append(first_passage[("pt", i)])
            comp_words.append(p.words[pt.owner])
    comp_starts.append(first_passage[("T", 1)])
    for start in comp_starts:
        assert start not in visited
        components.append(trace(start))
    assert len(visited) == 2 * len(crossings), "stray passages outside components"

    for ci, comp in enumerate(components):
        for c, slot in comp:
            crossings[c].component[slot] = ci
            crossings[c].component[EXIT_SLOT[slot]] = ci

    diagram = AugmentedLinkDiagram(
        crossings=crossings,
        components=components,
        n_orbit_components=len(components) - 1,
        placement=p,
        trefoil_component=len(components) - 1,
        component_words=tuple(comp_words),
    )
    n = len(crossings)
    L = k
    inv = lorenz_inversions(p) if k else 0
    assert n == inv + 2 * L + 3, f"crossing identity violated: {n} != {inv}+{2*L}+3"
    assert len(components) == len(p.words) + 1
    return diagram


def linking_with_trefoil(d: AugmentedLinkDiagram) -> list[int]:
    """lk(trefoil, orbit component) for each orbit component.

    For the template construction this equals #y - #x of the component's
    word (the Ghys linking phenomenon, used here as a construction check).
    """
    out = []
    tc = d.trefoil_component
    for ci in range(d.n_orbit_components):
        s = 0
        for cr in d.crossings:
            comps = {cr.component[SW], cr.component[SE]}
            if comps == {ci, tc}:
                s += cr.sign
        assert s % 2 == 0
        out.append(s // 2)
    return out


# --------------------------------------------------------------------------
# DT code


@dataclass(frozen=True)
class DTCode:
    components: tuple[tuple[int, ...], ...]  # signed evens, trefoil last
    n: int

    def __str__(self) -> str:
        parts = ",".join(
            "(" + ",".join(str(v) for v in comp) + ")" for comp in self.components
        )
        return f"DT:[{parts}]"


def dt_code(d: AugmentedLinkDiagram, convention: str = "standard") -> DTCode:
    """Multi-component DT code, components in traversal order, trefoil last.

    standard convention: an even label is negative when that passage goes
    over; the paper's convention negates under-passages instead.  The two
    differ exactly by negating every even entry.
    """
    if convention not in ("standard", "paper"):
        raise ValueError(f"unknown convention {convention!r}")
    n = d.n_crossings
    comps = d.components

    # choose a starting passage per component so labels pair odd with even
    # at every crossing; labels run 1..2n consecutively over all passages
    by_crossing: dict[int, list] = {}

    def assign(ci: int) -> bool:
        if ci == len(comps):
            return all(len(v) == 2 for v in by_crossing.values())
        comp = comps[ci]
        start_label = 1 + sum(len(comps[j]) for j in range(ci))
        for off in range(len(comp)):
            trial: dict[int, list] = {}
            ok = True
            for idx in range(len(comp)):
                c, slot = comp[(off + idx) % len(comp)]
                lab = start_label + idx
                here = by_crossing.get(c, []) + trial.get(c, [])
                if len(here) >= 2 or (here and here[0][0] % 2 == lab % 2):
                    ok = False
                    break
                trial.setdefault(c, []).append((lab, slot))
            if ok:
                for c, v in trial.items():
                    by_crossing.setdefault(c, []).extend(v)
                if assign(ci + 1):
                    return True
                for c, v in trial.items():
                    for item in v:
                        by_crossing[c].remove(item)
        return False

    if not assign(0):
        raise RuntimeError("no valid DT numbering found")  # pragma: no cover

    pair: dict[int, int] = {}
    over_label: dict[int, bool] = {}
    for c, labs in by_crossing.items():
        (l1, s1), (l2, s2) = labs
        pair[l1], pair[l2] = l2, l1
        over_label[l1] = d.crossings[c].is_over(s1)
        over_label[l2] = d.crossings[c].is_over(s2)

    comps_out = []
    pos = 1
    for comp in comps:
        evens = []
        for lab in range(pos, pos + len(comp)):
            if lab % 2 == 1:
                ev = pair[lab]
                neg = over_label[ev] if convention == "standard" else not over_label[ev]
                evens.append(-ev if neg else ev)
        pos += len(comp)
        comps_out.append(tuple(evens))
    code = DTCode(components=tuple(comps_out), n=n)
    allv = sorted(abs(v) for comp in code.components for v in comp)
    assert allv == list(range(2, 2 * n + 1, 2)), "DT evens are not a permutation"
    return code


# --------------------------------------------------------------------------
# family words


def family_word_xn_ym(n: int, m: int) -> str:
    if n < 1 or m < 1:
        raise ValueError("n, m >= 1 required")
    return canonical_cyclic("x" * n + "y" * m)


def family_word_x_xy_n(n: int) -> str:
    if n < 1:
        raise ValueError("n >= 1 required")
    return canonical_cyclic("x" + "xy" * n)
