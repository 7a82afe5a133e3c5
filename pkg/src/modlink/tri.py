"""Ideal triangulations: gluings, edge/vertex classes, gluing equations.

Conventions
-----------
A tetrahedron has vertices 0..3; face i is opposite vertex i.  A gluing is
(t, f) <-> (t2, f2, perm) where perm maps vertex labels of t to labels of
t2 with perm[f] = f2.  Oriented triangulations have odd permutations on
every gluing.

Shape parameters: one complex z per tetrahedron; the three dihedral-pair
types are
    type 0:  edges {0,1} and {2,3}   ->  z
    type 1:  edges {0,2} and {1,3}   ->  z' = 1/(1-z)
    type 2:  edges {0,3} and {1,2}   ->  z'' = (z-1)/z
Around vertex v the link triangle's corners run (type 0, 1, 2) counter-
clockwise when (v, i, j, k) is an even permutation of (0,1,2,3); the side
of the link triangle lying in face f is the side opposite corner f.

Equations: one row per edge class (product of corner shapes = 1) plus
exactly two completeness rows per torus cusp (product of corner shapes
= +-1; the sign collects U-turns of the combinatorial walk).  Candidate
completeness rows come from the fundamental cycles of the dual graph of
the cusp triangulation; two rows independent of the edge rows (exact
rational rank) are kept per cusp, so the system has edges + 2*cusps rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

_PAIR_TYPE = {
    frozenset((0, 1)): 0, frozenset((2, 3)): 0,
    frozenset((0, 2)): 1, frozenset((1, 3)): 1,
    frozenset((0, 3)): 2, frozenset((1, 2)): 2,
}


def _parity_slow(p) -> int:
    return sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j]) % 2


_PARITY = {tuple(p): _parity_slow(p) for p in permutations(range(4))}


def _parity(p) -> int:
    return _PARITY[tuple(p)]


def _invert(p):
    inv = [0] * 4
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


_INVERSE = {tuple(p): _invert(p) for p in permutations(range(4))}


_CCW = {}
for _p in permutations(range(4)):
    if _parity(_p) == 0:
        _CCW.setdefault(_p[0], (_p[1], _p[2], _p[3]))


class _RationalEchelon:
    """Incremental exact row echelon over Q for sparse integer rows."""

    def __init__(self):
        self.pivots: dict = {}  # pivot key -> reduced row {key: Fraction}

    def add(self, row: dict) -> bool:
        """Insert the row; return True iff it was independent of the span."""
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            k = min(row)
            piv = self.pivots.get(k)
            if piv is None:
                lead = row[k]
                self.pivots[k] = {kk: v / lead for kk, v in row.items()}
                return True
            factor = row[k]
            for kk, v in piv.items():
                row[kk] = row.get(kk, Fraction(0)) - factor * v
            row = {kk: v for kk, v in row.items() if v}
        return False


def _diagonalize_columns(mat):
    """Integer diagonalisation U * A * V = D of the F x K matrix A = mat.

    Returns (u_inv, diag) where u_inv is the F x F inverse of the
    unimodular row transform U and diag holds the F diagonal entries of D
    (padded with zeros when K < F).  Used to read off the free part of
    Z^F modulo the column lattice of A: coordinate i with diag[i] == 0 is
    free, and column i of u_inv is a lattice vector mapping to its
    generator.
    """
    A = [row[:] for row in mat]
    F = len(A)
    K = len(A[0]) if A and A[0] else 0
    u_inv = [[int(r == c) for c in range(F)] for r in range(F)]

    def row_add(i, k, c):  # row i += c * row k; u_inv col k -= c * col i
        Ai, Ak = A[i], A[k]
        for j in range(K):
            Ai[j] += c * Ak[j]
        for r in range(F):
            u_inv[r][k] -= c * u_inv[r][i]

    def row_swap(i, k):
        A[i], A[k] = A[k], A[i]
        for r in range(F):
            u_inv[r][i], u_inv[r][k] = u_inv[r][k], u_inv[r][i]

    def col_add(j, l, c):
        for r in range(F):
            A[r][j] += c * A[r][l]

    def col_swap(j, l):
        for r in range(F):
            A[r][j], A[r][l] = A[r][l], A[r][j]

    p = 0
    while p < min(F, K):
        best = None
        for r in range(p, F):
            for c in range(p, K):
                v = A[r][c]
                if v and (best is None or abs(v) < abs(best[2])):
                    best = (r, c, v)
        if best is None:
            break
        if best[0] != p:
            row_swap(p, best[0])
        if best[1] != p:
            col_swap(p, best[1])
        while True:
            moved = False
            for r in range(p + 1, F):
                if A[r][p]:
                    row_add(r, p, -(A[r][p] // A[p][p]))
                    if A[r][p]:  # remainder becomes the smaller pivot
                        row_swap(p, r)
                        moved = True
            for c in range(p + 1, K):
                if A[p][c]:
                    col_add(c, p, -(A[p][c] // A[p][p]))
                    if A[p][c]:
                        col_swap(p, c)
                        moved = True
            if not moved:
                break
        p += 1
    diag = [A[i][i] if i < K else 0 for i in range(F)]
    return u_inv, diag


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        root = parent.setdefault(x, x)
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def classes(self, items) -> list:
        out: dict = {}
        for it in items:
            out.setdefault(self.find(it), []).append(it)
        return list(out.values())


@dataclass
class CuspRow:
    """Multiplicative completeness condition: sign * prod shapes^exp = 1."""
    exponents: dict  # (tet, type) -> int
    sign: int  # +1 or -1


@dataclass
class GluingSystem:
    n_tets: int
    edge_rows: list[dict]  # (tet, type) -> coeff; log-sum = 2 pi i
    cusp_rows: list[CuspRow]
    # remaining cusp cycles beyond the two independent rows per cusp.
    # Rational independence does not make the selected pair a basis of the
    # peripheral lattice: imposing a finite-index pair admits cone
    # (Dehn-filled) solutions with holonomy a root of unity, which converge
    # cleanly to a wrong volume.  Feeding every cycle to the least-squares
    # Newton step pins the complete structure.
    extra_rows: list = field(default_factory=list)


class Triangulation:
    def __init__(self, n_tets: int):
        self.n = n_tets
        self.glue: dict = {}  # (t, f) -> (t2, f2, perm)
        self._cache: dict = {}  # derived structures; cleared on mutation

    def add_gluing(self, t, f, t2, f2, perm):
        if self._cache:
            self._cache.clear()
        perm = tuple(perm)
        parity = _PARITY.get(perm)
        if parity is None or perm[f] != f2:
            raise ValueError(f"bad gluing perm {(t, f, t2, f2, perm)}")
        if parity == 0:
            raise ValueError(f"even (orientation-reversing) perm {perm}")
        inv = _INVERSE[perm]
        glue = self.glue
        for key, val in (((t, f), (t2, f2, perm)),
                         ((t2, f2), (t, f, inv))):
            if key in glue and glue[key] != val:
                raise ValueError(f"face {key} already glued")
            glue[key] = val

    def validate(self) -> None:
        for t in range(self.n):
            for f in range(4):
                if (t, f) not in self.glue:
                    raise ValueError(f"face ({t},{f}) unglued")
        for (t, f), (t2, f2, perm) in self.glue.items():
            t3, f3, _ = self.glue[(t2, f2)]
            if (t3, f3) != (t, f):
                raise ValueError("gluing is not an involution")
            if _parity(perm) == 0:
                raise ValueError(f"even (orientation-reversing) perm at ({t},{f})")

    # -- classes -----------------------------------------------------------

    def _edge_uf(self) -> _UnionFind:
        if "euf" not in self._cache:
            uf = _UnionFind()
            for (t, f), (t2, f2, perm) in self.glue.items():
                verts = [i for i in range(4) if i != f]
                for a in range(3):
                    for b in range(a + 1, 3):
                        i, j = verts[a], verts[b]
                        uf.union((t, frozenset((i, j))),
                                 (t2, frozenset((perm[i], perm[j]))))
            self._cache["euf"] = uf
        return self._cache["euf"]

    def _vertex_uf(self) -> _UnionFind:
        if "vuf" not in self._cache:
            uf = _UnionFind()
            for (t, f), (t2, f2, perm) in self.glue.items():
                for v in range(4):
                    if v != f:
                        uf.union((t, v), (t2, perm[v]))
            self._cache["vuf"] = uf
        return self._cache["vuf"]

    def edge_classes(self) -> list[list[tuple[int, frozenset]]]:
        if "eclasses" not in self._cache:
            items = [(t, frozenset((i, j))) for t in range(self.n)
                     for i in range(4) for j in range(i + 1, 4)]
            self._cache["eclasses"] = self._edge_uf().classes(items)
        return self._cache["eclasses"]

    def vertex_classes(self) -> list[list[tuple[int, int]]]:
        if "vclasses" not in self._cache:
            items = [(t, v) for t in range(self.n) for v in range(4)]
            self._cache["vclasses"] = self._vertex_uf().classes(items)
        return self._cache["vclasses"]

    def edge_star(self, t: int, i: int, j: int) -> list[tuple[int, frozenset]]:
        """Incidences around the edge {i, j} of tet t, in walk order.

        The walk crosses the two faces containing the edge in turn, so its
        length is the true edge valence (an incidence that the edge class
        visits twice appears twice).  Local: costs O(valence), independent
        of the triangulation size.
        """
        glue = self.glue
        exit0 = next(v for v in range(4) if v not in (i, j))
        state = (t, i, j, exit0)
        out = []
        for _ in range(6 * self.n):
            tt, ii, jj, ex = state
            out.append((tt, frozenset((ii, jj))))
            t2, f2, perm = glue[(tt, ex)]
            i2, j2 = perm[ii], perm[jj]
            state = (t2, i2, j2, 6 - f2 - i2 - j2)
            if state == (t, i, j, exit0):
                return out
        raise RuntimeError("edge walk did not close")

    def _corner_uf(self) -> _UnionFind:
        if "cuf" not in self._cache:
            uf = _UnionFind()
            for (t, f), (t2, f2, perm) in self.glue.items():
                for v in range(4):
                    if v == f:
                        continue
                    for i in range(4):
                        if i not in (v, f):
                            uf.union((t, v, i), (t2, perm[v], perm[i]))
            self._cache["cuf"] = uf
        return self._cache["cuf"]

    def link_euler(self, vclass: list[tuple[int, int]]) -> int:
        uf = self._corner_uf()
        corners = [(t, v, i) for (t, v) in vclass for i in range(4) if i != v]
        tris = len(vclass)
        nverts = len({uf.find(c) for c in corners})
        return nverts - (3 * tris) // 2 + tris

    # -- edge contraction ----------------------------------------------------

    def collapse_permitted(self, eclass: list) -> bool:
        """Whether contracting the edge class preserves the manifold.

        Checks, for an edge e joining two distinct vertex classes:
          * e meets every tetrahedron of its star at most once;
          * collapsing identifies the two remaining edges of each triangle
            containing e, and the two faces of each tetrahedron containing
            e that miss one endpoint each; neither family of forced
            identifications may close a loop (merge an already-merged
            pair), which would pinch off a sphere and change the topology.
        The loop tests run over a union-find of edge classes and one of
        face classes.
        """
        star: dict = {}
        for t, pair in eclass:
            if t in star:
                return False
            star[t] = tuple(sorted(pair))
        if len(star) == self.n:
            return False

        vuf = self._vertex_uf()
        t0 = next(iter(star))
        a0, b0 = star[t0]
        if vuf.find((t0, a0)) == vuf.find((t0, b0)):
            return False

        euf = self._edge_uf()
        in_e = {euf.find((t, frozenset(pair))) for t, pair in eclass}

        def union_or_loop(uf, x, y):
            if uf.find(x) == uf.find(y):
                return True
            uf.union(x, y)
            return False

        # triangles containing e: identify their two remaining edges
        seen_faces = set()
        edge_merge = _UnionFind()
        for t, (a, b) in star.items():
            for f in range(4):
                if f in (a, b):
                    continue
                key = frozenset([(t, f), self.glue[(t, f)][:2]])
                if key in seen_faces:
                    continue
                seen_faces.add(key)
                c = 6 - f - a - b
                sides = [frozenset((a, b)), frozenset((a, c)),
                         frozenset((b, c))]
                hits = [s for s in sides if euf.find((t, s)) in in_e]
                if len(hits) != 1:
                    return False
                if union_or_loop(edge_merge, euf.find((t, frozenset((a, c)))),
                                 euf.find((t, frozenset((b, c))))):
                    return False
        # tetrahedra containing e: identify the two endpoint faces
        face_merge = _UnionFind()
        for t, (a, b) in star.items():
            fa = frozenset([(t, a), self.glue[(t, a)][:2]])
            fb = frozenset([(t, b), self.glue[(t, b)][:2]])
            if union_or_loop(face_merge, fa, fb):
                return False
        return True

    def contract_edge(self, eclass: list) -> "Triangulation":
        """Contract the edge class (a retriangulation of the same manifold).

        Every tetrahedron containing the edge is flattened: its two faces
        that miss one endpoint each become identified (with the endpoint
        transposition as vertex map), and the resulting face pairings are
        chased through the flattened star onto the surviving tetrahedra.
        Raises ValueError when the edge is not contractible (it runs
        through some tetrahedron twice, or the chase closes on itself).
        """
        star: dict = {}
        for t, pair in eclass:
            if t in star:
                raise ValueError(f"edge appears twice in tet {t}")
            star[t] = tuple(sorted(pair))
        if len(star) == self.n:
            raise ValueError("edge star covers the whole triangulation")

        def teleport(t, f):
            """Inside flattened star tet t, hop between the endpoint faces."""
            a, b = star[t]
            sigma = list(range(4))
            sigma[a], sigma[b] = b, a
            return (b if f == a else a), tuple(sigma)

        keep = [t for t in range(self.n) if t not in star]
        new_id = {t: i for i, t in enumerate(keep)}
        out = Triangulation(len(keep))
        done = set()
        changed = set()
        for t in keep:
            for f in range(4):
                if (t, f) in done:
                    continue
                t2, f2, perm = self.glue[(t, f)]
                hops = 0
                while t2 in star:
                    hops += 1
                    a, b = star[t2]
                    if f2 not in (a, b):
                        raise ValueError(
                            "chase entered a flattened star tet through a "
                            "collapsed face")
                    f2, sigma = teleport(t2, f2)
                    perm = tuple(sigma[p] for p in perm)
                    t3, f3, nxt = self.glue[(t2, f2)]
                    perm = tuple(nxt[p] for p in perm)
                    t2, f2 = t3, f3
                    if (t2, f2) == (t, f):
                        raise ValueError("chase closed on itself")
                if hops:
                    changed.add(new_id[t])
                    changed.add(new_id[t2])
                out.add_gluing(new_id[t], f, new_id[t2], f2, perm)
                done.add((t, f))
                done.add((t2, f2))
        out._old2new = new_id
        out._changed = changed
        return out

    # -- 2-3 move --------------------------------------------------------------

    def two_three(self, t1: int, f1: int) -> "Triangulation":
        """Replace the two tetrahedra glued along face (t1, f1) by three.

        The bipyramid spanned by the two tetrahedra is re-cut along the
        edge joining its apexes.  Always a valid retriangulation provided
        the two tetrahedra are distinct.
        """
        t2, f2, sigma = self.glue[(t1, f1)]
        if t1 == t2:
            raise ValueError("2-3 move needs two distinct tetrahedra")
        eq = sorted(v for v in range(4) if v != f1)
        if _parity((f1, eq[0], eq[1], eq[2])) == 1:
            eq = [eq[0], eq[2], eq[1]]
        keep = [t for t in range(self.n) if t not in (t1, t2)]
        new_id = {t: i for i, t in enumerate(keep)}
        base = len(keep)
        out = Triangulation(base + 3)
        # new tet N_k (k=0,1,2): 0 = apex of t1 (vertex f1), 1 = apex of t2,
        # 2 = eq[k+1], 3 = eq[k+2]; internal faces share the apex-apex edge.
        phi1, phi2 = {}, {}  # new-tet labels -> old t1 / t2 labels
        for k in range(3):
            phi1[k] = (f1, eq[k], eq[(k + 1) % 3], eq[(k + 2) % 3])
            phi2[k] = tuple(sigma[v] for v in phi1[k])
            phi2[k] = (phi2[k][1], phi2[k][0]) + phi2[k][2:]
        # where each old boundary face reappears, with old->new vertex map
        reloc = {}
        for k in range(3):
            inv1 = [0] * 4
            inv2 = [0] * 4
            for i in range(4):
                inv1[phi1[k][i]] = i
                inv2[phi2[k][i]] = i
            reloc[(t1, eq[k])] = (base + k, 1, tuple(inv1))
            reloc[(t2, sigma[eq[k]])] = (base + k, 0, tuple(inv2))

        done = set()
        changed = set(range(base, base + 3))

        def target(told, fold, perm):
            """Old gluing target -> new (tet, face, perm)."""
            if (told, fold) in reloc:
                tn, fn, inv = reloc[(told, fold)]
                return tn, fn, tuple(inv[p] for p in perm)
            return new_id[told], fold, perm

        for t in keep:
            for f in range(4):
                told, fold, perm = self.glue[(t, f)]
                if (told, fold) in ((t1, f1), (t2, f2)):
                    raise AssertionError("unreachable: interior face")
                tn, fn, pn = target(told, fold, perm)
                if (told, fold) in reloc:
                    changed.add(new_id[t])
                key = frozenset([(new_id[t], f), (tn, fn)])
                if key not in done:
                    out.add_gluing(new_id[t], f, tn, fn, pn)
                    done.add(key)
        for k in range(3):
            # internal gluing N_k face 2 <-> N_{k+1} face 3
            out.add_gluing(base + k, 2, base + (k + 1) % 3, 3, (0, 1, 3, 2))
            # external faces 1 (side of t1) and 0 (side of t2)
            for face_new, phi, tsrc in ((1, phi1[k], t1), (0, phi2[k], t2)):
                fsrc = phi[face_new]  # face opposite the far-side apex
                told, fold, perm = self.glue[(tsrc, fsrc)]
                comp = tuple(perm[phi[v]] for v in range(4))
                tn, fn, pn = target(told, fold, comp)
                key = frozenset([(base + k, face_new), (tn, fn)])
                if key not in done:
                    out.add_gluing(base + k, face_new, tn, fn, pn)
                    done.add(key)
        out._old2new = new_id
        out._changed = changed
        return out

    # -- 3-2 move --------------------------------------------------------------

    def three_two(self, eclass: list) -> "Triangulation":
        """Replace the three tetrahedra around a valence-3 edge by two.

        Inverse of the 2-3 move; valid whenever the edge has exactly three
        incidences lying in three distinct tetrahedra.
        """
        if len(eclass) != 3:
            raise ValueError("edge valence is not 3")
        if len({t for t, _ in eclass}) != 3:
            raise ValueError("edge star revisits a tetrahedron")
        t0, pair0 = eclass[0]
        a, b = sorted(pair0)
        others = sorted(v for v in range(4) if v not in (a, b))
        for first in (others, others[::-1]):
            try:
                return self._three_two(t0, a, b, first[0], first[1])
            except ValueError:
                continue
        raise ValueError("3-2 move failed in both orientations")

    def _three_two(self, t0, a, b, c, d) -> "Triangulation":
        # canonical star tet N_k: 0 = u, 1 = w, 2 = eq[k+1], 3 = eq[k+2];
        # psi_k maps canonical labels of N_k to actual labels of tet[k].
        tets = [t0]
        psi = [(a, b, c, d)]
        for k in range(2):
            t, p = tets[k], psi[k]
            t2, f2, rho = self.glue[(t, p[2])]  # exit opposite eq[k+1]
            tets.append(t2)
            psi.append((rho[p[0]], rho[p[1]], rho[p[3]], f2))
        # closing consistency: N_2 exits opposite eq[0] back into N_0
        t, p = tets[2], psi[2]
        t2, f2, rho = self.glue[(t, p[2])]
        if t2 != tets[0] or f2 != psi[0][3] or \
                rho[p[0]] != psi[0][0] or rho[p[1]] != psi[0][1]:
            raise ValueError("edge star does not close canonically")
        # new tets: T_u = tets' worth of the u apex (label 3 = u, labels
        # 0..2 = eq[0..2]); T_w mirrored with equator labels 1 and 2 swapped
        tau = (0, 2, 1, 3)
        chi1 = {k: (3, k, (k + 1) % 3, (k + 2) % 3) for k in range(3)}
        chi2 = {k: (tau[k], 3, tau[(k + 1) % 3], tau[(k + 2) % 3])
                for k in range(3)}
        keep = [t for t in range(self.n) if t not in tets]
        new_id = {t: i for i, t in enumerate(keep)}
        base = len(keep)
        tu, tw = base, base + 1
        reloc = {}
        for k in range(3):
            for side, chi in ((1, chi1[k]), (0, chi2[k])):
                inv = [0] * 4
                for i in range(4):
                    inv[psi[k][i]] = chi[i]
                newt = tu if side == 1 else tw
                newf = k if side == 1 else tau[k]
                reloc[(tets[k], psi[k][side])] = (newt, newf, tuple(inv))
        out = Triangulation(base + 2)
        done = set()
        changed = {tu, tw}

        def target(told, fold, perm):
            if (told, fold) in reloc:
                tn, fn, conv = reloc[(told, fold)]
                return tn, fn, tuple(conv[x] for x in perm)
            return new_id[told], fold, perm

        for t in keep:
            for f in range(4):
                told, fold, perm = self.glue[(t, f)]
                tn, fn, pn = target(told, fold, perm)
                if (told, fold) in reloc:
                    changed.add(new_id[t])
                key = frozenset([(new_id[t], f), (tn, fn)])
                if key not in done:
                    out.add_gluing(new_id[t], f, tn, fn, pn)
                    done.add(key)
        out.add_gluing(tu, 3, tw, 3, tau)
        for k in range(3):
            for side, chi in ((1, chi1[k]), (0, chi2[k])):
                src = (tu, k) if side == 1 else (tw, tau[k])
                told, fold, perm = self.glue[(tets[k], psi[k][side])]
                inv = [0] * 4
                for i in range(4):
                    inv[chi[i]] = psi[k][i]
                comp = tuple(perm[inv[x]] for x in range(4))
                tn, fn, pn = target(told, fold, comp)
                key = frozenset([src, (tn, fn)])
                if key not in done:
                    out.add_gluing(src[0], src[1], tn, fn, pn)
                    done.add(key)
        out._old2new = new_id
        out._changed = changed
        return out

    # -- 2-0 move --------------------------------------------------------------

    def two_zero(self, eclass: list) -> "Triangulation":
        """Squash the two tetrahedra around a valence-2 edge.

        The two tetrahedra form a pillow glued along the two faces that
        contain the edge; flattening it joins the outer faces of one
        tetrahedron to those of the other.  Requires a coherent vertex
        correspondence between the two tetrahedra and rejects squashes
        that merge or pinch the vertex links.
        """
        if len(eclass) != 2:
            raise ValueError("edge valence is not 2")
        (ta, pa), (tb, _pb) = eclass
        if ta == tb:
            raise ValueError("edge star revisits a tetrahedron")
        a, b = sorted(pa)
        c, d = (v for v in range(4) if v not in (a, b))
        gc = self.glue[(ta, c)]
        gd = self.glue[(ta, d)]
        if gc[0] != tb or gd[0] != tb:
            raise ValueError("pillow faces are not glued to the partner")
        sc, sd = gc[2], gd[2]
        if sc[a] != sd[a] or sc[b] != sd[b]:
            raise ValueError("incoherent pillow identification")
        tau = [0] * 4
        tau[a], tau[b], tau[c], tau[d] = sc[a], sc[b], sd[c], sc[d]
        if sorted(tau) != [0, 1, 2, 3] or _parity(tau) == 0:
            raise ValueError("pillow squash is not orientation-coherent")
        tau = tuple(tau)
        inv = [0] * 4
        for i, x in enumerate(tau):
            inv[x] = i
        hop = {ta: (dict.fromkeys((a, b)), tau),
               tb: (dict.fromkeys((tau[a], tau[b])), tuple(inv))}

        keep = [t for t in range(self.n) if t not in (ta, tb)]
        new_id = {t: i for i, t in enumerate(keep)}
        out = Triangulation(len(keep))
        done = set()
        changed = set()
        for t in keep:
            for f in range(4):
                if (t, f) in done:
                    continue
                t2, f2, perm = self.glue[(t, f)]
                hops = 0
                while t2 in hop:
                    hops += 1
                    partner = tb if t2 == ta else ta
                    outer, sig = hop[t2]
                    if f2 not in outer:
                        raise ValueError("chase entered a squashed face")
                    f2 = sig[f2]
                    perm = tuple(sig[p] for p in perm)
                    t3, f3, nxt = self.glue[(partner, f2)]
                    perm = tuple(nxt[p] for p in perm)
                    t2, f2 = t3, f3
                    if (t2, f2) == (t, f):
                        raise ValueError("chase closed on itself")
                if hops:
                    changed.add(new_id[t])
                    changed.add(new_id[t2])
                out.add_gluing(new_id[t], f, new_id[t2], f2, perm)
                done.add((t, f))
                done.add((t2, f2))
        if sorted(out.link_euler(c2) for c2 in out.vertex_classes()) != \
                sorted(self.link_euler(c2) for c2 in self.vertex_classes()):
            raise ValueError("pillow squash altered the vertex links")
        out._old2new = new_id
        out._changed = changed
        return out

    # -- cusp completeness ---------------------------------------------------

    def _dual_neighbor(self, node, f):
        """Cross side f of link triangle node=(t,v): returns (node2, f2)."""
        t, v = node
        t2, f2, perm = self.glue[(t, f)]
        return (t2, perm[v]), f2

    def _step_contribution(self, node, f_in, f_out, row, flip):
        """Multiply row by the pivot of crossing node from side f_in to f_out.

        Returns the sign factor (-1 for a U-turn, else +1).
        """
        t, v = node
        if f_in == f_out:  # U-turn: derivative factor -1
            return -1
        corner = 6 - v - f_in - f_out  # the corner shared by both sides
        # CCW endpoints of the entry side (the side opposite corner f_in):
        cyc = _CCW[v]
        ends = [c for c in cyc if c != f_in]
        # in cyclic CCW corner order, the side opposite f_in is traversed
        # from the corner that follows f_in to the one that precedes it
        i_fin = cyc.index(f_in)
        first_ccw = cyc[(i_fin + 1) % 3]
        eps = 1 if corner == first_ccw else -1
        key = (t, _PAIR_TYPE[frozenset((v, corner))])
        row[key] = row.get(key, 0) + eps
        return 1

    def cusp_rows_for(self, vclass) -> list[CuspRow]:
        return self._cusp_cycles(vclass)[0]

    def _cusp_cycles(self, vclass):
        """Fundamental cycles of the cusp link's dual graph.

        Returns (rows, arc_dir) where rows[j] is the completeness row of
        the j-th fundamental cycle and arc_dir maps the cycle's non-tree
        arc (a frozenset of two (node, face) flags) to (j, start_flag):
        cycle j traverses that arc leaving through start_flag.
        """
        nodes = set(vclass)
        start = min(nodes)
        parent: dict = {}  # node -> (parent node, exit face at parent, entry face)
        seen = {start}
        queue = [start]
        tree_arcs = set()
        while queue:
            node = queue.pop(0)
            t, v = node
            for f in range(4):
                if f == v:
                    continue
                nb, f2 = self._dual_neighbor(node, f)
                if nb not in seen:
                    seen.add(nb)
                    parent[nb] = (node, f, f2)
                    tree_arcs.add(frozenset(((node, f), (nb, f2))))
                    queue.append(nb)
        assert seen == nodes, "cusp link is disconnected"

        def exits_root_to(node):
            """[(node, exit face)] along the tree path root -> node."""
            out = []
            while node != start:
                p, f, f2 = parent[node]
                out.append((p, f))
                node = p
            out.reverse()
            return out

        rows = []
        arc_dir: dict = {}
        for node in sorted(nodes):
            t, v = node
            for f in range(4):
                if f == v:
                    continue
                nb, f2 = self._dual_neighbor(node, f)
                arc = frozenset(((node, f), (nb, f2)))
                if arc in tree_arcs or arc in arc_dir:
                    continue
                arc_dir[arc] = (len(rows), (node, f))
                # cyclic walk: root -> node, jump, nb -> root
                walk = exits_root_to(node) + [(node, f)]
                back = []
                cur = nb
                while cur != start:
                    p, fp, f2p = parent[cur]
                    back.append((cur, f2p))  # leave cur through its entry face
                    cur = p
                walk += back
                # entry faces from the previous step's gluing, cyclically
                row: dict = {}
                sign = 1
                m = len(walk)
                for i, (nd, f_out) in enumerate(walk):
                    prev_nd, prev_f = walk[(i - 1) % m]
                    nb2, f_in = self._dual_neighbor(prev_nd, prev_f)
                    assert nb2 == nd, "walk is not contiguous"
                    sign *= self._step_contribution(nd, f_in, f_out, row, None)
                rows.append(CuspRow(exponents=row, sign=sign))
        return rows, arc_dir

    def _cusp_relations(self, vclass, arc_dir, n_cycles):
        """Homology relations among the fundamental cycles.

        Each vertex of the cusp link triangulation is a disk; the dual
        walk around it is null-homotopic, so its signed usage of non-tree
        arcs is a relation vector in Z^n_cycles.  In the basis of
        fundamental cycles (tree arcs contract to a point) the homology
        class of any closed dual walk is exactly that signed usage.
        """
        uf = self._corner_uf()
        seen_classes = set()
        relations = []
        for (t, v) in sorted(vclass):
            for i in range(4):
                if i == v:
                    continue
                rep = uf.find((t, v, i))
                if rep in seen_classes:
                    continue
                seen_classes.add(rep)
                vec = [0] * n_cycles
                sides = [f for f in range(4) if f not in (v, i)]
                state = (t, v, i, min(sides))
                start = state
                for _ in range(6 * self.n):
                    tt, vv, ii, f_out = state
                    (t2, v2), f_in = self._dual_neighbor((tt, vv), f_out)
                    arc = frozenset((((tt, vv), f_out), ((t2, v2), f_in)))
                    hit = arc_dir.get(arc)
                    if hit is not None:
                        j, start_flag = hit
                        vec[j] += 1 if ((tt, vv), f_out) == start_flag else -1
                    perm = self.glue[(tt, f_out)][2]
                    i2 = perm[ii]
                    state = (t2, v2, i2, 6 - v2 - i2 - f_in)
                    if state == start:
                        break
                else:
                    raise RuntimeError("cusp vertex walk did not close")
                relations.append(vec)
        return relations

    def cusp_basis_rows(self, vclass):
        """Two completeness rows forming a Z-basis of the cusp's
        peripheral homology, plus all fundamental-cycle rows.

        Diagonalising the relation matrix over Z yields the free part of
        the cycle lattice modulo relations; for a torus cusp it must be
        Z^2 and the two returned rows generate it.  A basis (rather than
        an arbitrary independent pair, which may span a finite-index
        sublattice) rules out spurious Newton roots whose peripheral
        holonomy is a nontrivial root of unity (cone/Dehn-surgery type
        solutions that satisfy the pair but not the full cycle set).
        """
        rows, arc_dir = self._cusp_cycles(vclass)
        n_cycles = len(rows)
        relations = self._cusp_relations(vclass, arc_dir, n_cycles)
        mat = [[rel[i] for rel in relations] for i in range(n_cycles)]
        u_inv, diag = _diagonalize_columns(mat)
        free = [i for i in range(n_cycles) if diag[i] == 0]
        if len(free) != 2 or any(d not in (0, 1, -1) for d in diag):
            raise ValueError("peripheral homology of the cusp is not Z^2")
        basis = []
        for i in free:
            exps: dict = {}
            sign = 1
            for j in range(n_cycles):
                w = u_inv[j][i]
                if not w:
                    continue
                for key, e in rows[j].exponents.items():
                    exps[key] = exps.get(key, 0) + w * e
                if w % 2 and rows[j].sign == -1:
                    sign = -sign
            basis.append(CuspRow(
                exponents={k: v for k, v in exps.items() if v}, sign=sign))
        return basis, rows

    # -- system --------------------------------------------------------------

    def gluing_system(self, torus_classes=None,
                      unimodular=True) -> GluingSystem:
        edge_rows = []
        for cls in self.edge_classes():
            row: dict = {}
            for (t, pair) in cls:
                key = (t, _PAIR_TYPE[pair])
                row[key] = row.get(key, 0) + 1
            edge_rows.append(row)
        cusp_rows = []
        if torus_classes is None:
            torus_classes = [vc for vc in self.vertex_classes()
                             if self.link_euler(vc) == 0]
        # Per torus cusp keep a Z-basis pair of the peripheral homology
        # (see cusp_basis_rows); the remaining fundamental cycles are
        # redundant at a genuine solution and kept as extra rows.
        echelon = _RationalEchelon()
        for row in edge_rows:
            echelon.add(row)
        extra_rows = []
        for vc in torus_classes:
            if unimodular:
                basis, cycles = self.cusp_basis_rows(vc)
                for r in basis:
                    if not echelon.add(r.exponents):
                        raise ValueError(
                            "peripheral basis row is dependent on edge rows")
                    cusp_rows.append(r)
                extra_rows.extend(cycles)
                continue
            # loose variant: any pair independent of the edge rows (may
            # span a finite-index sublattice, so cone-type roots satisfy
            # it -- useful only for the non-hyperbolicity probe)
            picked = 0
            for r in self.cusp_rows_for(vc):
                if picked < 2 and echelon.add(r.exponents):
                    cusp_rows.append(r)
                    picked += 1
                else:
                    extra_rows.append(r)
            if picked != 2:
                raise ValueError(
                    f"cusp yields {picked} independent completeness rows, "
                    "expected 2")
        return GluingSystem(n_tets=self.n, edge_rows=edge_rows,
                            cusp_rows=cusp_rows, extra_rows=extra_rows)
