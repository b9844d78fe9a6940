"""
Oriented ribbon graphs as permutation triples.

Half-edges are ``0 .. 2n-1`` internally and ``1 .. 2n`` in cycle
notation.  The triple satisfies ``s0 * s1 * s2 = 1`` with right-to-left
composition (``s2`` applied first).  Vertices carrying no half-edges are
kept as a separate count so that spanning subgraphs keep every vertex.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .diagram import SMOOTHING, Diagram, State, outer_face, state_circles
from .polynomial import LaurentPoly, MultiPoly, delta, substitute

__all__ = [
    "RibbonGraph",
    "QuasiTree",
    "ChordDiagram",
    "RibbonError",
    "SpecializationMismatch",
    "parse_cycles",
    "cycles_str",
    "compose",
    "inverse",
    "from_permutations",
    "all_A_ribbon_graph",
    "state_ribbon_graph",
    "brt_polynomial",
    "bracket_via_brt",
    "quasi_trees",
    "q_polynomial",
    "chord_diagram",
    "quasitree_genus_via_rank",
    "chord_activities",
    "gf2_rank",
]

Perm = tuple[int, ...]


class RibbonError(ValueError):
    """Invalid permutation data."""


class SpecializationMismatch(AssertionError):
    """The quasi-tree count disagrees with the polynomial specialisation."""


# -- permutations ------------------------------------------------------------

def parse_cycles(text: str | Iterable[Iterable[int]], size: int | None = None) -> Perm:
    """``"(1 2 3 4)(5 6)"``, ``"(1234)(56)"`` or ``[[1,2,3,4],[5,6]]`` (1-based)
    to a 0-based tuple."""
    if isinstance(text, str):
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            body = body.strip()
            # compact form "(1234)": one digit per point
            parts = list(body) if body.isdigit() else re.split(r"[\s,]+", body)
            cycles.append([int(x) for x in parts if x])
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise RibbonError(f"bad cycle notation {text!r}")
    else:
        cycles = [list(c) for c in text]
    points = [x for c in cycles for x in c]
    if len(points) != len(set(points)):
        raise RibbonError("a point appears in two cycles")
    n = size if size is not None else max(points, default=0)
    perm = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            if not (1 <= a <= n and 1 <= b <= n):
                raise RibbonError(f"point out of range 1..{n}")
            perm[a - 1] = b - 1
    return tuple(perm)


def cycles(p: Perm) -> list[list[int]]:
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen:
            continue
        c = []
        x = start
        while x not in seen:
            seen.add(x)
            c.append(x)
            x = p[x]
        out.append(c)
    return out


def cycles_str(p: Perm, fixed: bool = False) -> str:
    parts = [c for c in cycles(p) if fixed or len(c) > 1]
    if not parts:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in parts)


def compose(p: Perm, q: Perm) -> Perm:
    """``p * q``: apply ``q`` first."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


# -- ribbon graphs -------------------------------------------------------------

@dataclass(frozen=True)
class RibbonGraph:
    s0: Perm
    s1: Perm
    s2: Perm
    isolated: int = 0
    signs: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.s0)

    @cached_property
    def edge_list(self) -> list[tuple[int, int]]:
        """Edges as half-edge pairs, ordered by their smaller half-edge."""
        return sorted(tuple(sorted(c)) for c in cycles(self.s1))

    @cached_property
    def edge_of(self) -> dict[int, int]:
        return {h: k for k, pair in enumerate(self.edge_list) for h in pair}

    @cached_property
    def vertex_of(self) -> dict[int, int]:
        return {h: k for k, c in enumerate(cycles(self.s0)) for h in c}

    @property
    def v(self) -> int:
        return len(cycles(self.s0)) + self.isolated

    @property
    def e(self) -> int:
        return len(self.s0) // 2

    @property
    def f(self) -> int:
        return len(cycles(self.s2)) + self.isolated

    @cached_property
    def k(self) -> int:
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in (self.s0, self.s1):
            for i, j in enumerate(p):
                parent[find(i)] = find(j)
        return len({find(i) for i in range(self.size)}) + self.isolated

    @property
    def genus(self) -> int:
        twice = 2 * self.k - self.v + self.e - self.f
        if twice < 0 or twice % 2:
            raise AssertionError(f"Euler formula gives non-integral genus {twice}/2")
        return twice // 2

    @property
    def nullity(self) -> int:
        return self.e - self.v + self.k

    @property
    def rank(self) -> int:
        return self.v - self.k

    def loops(self) -> list[int]:
        """Edges whose two half-edges sit at the same vertex."""
        return [k for k, (a, b) in enumerate(self.edge_list) if self.vertex_of[a] == self.vertex_of[b]]

    def sub_stats(self, keep: Iterable[int]) -> tuple[int, int, int, int]:
        """``(v, e, f, k)`` of the spanning subgraph on edge indices ``keep``."""
        keep = set(keep)
        alive = [False] * self.size
        for k in keep:
            a, b = self.edge_list[k]
            alive[a] = alive[b] = True
        inv0 = inverse(self.s0)
        # induced rotation: skip removed half-edges
        sub_inv0 = {}
        for h in range(self.size):
            if alive[h]:
                x = inv0[h]
                while not alive[x]:
                    x = inv0[x]
                sub_inv0[h] = x
        seen = set()
        faces = 0
        for h in sub_inv0:
            if h in seen:
                continue
            faces += 1
            x = h
            while x not in seen:
                seen.add(x)
                x = self.s1[sub_inv0[x]]
        nvert = self.v
        vert = self.vertex_of
        parent = list(range(nvert))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = nvert
        for k in keep:
            a, b = self.edge_list[k]
            ra, rb = find(vert[a]), find(vert[b])
            if ra != rb:
                parent[ra] = rb
                comps -= 1
        dead_vertices = sum(
            1 for c in cycles(self.s0) if not any(alive[h] for h in c)
        ) + self.isolated
        return nvert, len(keep), faces + dead_vertices, comps

    def sub_genus(self, keep: Iterable[int]) -> int:
        v, e, f, k = self.sub_stats(keep)
        return (2 * k - v + e - f) // 2

    def to_json(self) -> dict:
        def as_cycles(p):
            return [[x + 1 for x in c] for c in cycles(p)]

        out = {"s0": as_cycles(self.s0), "s1": as_cycles(self.s1), "s2": as_cycles(self.s2)}
        if self.isolated:
            out["isolated"] = self.isolated
        if self.signs is not None:
            out["signs"] = list(self.signs)
        return out


def from_permutations(s0, s1, s2=None, isolated: int = 0, signs=None) -> RibbonGraph:
    """Validated ribbon graph; ``s2`` is derived from ``s0 s1 s2 = 1`` when omitted.

    Each permutation may be cycle notation (string or nested lists, 1-based)
    or a flat 0-based image tuple.
    """
    given = [p for p in (s0, s1, s2) if p is not None]
    size = max(len(_coerce_perm(p, None)) for p in given)
    p0, p1 = _coerce_perm(s0, size), _coerce_perm(s1, size)
    n = size
    if any(p1[i] == i or p1[p1[i]] != i for i in range(n)):
        raise RibbonError("s1 must be a fixed-point-free involution")
    if s2 is None:
        p2 = compose(p1, inverse(p0))
    else:
        p2 = _coerce_perm(s2, n)
        if compose(p0, compose(p1, p2)) != tuple(range(n)):
            raise RibbonError("s0 s1 s2 is not the identity")
    return RibbonGraph(p0, p1, p2, isolated, tuple(signs) if signs is not None else None)


def _coerce_perm(p, size: int | None) -> Perm:
    if isinstance(p, str):
        return parse_cycles(p, size)
    p = list(p)
    if any(not isinstance(x, int) for x in p):
        return parse_cycles(p, size)
    if not _is_perm(p):
        raise RibbonError("not a permutation of 0..n-1")
    if size is not None and len(p) != size:
        raise RibbonError("permutations act on sets of different sizes")
    return tuple(p)


# -- ribbon graphs of link diagrams -------------------------------------------

def _state_regions(D: Diagram, s: State) -> tuple[list[int], dict]:
    """Union the diagram faces merged by the smoothings of ``s``."""
    parent = list(range(len(D.faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, ch in enumerate(s.choices):
        p = 1 if ch == "A" else 0
        a, b = find(D.face_of[(i, p)]), find(D.face_of[(i, p + 2)])
        parent[a] = b
    return [find(f) for f in range(len(D.faces))], find


def state_ribbon_graph(D: Diagram, s: State, outer_arc: int | None = None) -> RibbonGraph:
    """Signed ribbon graph of the state ``s``: a vertex per state circle, an
    edge per crossing (``+`` for B-smoothed, ``-`` for A-smoothed).

    Half-edges ``2i-1, 2i`` (1-based) sit on the two smoothing arcs of
    crossing ``i``; circles carry the admissible orientation, i.e. they
    bound the regions of one colour of the chessboard colouring of the
    state, with the outer region left uncoloured.
    """
    D.require_connected()
    n = D.c
    signs = tuple(1 if ch == "B" else -1 for ch in s.choices)
    if n == 0:
        return RibbonGraph((), (), (), isolated=1, signs=signs)
    circles = state_circles(D, s)
    region, _ = _state_regions(D, s)
    face_region = region

    def merged(i):
        p = 1 if s.choices[i] == "A" else 0
        return face_region[D.face_of[(i, p)]]

    def left_region(i, p, q):
        if (p, q) in SMOOTHING[s.choices[i]]:
            return merged(i)
        # walking the arc backwards puts its corner on the left
        return face_region[D.face_of[(i, q)]]

    def right_region(i, p, q):
        if (p, q) in SMOOTHING[s.choices[i]]:
            return face_region[D.face_of[(i, p)]]
        return merged(i)

    # chessboard colouring of the regions; circles are the adjacencies
    adj: dict[int, set[int]] = {}
    for circle in circles:
        a, b = left_region(*circle[0]), right_region(*circle[0])
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    outer = face_region[outer_face(D, outer_arc)]
    colour = {outer: 0}
    stack = [outer]
    while stack:
        r = stack.pop()
        for t in adj.get(r, ()):
            if t not in colour:
                colour[t] = 1 - colour[r]
                stack.append(t)
            elif colour[t] == colour[r]:
                raise AssertionError("state regions are not two-colourable")

    def mark(i, p, q):
        pairs = SMOOTHING[s.choices[i]]
        which = 0 if {p, q} == set(pairs[0]) else 1
        return 2 * i + which

    s0 = [0] * (2 * n)
    for circle in circles:
        marks = [mark(*step) for step in circle]
        if colour[left_region(*circle[0])] != 1:
            marks.reverse()
        for a, b in zip(marks, marks[1:] + marks[:1]):
            s0[a] = b
    s1 = tuple(k ^ 1 for k in range(2 * n))
    s0 = tuple(s0)
    s2 = compose(s1, inverse(s0))
    return RibbonGraph(s0, s1, s2, D.loops, signs)


def all_A_ribbon_graph(D: Diagram, outer_arc: int | None = None) -> RibbonGraph:
    g = state_ribbon_graph(D, State.all_A(D.c), outer_arc)
    return RibbonGraph(g.s0, g.s1, g.s2, g.isolated)


# -- polynomials ---------------------------------------------------------------

def _subgraph_profile(g: RibbonGraph) -> dict[tuple[int, int, int], int]:
    """Counts of spanning subgraphs by ``(k(H) - k(G), n(H), g(H))``."""
    kg = g.k
    counts: dict[tuple[int, int, int], int] = {}
    for mask in range(1 << g.e):
        keep = [k for k in range(g.e) if mask >> k & 1]
        v, e, f, k = g.sub_stats(keep)
        key = (k - kg, e - v + k, (2 * k - v + e - f) // 2)
        counts[key] = counts.get(key, 0) + 1
    return counts


def brt_polynomial(g: RibbonGraph) -> MultiPoly:
    """``C(G; X, Y, Z)`` summed over all ``2^e`` spanning subgraphs."""
    names = ("X", "Y", "Z")
    X = MultiPoly.gen(names, "X")
    total = MultiPoly(names)
    powers: dict[int, MultiPoly] = {}
    for (a, nul, gen), count in _subgraph_profile(g).items():
        if a not in powers:
            powers[a] = (X - 1) ** a
        mono = MultiPoly(names, {(0, nul, gen): count})
        total = total + powers[a] * mono
    return total


def bracket_via_brt(D: Diagram, outer_arc: int | None = None) -> LaurentPoly:
    """Kauffman bracket as ``d^(k-1) A^(n-r) C(G_A; -A^4, A^-2 d, d^-2)`` at ``d = delta``."""
    g = all_A_ribbon_graph(D, outer_arc)
    C = brt_polynomial(g)
    ring = ("A", "d")
    A = MultiPoly.gen(ring, "A", laurent=ring)
    d = MultiPoly.gen(ring, "d", laurent=ring)
    value = C.subs({"X": -(A ** 4), "Y": A ** -2 * d, "Z": d ** -2})
    value = value * d ** (g.k - 1) * A ** (g.nullity - g.rank)
    if any(mono[1] < 0 for mono in value.terms):
        raise AssertionError("negative power of delta survived the specialisation")
    return substitute(value, {"A": LaurentPoly.monomial(1), "d": delta()})


@dataclass(frozen=True)
class QuasiTree:
    edges: frozenset[int]
    genus: int

    def __contains__(self, k):
        return k in self.edges


def quasi_trees(g: RibbonGraph) -> list[QuasiTree]:
    """Spanning subgraphs with exactly one face."""
    out = []
    for mask in range(1 << g.e):
        keep = [k for k in range(g.e) if mask >> k & 1]
        v, e, f, k = g.sub_stats(keep)
        if f == 1:
            out.append(QuasiTree(frozenset(keep), (2 * k - v + e - f) // 2))
    return out


def q_polynomial(g: RibbonGraph) -> LaurentPoly:
    """Quasi-tree genus polynomial ``sum_j a_j t^j``, checked against
    ``C(G; 1, Y, t Y^-2)`` at ``Y = 0``."""
    counts: dict[int, int] = {}
    for Q in quasi_trees(g):
        counts[Q.genus] = counts.get(Q.genus, 0) + 1
    enumerated = LaurentPoly(counts, "t")

    ring = ("t", "Y")
    t = MultiPoly.gen(ring, "t", laurent=ring)
    Y = MultiPoly.gen(ring, "Y", laurent=ring)
    special = brt_polynomial(g).subs({"X": 1, "Y": Y, "Z": t * Y ** -2})
    if any(e < 0 for mono in special.terms for e in mono):
        raise SpecializationMismatch("C(G;1,Y,tY^-2) is not a polynomial in t and Y")
    at_zero = LaurentPoly({m[0]: c for m, c in special.terms.items() if m[1] == 0}, "t")
    if at_zero != enumerated:
        raise SpecializationMismatch(f"enumeration {enumerated} vs specialisation {at_zero}")
    return enumerated


# -- chord diagrams --------------------------------------------------------------

@dataclass(frozen=True)
class ChordDiagram:
    """Marks around a circle; chord ``k`` joins the two half-edges of edge ``k``."""

    marks: tuple[int, ...]
    chords: tuple[tuple[int, int], ...]

    @cached_property
    def position(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.marks)}

    def crosses(self, a: int, b: int) -> bool:
        pos = self.position
        x1, x2 = sorted(pos[h] for h in self.chords[a])
        y1, y2 = (pos[h] for h in self.chords[b])
        return (x1 < y1 < x2) != (x1 < y2 < x2)

    def intersection_graph(self, subset: Iterable[int] | None = None) -> dict[int, set[int]]:
        nodes = sorted(subset) if subset is not None else list(range(len(self.chords)))
        return {a: {b for b in nodes if b != a and self.crosses(a, b)} for a in nodes}

    def to_json(self) -> list[int]:
        return [m + 1 for m in self.marks]


def chord_diagram(g: RibbonGraph, Q: QuasiTree) -> ChordDiagram:
    inside = {h for k in Q.edges for h in g.edge_list[k]}
    inv2 = inverse(g.s2)
    sigma = [g.s0[h] if h not in inside else inv2[h] for h in range(g.size)]
    marks = []
    x = 0
    seen = set()
    while g.size and x not in seen:
        seen.add(x)
        marks.append(x)
        x = sigma[x]
    if len(marks) != g.size:
        raise AssertionError("quasi-tree boundary is not a single cycle")
    return ChordDiagram(tuple(marks), tuple(g.edge_list))


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over the two-element field of row bitmasks."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def quasitree_genus_via_rank(C: ChordDiagram, Q: QuasiTree, g: RibbonGraph | None = None) -> int:
    """Half the GF(2) rank of the intersection matrix of the chords of ``Q``."""
    nodes = sorted(Q.edges)
    index = {k: i for i, k in enumerate(nodes)}
    graph = C.intersection_graph(nodes)
    rows = [sum(1 << index[b] for b in graph[a]) for a in nodes]
    r = gf2_rank(rows)
    if r % 2:
        raise AssertionError("intersection matrix has odd rank")
    genus = r // 2
    euler = Q.genus if g is None else g.sub_genus(Q.edges)
    if genus != euler:
        raise AssertionError(f"rank genus {genus} differs from Euler genus {euler}")
    return genus


def chord_activities(
    C: ChordDiagram, Q: QuasiTree, tait_signs: Sequence[int] | None = None
) -> tuple[tuple[bool, ...], int | None]:
    """Live flags per chord and the grading ``u(Q)``.

    A chord is live when it crosses no lower chord.  ``u(Q)`` needs the
    Tait edge signs: the matching spanning tree is ``Q`` with the positive
    edges toggled, and ``u`` counts live edges as ``+1`` for positive tree
    edges and negative non-tree edges, ``-1`` for the other two kinds.
    """
    live = tuple(
        not any(C.crosses(a, b) for b in range(a)) for a in range(len(C.chords))
    )
    if tait_signs is None:
        return live, None
    u = 0
    for k, (is_live, sign) in enumerate(zip(live, tait_signs)):
        if not is_live:
            continue
        in_tree = (k in Q.edges) != (sign > 0)
        u += 1 if in_tree == (sign > 0) else -1
    return live, u
