"""
Tait graphs, spanning trees and Tutte activities.

Edges of the Tait graph are indexed by crossing; that index is the edge
order used for activities unless another order is passed explicitly.
Activity letters are ASCII: ``L D l d`` for positive edges, with a
trailing ``'`` for negative ones (``"L'"`` is a live negative tree edge).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import Diagram, PDError, faces_and_shading
from .polynomial import LaurentPoly, MultiPoly

__all__ = [
    "Edge",
    "SignedMultigraph",
    "SpanningTree",
    "tait_graph",
    "spanning_trees",
    "activity_word",
    "parse_word",
    "word_str",
    "mu",
    "gradings",
    "thistlethwaite_bracket",
    "tutte_polynomial",
    "diagram_from_plane_graph",
]


@dataclass(frozen=True)
class Edge:
    crossing: int
    u: int
    v: int
    sign: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class SignedMultigraph:
    num_vertices: int
    edges: tuple[Edge, ...]

    @property
    def e_plus(self) -> int:
        return sum(1 for e in self.edges if e.sign > 0)

    @property
    def e_minus(self) -> int:
        return sum(1 for e in self.edges if e.sign < 0)

    def __len__(self):
        return len(self.edges)

    def is_connected(self) -> bool:
        return _count_components(self.num_vertices, [(e.u, e.v) for e in self.edges]) == 1

    def with_signs(self, signs: Sequence[int]) -> "SignedMultigraph":
        return SignedMultigraph(
            self.num_vertices,
            tuple(Edge(e.crossing, e.u, e.v, s) for e, s in zip(self.edges, signs)),
        )


@dataclass(frozen=True)
class SpanningTree:
    edges: frozenset[int]

    def __contains__(self, k):
        return k in self.edges

    def __len__(self):
        return len(self.edges)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _count_components(n: int, pairs: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))
    comps = n
    for u, v in pairs:
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps


def tait_graph(D: Diagram, outer_arc: int | None = None, convention: str = "A") -> SignedMultigraph:
    """Tait graph over the shaded faces of the canonical shading."""
    D.require_connected()
    if D.c == 0:
        return SignedMultigraph(1, ())
    shading = faces_and_shading(D, outer_arc, convention)
    ids: dict[int, int] = {}
    edges = []
    for i, sign in enumerate(shading.signs):
        # shaded corners are 1, 3 or 0, 2 depending on the colouring
        p = 1 if D.face_of[(i, 1)] in shading.shaded else 0
        ends = []
        for q in (p, p + 2):
            f = D.face_of[(i, q)]
            ids.setdefault(f, len(ids))
            ends.append(ids[f])
        edges.append(Edge(i, ends[0], ends[1], sign))
    return SignedMultigraph(len(ids), tuple(edges))


def spanning_trees(G: SignedMultigraph) -> list[SpanningTree]:
    """All spanning trees, by include/exclude recursion over the edge order."""
    if not G.is_connected():
        raise ValueError("spanning trees need a connected graph")
    n = G.num_vertices
    ends = [(e.u, e.v) for e in G.edges]
    m = len(ends)
    out: list[SpanningTree] = []

    def reachable(comp, k):
        labels = sorted(set(comp))
        index = {c: j for j, c in enumerate(labels)}
        pairs = [(index[comp[u]], index[comp[v]]) for u, v in ends[k:]]
        return _count_components(len(labels), pairs) == 1

    def rec(k, comp, chosen):
        if len(chosen) == n - 1:
            out.append(SpanningTree(frozenset(chosen)))
            return
        if k == m or not reachable(comp, k):
            return
        u, v = ends[k]
        cu, cv = comp[u], comp[v]
        if cu != cv:
            merged = tuple(cu if c == cv else c for c in comp)
            rec(k + 1, merged, chosen + (k,))
        rec(k + 1, comp, chosen)

    rec(0, tuple(range(n)), ())
    return out


def _tree_side(G: SignedMultigraph, T: SpanningTree, removed: int) -> set[int]:
    adj: dict[int, list[int]] = {v: [] for v in range(G.num_vertices)}
    for k in T.edges:
        if k == removed:
            continue
        e = G.edges[k]
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    start = G.edges[removed].u
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _tree_path(G: SignedMultigraph, T: SpanningTree, a: int, b: int) -> list[int]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(G.num_vertices)}
    for k in T.edges:
        e = G.edges[k]
        adj[e.u].append((e.v, k))
        adj[e.v].append((e.u, k))
    prev: dict[int, tuple[int, int] | None] = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        for y, k in adj[x]:
            if y not in prev:
                prev[y] = (x, k)
                stack.append(y)
    path = []
    x = b
    while prev[x] is not None:
        x, k = prev[x]
        path.append(k)
    return path


def cut(G: SignedMultigraph, T: SpanningTree, k: int) -> set[int]:
    """Edges joining the two sides of ``T - k`` (``k`` a tree edge)."""
    side = _tree_side(G, T, k)
    return {j for j, e in enumerate(G.edges) if (e.u in side) != (e.v in side)}


def cycle(G: SignedMultigraph, T: SpanningTree, k: int) -> set[int]:
    """Edges of the unique cycle of ``T + k`` (``k`` not in ``T``)."""
    e = G.edges[k]
    return set(_tree_path(G, T, e.u, e.v)) | {k}


def activity_word(
    G: SignedMultigraph, T: SpanningTree, order: Sequence[int] | None = None
) -> tuple[str, ...]:
    """One letter per edge, in edge-index order.

    ``order`` lists edge indices from lowest to highest; it defaults to the
    crossing order.
    """
    rank = {k: r for r, k in enumerate(order if order is not None else range(len(G.edges)))}
    word = []
    for k, e in enumerate(G.edges):
        if k in T:
            group = cut(G, T, k)
            letter = "L" if min(group, key=rank.__getitem__) == k else "D"
        else:
            group = cycle(G, T, k)
            letter = "l" if min(group, key=rank.__getitem__) == k else "d"
        word.append(letter if e.sign > 0 else letter + "'")
    return tuple(word)


def word_str(word: Sequence[str]) -> str:
    return "".join(word)


def parse_word(text: str) -> tuple[str, ...]:
    letters = []
    for ch in text:
        if ch == "'":
            if not letters:
                raise ValueError("bar before any letter")
            letters[-1] += "'"
        elif ch in "LDld":
            letters.append(ch)
        else:
            raise ValueError(f"bad activity letter {ch!r}")
    return tuple(letters)


# sign and A-exponent contributed by each letter
_MU = {
    "L": (-1, -3), "D": (1, 1), "l": (-1, 3), "d": (1, -1),
    "L'": (-1, 3), "D'": (1, -1), "l'": (-1, -3), "d'": (1, 1),
}


def mu(word: Sequence[str]) -> LaurentPoly:
    sign, exp = 1, 0
    for letter in word:
        s, k = _MU[letter]
        sign *= s
        exp += k
    return LaurentPoly.monomial(exp, sign)


def gradings(word: Sequence[str]) -> tuple[int, int]:
    """``(u, v)`` with ``u = #L - #l - #L' + #l'`` and ``v = #L + #D``."""
    u = word.count("L") - word.count("l") - word.count("L'") + word.count("l'")
    v = word.count("L") + word.count("D")
    return u, v


def thistlethwaite_bracket(
    D: Diagram,
    order: Sequence[int] | None = None,
    outer_arc: int | None = None,
    convention: str = "A",
) -> LaurentPoly:
    """Kauffman bracket as a sum of ``mu(T)`` over spanning trees."""
    G = tait_graph(D, outer_arc, convention)
    total = LaurentPoly({})
    for T in spanning_trees(G):
        total = total + mu(activity_word(G, T, order))
    return total


def _is_bridge(n: int, ends: list[tuple[int, int]], k: int) -> bool:
    before = _count_components(n, ends)
    return _count_components(n, ends[:k] + ends[k + 1:]) > before


def tutte_polynomial(G: SignedMultigraph) -> MultiPoly:
    """Tutte polynomial ``T_G(x, y)`` by deletion-contraction (signs ignored)."""
    x = MultiPoly.gen(("x", "y"), "x")
    y = MultiPoly.gen(("x", "y"), "y")
    memo: dict[tuple, MultiPoly] = {}

    def rec(n: int, ends: list[tuple[int, int]]) -> MultiPoly:
        key = (n, tuple(sorted(tuple(sorted(e)) for e in ends)))
        if key in memo:
            return memo[key]
        loops = [k for k, (u, v) in enumerate(ends) if u == v]
        if loops:
            rest = [e for k, e in enumerate(ends) if k != loops[0]]
            result = y * rec(n, rest)
        else:
            pick = None
            for k in range(len(ends)):
                if not _is_bridge(n, ends, k):
                    pick = k
                    break
            if pick is None:
                result = x ** len(ends)
            else:
                deleted = ends[:pick] + ends[pick + 1:]
                u, v = ends[pick]
                contracted = [
                    (u if a == v else a, u if b == v else b) for a, b in deleted
                ]
                result = rec(n, deleted) + rec(n, contracted)
        memo[key] = result
        return result

    if not G.is_connected():
        raise ValueError("Tutte polynomial is computed for connected graphs")
    return rec(G.num_vertices, [(e.u, e.v) for e in G.edges])


def diagram_from_plane_graph(
    rotations: Sequence[Sequence[int]], signs: Sequence[int], name: str | None = None
) -> Diagram:
    """Medial diagram of a signed plane multigraph.

    ``rotations[v]`` lists the edges at vertex ``v`` counterclockwise (a loop
    appears twice).  The result's Tait graph, for the shading in which the
    vertices are shaded, carries the given signs.
    """
    slots: dict[int, list[tuple[int, int]]] = {}
    for v, rot in enumerate(rotations):
        for k, e in enumerate(rot):
            slots.setdefault(e, []).append((v, k))
    if sorted(slots) != list(range(len(signs))) or any(len(s) != 2 for s in slots.values()):
        raise PDError("every edge must appear exactly twice in the rotations")

    def corner(v, k):
        return (v, k % len(rotations[v]))

    labels: dict[tuple[int, int], int] = {}

    def lab(c):
        return labels.setdefault(c, len(labels) + 1)

    quads = []
    for e, sign in enumerate(signs):
        (u, k), (v, l) = slots[e]
        ne, nw, sw, se = corner(v, l - 1), corner(u, k), corner(u, k - 1), corner(v, l)
        arms = [ne, nw, sw, se] if sign > 0 else [nw, sw, se, ne]
        quads.append([lab(c) for c in arms])

    # orient: follow strands straight through and put the incoming under end first
    ends: dict[int, list[tuple[int, int]]] = {}
    for i, q in enumerate(quads):
        for p, x in enumerate(q):
            ends.setdefault(x, []).append((i, p))

    def far(i, p):
        a, b = ends[quads[i][p]]
        return b if a == (i, p) else a

    entered: set[tuple[int, int]] = set()
    visited: set[tuple[int, int]] = set()
    for i in range(len(quads)):
        for p in range(4):
            if (i, p) in visited:
                continue
            j, q = i, p
            while (j, q) not in visited:
                visited.add((j, q))
                visited.add((j, (q + 2) % 4))
                entered.add((j, q))
                j, q = far(j, (q + 2) % 4)
    final = []
    for i, q in enumerate(quads):
        final.append(tuple(q) if (i, 0) in entered else (q[2], q[3], q[0], q[1]))
    return Diagram(tuple(final), 0, name)
