"""
Link diagrams from planar diagram (PD) codes.

A crossing is a quadruple ``(a, b, c, d)`` of arc labels listed
counterclockwise starting at the incoming under-strand ``a``; the
under-strand leaves through ``c``.  Positions 0..3 index the quadruple.
The corner ``(i, p)`` of crossing ``i`` is the region between positions
``p`` and ``p + 1``.

Smoothing convention: the A-smoothing joins the two regions swept by
rotating the over-strand counterclockwise (corners 1 and 3), which pairs
positions ``(0, 1)`` and ``(2, 3)``; the B-smoothing pairs ``(1, 2)`` and
``(3, 0)``.  A positive kink ``X[1,1,2,2]`` then has bracket ``-A^3``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "PDError",
    "DisconnectedDiagram",
    "Diagram",
    "State",
    "Shading",
    "SMOOTHING",
    "parse_pd",
    "from_braid",
    "state_circles",
    "circle_count",
    "turaev_genus_diagram",
    "state_surface_genus",
    "faces_and_shading",
    "is_alternating",
    "writhe",
    "mirror",
    "reverse",
    "relabel",
    "add_kink",
    "outer_face",
    "edge_signs",
]

# directed smoothing arcs; walking p -> q keeps the merged region on the left
SMOOTHING = {
    "A": ((0, 1), (2, 3)),
    "B": ((1, 2), (3, 0)),
}


class PDError(ValueError):
    """Malformed or inconsistent PD input."""


class DisconnectedDiagram(ValueError):
    """Operation needs a connected (non-split) diagram."""


def _partner_table(kind: str) -> dict[int, int]:
    out = {}
    for p, q in SMOOTHING[kind]:
        out[p] = q
        out[q] = p
    return out


@dataclass(frozen=True)
class Diagram:
    """A link diagram: crossings as PD quadruples plus crossingless loops."""

    crossings: tuple[tuple[int, int, int, int], ...]
    loops: int = 0
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(x) for x in self.crossings))
        self._validate()

    # -- basic structure -----------------------------------------------------

    @property
    def c(self) -> int:
        return len(self.crossings)

    def __len__(self):
        return len(self.crossings)

    @cached_property
    def ends(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        occ: dict[int, list[tuple[int, int]]] = {}
        for i, quad in enumerate(self.crossings):
            for p, label in enumerate(quad):
                occ.setdefault(label, []).append((i, p))
        return {k: tuple(v) for k, v in occ.items()}

    @cached_property
    def _other(self) -> dict[tuple[int, int], tuple[int, int]]:
        out = {}
        for e1, e2 in self.ends.values():
            out[e1] = e2
            out[e2] = e1
        return out

    def other_end(self, i: int, p: int) -> tuple[int, int]:
        """The far end of the arc leaving crossing ``i`` at position ``p``."""
        return self._other[(i, p)]

    def arc(self, i: int, p: int) -> int:
        return self.crossings[i][p]

    @property
    def arcs(self) -> list[int]:
        return sorted(self.ends)

    def _validate(self):
        if self.loops < 0:
            raise PDError("negative loop count")
        for quad in self.crossings:
            if len(quad) != 4:
                raise PDError(f"crossing {quad} is not a quadruple")
        bad = {k: len(v) for k, v in self.ends.items() if len(v) != 2}
        if bad:
            raise PDError(f"arcs must occur exactly twice; offending arcs {bad}")
        self._heads  # orientation
        self._check_planar()

    # -- orientation ---------------------------------------------------------

    @cached_property
    def _heads(self) -> dict[tuple[int, int], bool]:
        """True where the arc enters the crossing."""
        heads: dict[tuple[int, int], bool] = {}
        stack: list[tuple[int, int]] = []

        def assign(end, value):
            if end in heads:
                if heads[end] != value:
                    raise PDError(f"inconsistent orientation at crossing {end[0] + 1}")
                return
            heads[end] = value
            stack.append(end)

        def flush():
            while stack:
                i, p = stack.pop()
                assign(self.other_end(i, p), not heads[(i, p)])
                assign((i, (p + 2) % 4), not heads[(i, p)])

        for i in range(self.c):
            assign((i, 0), True)
            assign((i, 2), False)
        flush()
        # components that only ever pass over: orient arbitrarily
        for i in range(self.c):
            if (i, 1) not in heads:
                assign((i, 1), True)
                flush()
        return heads

    def is_head(self, i: int, p: int) -> bool:
        return self._heads[(i, p)]

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """+1 when the over-strand runs from position 3 to position 1."""
        return tuple(1 if self._heads[(i, 3)] else -1 for i in range(self.c))

    def tail(self, label: int) -> tuple[int, int]:
        """The end where arc ``label`` leaves a crossing."""
        e1, e2 = self.ends[label]
        return e2 if self._heads[e1] else e1

    # -- tracing -------------------------------------------------------------

    def trace(self, partners: Sequence[dict[int, int]]) -> list[list[tuple[int, int, int]]]:
        """Closed curves obtained by joining positions per crossing.

        ``partners[i]`` maps each position of crossing ``i`` to the position
        it connects to (``p + 2`` for an unsmoothed crossing).  Each curve
        is a list of passages ``(crossing, position_in, position_out)``.
        Curves without crossings (the free loops) are not listed.
        """
        seen: set[tuple[int, int]] = set()
        curves = []
        for i in range(self.c):
            for p in range(4):
                if (i, p) in seen:
                    continue
                curve = []
                j, q = i, p
                while (j, q) not in seen:
                    out = partners[j][q]
                    seen.add((j, q))
                    seen.add((j, out))
                    curve.append((j, q, out))
                    j, q = self.other_end(j, out)
                curves.append(curve)
        return curves

    @cached_property
    def components(self) -> list[list[tuple[int, int, int]]]:
        """Link components as oriented passage sequences."""
        straight = [{0: 2, 2: 0, 1: 3, 3: 1}] * self.c
        comps = []
        seen: set[int] = set()
        for i in range(self.c):
            for p in (0, 1, 3):
                if (i, p) in seen or not self._heads[(i, p)]:
                    continue
                curve = []
                j, q = i, p
                while (j, q) not in seen:
                    out = straight[j][q]
                    seen.add((j, q))
                    curve.append((j, q, out))
                    j, q = self.other_end(j, out)
                comps.append(curve)
        return comps

    @property
    def num_components(self) -> int:
        return len(self.components) + self.loops

    # -- planar structure ----------------------------------------------------

    @cached_property
    def faces(self) -> list[list[tuple[int, int]]]:
        """Faces as cycles of corners; each projection piece is traced on its own sphere."""
        seen: set[tuple[int, int]] = set()
        faces = []
        for i in range(self.c):
            for p in range(4):
                if (i, p) in seen:
                    continue
                face = []
                corner = (i, p)
                while corner not in seen:
                    seen.add(corner)
                    face.append(corner)
                    j, q = corner
                    corner = self.other_end(j, (q + 1) % 4)
                faces.append(face)
        return faces

    @cached_property
    def face_of(self) -> dict[tuple[int, int], int]:
        return {corner: k for k, face in enumerate(self.faces) for corner in face}

    @cached_property
    def pieces(self) -> list[set[int]]:
        """Connected pieces of the projection, as sets of crossing indices."""
        parent = list(range(self.c))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (i, _), (j, _) in self.ends.values():
            parent[find(i)] = find(j)
        groups: dict[int, set[int]] = {}
        for i in range(self.c):
            groups.setdefault(find(i), set()).add(i)
        return list(groups.values())

    def _check_planar(self):
        face_count: dict[int, int] = {}
        piece_of = {i: k for k, piece in enumerate(self.pieces) for i in piece}
        for face in self.faces:
            k = piece_of[face[0][0]]
            face_count[k] = face_count.get(k, 0) + 1
        for k, piece in enumerate(self.pieces):
            v, e, f = len(piece), 2 * len(piece), face_count.get(k, 0)
            if v - e + f != 2:
                raise PDError(
                    f"rotation data is not planar (v - e + f = {v - e + f} on a piece "
                    f"with {v} crossings)"
                )

    @property
    def is_connected(self) -> bool:
        if self.c == 0:
            return self.loops == 1
        return self.loops == 0 and len(self.pieces) == 1

    def require_connected(self):
        if not self.is_connected:
            raise DisconnectedDiagram("diagram is split or empty")

    # -- rendering -----------------------------------------------------------

    def to_pd(self) -> str:
        terms = ["X[" + ",".join(map(str, q)) + "]" for q in self.crossings]
        start = max(self.ends, default=0) + 1
        terms += [f"Loop[{start + k}]" for k in range(self.loops)]
        return ";".join(terms)

    def to_json(self) -> list[list[int]]:
        return [list(q) for q in self.crossings]

    def __str__(self):
        return self.name or self.to_pd() or "Loop[1]"


@dataclass(frozen=True)
class State:
    """A smoothing choice, ``'A'`` or ``'B'``, per crossing."""

    choices: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "choices", tuple(self.choices))
        if any(ch not in ("A", "B") for ch in self.choices):
            raise ValueError("state entries must be 'A' or 'B'")

    @classmethod
    def all_A(cls, n: int) -> "State":
        return cls(("A",) * n)

    @classmethod
    def all_B(cls, n: int) -> "State":
        return cls(("B",) * n)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "State":
        """Bit ``i`` set means crossing ``i`` is B-smoothed."""
        return cls(tuple("B" if mask >> i & 1 else "A" for i in range(n)))

    def __len__(self):
        return len(self.choices)

    @property
    def a(self) -> int:
        return self.choices.count("A")

    @property
    def b(self) -> int:
        return self.choices.count("B")

    def dual(self) -> "State":
        return State(tuple("B" if ch == "A" else "A" for ch in self.choices))

    def toggle(self, i: int) -> "State":
        ch = list(self.choices)
        ch[i] = "B" if ch[i] == "A" else "A"
        return State(tuple(ch))

    def __str__(self):
        return "".join(self.choices)


_PARTNERS = {"A": _partner_table("A"), "B": _partner_table("B")}


def _state_partners(s: State) -> list[dict[int, int]]:
    return [_PARTNERS[ch] for ch in s.choices]


def state_circles(D: Diagram, s: State) -> list[list[tuple[int, int, int]]]:
    """Circles of the smoothing ``s`` (free loops of ``D`` excluded).

    Each circle is a list of passages ``(crossing, p, q)`` meaning the circle
    runs along the smoothing arc from position ``p`` to ``q``.
    """
    if len(s) != D.c:
        raise ValueError(f"state has {len(s)} entries, diagram has {D.c} crossings")
    return D.trace(_state_partners(s))


class _Counter:
    """Union-find circle counter specialised to one diagram."""

    def __init__(self, D: Diagram):
        index = {label: k for k, label in enumerate(D.arcs)}
        self.n = len(index)
        self.loops = D.loops
        self.pairs = []
        for quad in D.crossings:
            ids = [index[label] for label in quad]
            self.pairs.append(
                {
                    kind: tuple((ids[p], ids[q]) for p, q in SMOOTHING[kind])
                    for kind in ("A", "B")
                }
            )

    def count(self, choices: Iterable[str]) -> int:
        parent = list(range(self.n))
        comps = self.n
        for pair, ch in zip(self.pairs, choices):
            for x, y in pair[ch]:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                while parent[y] != y:
                    parent[y] = parent[parent[y]]
                    y = parent[y]
                if x != y:
                    parent[x] = y
                    comps -= 1
        return comps + self.loops


def circle_count(D: Diagram, s: State) -> int:
    """``|s|``: number of circles, free loops included."""
    if len(s) != D.c:
        raise ValueError(f"state has {len(s)} entries, diagram has {D.c} crossings")
    return _Counter(D).count(s.choices)


def turaev_genus_diagram(D: Diagram) -> int:
    """``(c + 2 - |s_A| - |s_B|) / 2``."""
    return state_surface_genus(D, State.all_A(D.c))


def state_surface_genus(D: Diagram, s: State) -> int:
    D.require_connected()
    twice = D.c + 2 - circle_count(D, s) - circle_count(D, s.dual())
    if twice < 0 or twice % 2:
        raise AssertionError(f"non-integral state surface genus {twice}/2 for {D}")
    return twice // 2


@dataclass(frozen=True)
class Shading:
    """Checkerboard colouring of the faces of a connected diagram."""

    faces: list
    shaded: frozenset[int]
    outer: int | None
    signs: tuple[int, ...]

    def is_shaded(self, face: int) -> bool:
        return face in self.shaded


def _two_colour(D: Diagram) -> list[int]:
    colour = [-1] * len(D.faces)
    if not D.faces:
        return colour
    colour[0] = 0
    stack = [0]
    while stack:
        f = stack.pop()
        for i, p in D.faces[f]:
            # corners p and p+1 share the arm p+1
            g = D.face_of[(i, (p + 1) % 4)]
            if colour[g] == -1:
                colour[g] = 1 - colour[f]
                stack.append(g)
            elif colour[g] == colour[f]:
                raise AssertionError("checkerboard colouring failed; planar data inconsistent")
    return colour


def outer_face(D: Diagram, outer_arc: int | None = None) -> int | None:
    """Face on the left of ``outer_arc`` (default: smallest arc label)."""
    if D.c == 0:
        return None
    label = min(D.ends) if outer_arc is None else outer_arc
    if label not in D.ends:
        raise PDError(f"no arc labelled {label}")
    return D.face_of[D.tail(label)]


def edge_signs(D: Diagram, shaded: Iterable[int], convention: str = "A") -> tuple[int, ...]:
    """Tait edge signs: with convention ``'A'`` an edge is positive when its
    shaded corners are the ones the A-smoothing joins."""
    shaded = set(shaded)
    want = 1 if convention == "A" else -1
    return tuple(
        want if D.face_of[(i, 1)] in shaded else -want for i in range(D.c)
    )


def faces_and_shading(D: Diagram, outer_arc: int | None = None, convention: str = "A") -> Shading:
    """Canonical checkerboard shading.

    Shade so that positive Tait edges outnumber negative ones; on a tie,
    leave the outer face unshaded.
    """
    D.require_connected()
    colour = _two_colour(D)
    outer = outer_face(D, outer_arc)
    best = None
    for shaded_colour in (0, 1):
        shaded = frozenset(k for k, col in enumerate(colour) if col == shaded_colour)
        signs = edge_signs(D, shaded, convention)
        balance = sum(signs)
        key = (balance, outer is None or outer not in shaded)
        if best is None or key > best[0]:
            best = (key, Shading(D.faces, shaded, outer, signs))
    return best[1]


def is_alternating(D: Diagram) -> bool:
    for comp in D.components:
        kinds = [p % 2 for _, p, _ in comp]  # 0: under, 1: over
        n = len(kinds)
        if any(kinds[k] == kinds[(k + 1) % n] for k in range(n)):
            return False
    return True


def writhe(D: Diagram) -> int:
    return sum(D.signs)


def mirror(D: Diagram) -> Diagram:
    """Switch every crossing."""
    out = []
    for (a, b, c, d), sign in zip(D.crossings, D.signs):
        out.append((d, a, b, c) if sign > 0 else (b, c, d, a))
    return Diagram(tuple(out), D.loops)


def reverse(D: Diagram) -> Diagram:
    """Reverse the orientation of every component."""
    return Diagram(tuple((c, d, a, b) for a, b, c, d in D.crossings), D.loops)


def relabel(D: Diagram) -> Diagram:
    """Renumber arcs 1, 2, ... consecutively along the oriented components."""
    new: dict[int, int] = {}
    for comp in D.components:
        for i, _, out in comp:
            label = D.arc(i, out)
            if label not in new:
                new[label] = len(new) + 1
    return Diagram(
        tuple(tuple(new[x] for x in quad) for quad in D.crossings), D.loops, D.name
    )


def add_kink(D: Diagram, label: int, sign: int = 1) -> Diagram:
    """Insert a Reidemeister I kink of the given sign on arc ``label``."""
    if label not in D.ends:
        raise PDError(f"no arc labelled {label}")
    head = next(e for e in D.ends[label] if D.is_head(*e))
    top = max(D.ends)
    y, z = top + 1, top + 2
    quads = [list(q) for q in D.crossings]
    quads[head[0]][head[1]] = z
    quads.append([y, y, z, label] if sign > 0 else [label, y, y, z])
    return relabel(Diagram(tuple(tuple(q) for q in quads), D.loops, D.name))


_TERM = re.compile(r"(X|Loop)\[([^\[\]]*)\]")


def parse_pd(text: str, name: str | None = None) -> Diagram:
    """Parse ``X[a,b,c,d]`` terms (``;`` or ``,`` separated, optional ``PD[...]``
    wrapper, ``Loop[k]`` for crossingless components) or a JSON array of
    quadruples.  Empty input is the 0-crossing unknot.
    """
    text = text.strip()
    if text.startswith("[") or text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PDError(f"bad JSON PD code: {exc}") from None
        loops = 0
        if isinstance(data, dict):
            loops = int(data.get("loops", 0))
            data = data.get("crossings", [])
        quads = []
        for q in data:
            if not isinstance(q, list) or len(q) != 4:
                raise PDError(f"crossing {q} is not a quadruple")
            quads.append(tuple(int(x) for x in q))
        if not quads and not loops:
            loops = 1
        return Diagram(tuple(quads), loops, name)

    body = text
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    quads = []
    loops = 0
    for m in _TERM.finditer(body):
        kind, args = m.groups()
        fields = [x.strip() for x in args.split(",") if x.strip()]
        if kind == "Loop":
            loops += 1
            continue
        if len(fields) != 4:
            raise PDError(f"X[{args}]: quadruple required")
        try:
            quads.append(tuple(int(x) for x in fields))
        except ValueError:
            raise PDError(f"X[{args}]: arc labels must be integers") from None
    leftover = _TERM.sub("", body)
    if leftover.strip(" ;,\t\n"):
        raise PDError(f"unexpected text in PD code: {leftover.strip()!r}")
    if not quads and not loops:
        loops = 1
    return Diagram(tuple(quads), loops, name)


def from_braid(word: Sequence[int], strands: int | None = None, name: str | None = None) -> Diagram:
    """Closure of a braid word; ``k`` is the positive generator on strands ``k, k+1``.

    Strands run upward, and a positive generator gives a positive crossing.
    """
    if strands is None:
        strands = max(abs(g) for g in word) + 1
    counter = iter(range(1, 10 ** 9))
    start = [next(counter) for _ in range(strands)]
    cur = list(start)
    quads = []
    for g in word:
        k = abs(g) - 1
        if not 0 <= k < strands - 1:
            raise PDError(f"generator {g} out of range for {strands} strands")
        left_in, right_in = cur[k], cur[k + 1]
        left_out, right_out = next(counter), next(counter)
        if g > 0:
            # over: bottom-left to top-right; under: bottom-right to top-left
            quads.append([right_in, right_out, left_out, left_in])
        else:
            # over: bottom-right to top-left; under: bottom-left to top-right
            quads.append([left_in, right_in, right_out, left_out])
        cur[k], cur[k + 1] = left_out, right_out
    rename = dict(zip(cur, start))
    quads = [tuple(rename.get(x, x) for x in q) for q in quads]
    used = {x for q in quads for x in q}
    loops = sum(1 for s in start if s not in used)
    return relabel(Diagram(tuple(quads), loops, name))
