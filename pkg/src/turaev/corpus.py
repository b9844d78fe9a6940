"""
Embedded diagram corpus.

Every expected value carries a provenance tag:

``source``   quoted from the published tables,
``trivial``  forced by the definitions or computed by hand,
``derived``  produced by the state-sum oracle when the corpus was frozen.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, parse_pd
from .polynomial import LaurentPoly

__all__ = ["CorpusEntry", "CORPUS", "SPLIT_ENTRIES", "get", "names"]

SOURCE, TRIVIAL, DERIVED = "source", "trivial", "derived"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd: str
    description: str
    alternating: bool
    adequate: tuple[bool, bool]
    g_T: int
    bracket: str
    jones: str
    # g_T(L) when some certificate pins it, else None
    certified_g_T: int | None = None
    provenance: dict[str, str] = field(default_factory=dict)
    split: bool = False

    def diagram(self) -> Diagram:
        return parse_pd(self.pd, self.name)

    @property
    def expected_bracket(self) -> LaurentPoly:
        return LaurentPoly.parse(self.bracket)

    @property
    def expected_jones(self) -> LaurentPoly:
        return LaurentPoly.parse(self.jones, "t")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pd": self.pd,
            "description": self.description,
            "alternating": self.alternating,
            "adequate": list(self.adequate),
            "g_T": self.g_T,
            "certified_g_T": self.certified_g_T,
            "bracket": self.bracket,
            "jones": self.jones,
            "provenance": dict(sorted(self.provenance.items())),
        }


def _tags(bracket=DERIVED, g_T=DERIVED, alternating=TRIVIAL, adequate=DERIVED, jones=DERIVED):
    return {
        "bracket": bracket,
        "g_T": g_T,
        "alternating": alternating,
        "adequate": adequate,
        "jones": jones,
    }


_ENTRIES = [
    CorpusEntry(
        "unknot", "", "0-crossing round unknot",
        True, (True, True), 0, "1", "1", 0,
        _tags(TRIVIAL, TRIVIAL, TRIVIAL, TRIVIAL, TRIVIAL),
    ),
    CorpusEntry(
        "kink_positive", "X[1,1,2,2]", "unknot with one positive kink",
        True, (True, False), 0, "-A^3", "1", 0,
        _tags(TRIVIAL, TRIVIAL, TRIVIAL, TRIVIAL, TRIVIAL),
    ),
    CorpusEntry(
        "kink_negative", "X[1,2,2,1]", "unknot with one negative kink",
        True, (False, True), 0, "-A^-3", "1", 0,
        _tags(TRIVIAL, TRIVIAL, TRIVIAL, TRIVIAL, TRIVIAL),
    ),
    CorpusEntry(
        "trefoil_left", "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]", "left-handed trefoil",
        True, (True, True), 0, "-A^-5 - A^3 + A^7", "-t^-4 + t^-3 + t^-1", 0,
        _tags(TRIVIAL, SOURCE),
    ),
    CorpusEntry(
        "trefoil_right", "X[4,2,5,1];X[6,4,1,3];X[2,6,3,5]", "right-handed trefoil (mirror)",
        True, (True, True), 0, "A^-7 - A^-3 - A^5", "t + t^3 - t^4", 0,
        _tags(TRIVIAL, SOURCE),
    ),
    CorpusEntry(
        "trefoil_kinked", "X[8,5,1,6];X[4,7,5,8];X[6,3,7,4];X[2,2,3,1]",
        "left trefoil with an extra positive kink",
        True, (True, False), 0, "A^-2 + A^6 - A^10", "-t^-4 + t^-3 + t^-1", 0,
        _tags(),
    ),
    CorpusEntry(
        "figure_eight", "X[4,2,5,1];X[6,3,7,4];X[2,7,3,8];X[8,6,1,5]",
        "figure-eight knot, crossings ordered to match the activity table",
        True, (True, True), 0, "A^-8 - A^-4 + 1 - A^4 + A^8", "t^-2 - t^-1 + 1 - t + t^2", 0,
        _tags(SOURCE, SOURCE),
    ),
    CorpusEntry(
        "5_1", "X[1,6,2,7];X[3,8,4,9];X[5,10,6,1];X[7,2,8,3];X[9,4,10,5]", "cinquefoil",
        True, (True, True), 0, "-A^-7 - A + A^5 - A^9 + A^13",
        "-t^-7 + t^-6 - t^-5 + t^-4 + t^-2", 0, _tags(g_T=SOURCE),
    ),
    CorpusEntry(
        "5_2", "X[1,4,2,5];X[3,8,4,9];X[5,10,6,1];X[9,6,10,7];X[7,2,8,3]", "three-twist knot",
        True, (True, True), 0, "-A^-11 + A^-7 - 2A^-3 + A - A^5 + A^9",
        "-t^-6 + t^-5 - t^-4 + 2t^-3 - t^-2 + t^-1", 0, _tags(g_T=SOURCE),
    ),
    CorpusEntry(
        "6_1", "X[1,4,2,5];X[7,10,8,11];X[3,9,4,8];X[9,3,10,2];X[5,12,6,1];X[11,6,12,7]",
        "stevedore knot",
        True, (True, True), 0, "A^-14 - A^-10 + 2A^-6 - 2A^-2 + A^2 - A^6 + A^10",
        "t^-4 - t^-3 + t^-2 - 2t^-1 + 2 - t + t^2", 0, _tags(g_T=SOURCE),
    ),
    CorpusEntry(
        "6_2", "X[1,4,2,5];X[5,10,6,11];X[3,9,4,8];X[9,3,10,2];X[7,12,8,1];X[11,6,12,7]",
        "6_2 knot",
        True, (True, True), 0, "A^-10 - A^-6 + 2A^-2 - 2A^2 + 2A^6 - 2A^10 + A^14",
        "t^-5 - 2t^-4 + 2t^-3 - 2t^-2 + 2t^-1 - 1 + t", 0, _tags(g_T=SOURCE),
    ),
    CorpusEntry(
        "6_3", "X[4,2,5,1];X[8,4,9,3];X[12,9,1,10];X[10,5,11,6];X[6,11,7,12];X[2,8,3,7]",
        "6_3 knot",
        True, (True, True), 0, "-A^-12 + 2A^-8 - 2A^-4 + 3 - 2A^4 + 2A^8 - A^12",
        "-t^-3 + 2t^-2 - 2t^-1 + 3 - 2t + 2t^2 - t^3", 0, _tags(g_T=SOURCE),
    ),
    CorpusEntry(
        "pretzel_3_-2_3",
        "X[16,12,1,11];X[10,16,11,15];X[14,10,15,9];X[5,13,6,12];X[13,5,14,4];"
        "X[6,2,7,1];X[2,8,3,7];X[8,4,9,3]",
        "pretzel P(3,-2,3), the torus knot T(3,4)",
        False, (True, False), 1, "-A^-8 + A^4 + A^12", "t^3 + t^5 - t^8", 1,
        _tags(g_T=SOURCE),
    ),
    CorpusEntry(
        "pretzel_5_-2_3",
        "X[20,14,1,13];X[12,20,13,19];X[18,12,19,11];X[10,18,11,17];X[16,10,17,9];"
        "X[5,15,6,14];X[15,5,16,4];X[6,2,7,1];X[2,8,3,7];X[8,4,9,3]",
        "pretzel P(5,-2,3)",
        False, (True, False), 1, "-A^-10 + A^6 + A^14", "t^4 + t^6 - t^10", 1,
        _tags(g_T=SOURCE),
    ),
    CorpusEntry(
        "pretzel_5_-2_5",
        "X[24,18,1,17];X[16,24,17,23];X[22,16,23,15];X[14,22,15,21];X[20,14,21,13];"
        "X[7,19,8,18];X[19,7,20,6];X[8,2,9,1];X[2,10,3,9];X[10,4,11,3];X[4,12,5,11];"
        "X[12,6,13,5]",
        "pretzel P(5,-2,5), the largest corpus diagram",
        False, (True, False), 1, "A^-20 - 2A^-16 + A^-12 - 2A^-8 + A^-4 + A^8 + A^16",
        "t^5 + t^7 + t^10 - 2t^11 + t^12 - 2t^13 + t^14", 1, _tags(g_T=SOURCE),
    ),
    CorpusEntry(
        "torus_3_4",
        "X[16,6,1,5];X[11,7,12,6];X[12,2,13,1];X[7,3,8,2];X[8,14,9,13];X[3,15,4,14];"
        "X[4,10,5,9];X[15,11,16,10]",
        "T(3,4) as the closed braid (s1 s2)^4",
        False, (True, False), 3, "-A^-8 + A^4 + A^12", "t^3 + t^5 - t^8", None,
        _tags(),
    ),
    CorpusEntry(
        "8_20",
        "X[16,12,1,11];X[12,2,13,1];X[2,14,3,13];X[14,7,15,8];X[3,8,4,9];X[9,4,10,5];"
        "X[5,10,6,11];X[6,15,7,16]",
        "8_20 as the closed braid s1^3 s2^-1 s1^-3 s2^-1",
        False, (True, False), 1, "-A^-10 + 2A^-6 - A^-2 + 2A^2 - A^6 + A^10 - A^14",
        "-t^-5 + t^-4 - t^-3 + 2t^-2 - t^-1 + 2 - t", 1, _tags(),
    ),
]

SPLIT_ENTRIES = [
    CorpusEntry(
        "trefoil_plus_circle", "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3];Loop[7]",
        "split union of the left trefoil and a round circle (bracket axiom only)",
        False, (False, False), 0, "A^-7 + A^-3 + A - A^9", "", None,
        {"bracket": DERIVED}, split=True,
    ),
]

CORPUS: dict[str, CorpusEntry] = {e.name: e for e in sorted(_ENTRIES, key=lambda e: e.name)}


def names(include_split: bool = False) -> list[str]:
    out = list(CORPUS)
    if include_split:
        out += [e.name for e in SPLIT_ENTRIES]
    return sorted(out)


def get(name: str) -> CorpusEntry:
    if name in CORPUS:
        return CORPUS[name]
    for e in SPLIT_ENTRIES:
        if e.name == name:
            return e
    raise KeyError(name)
