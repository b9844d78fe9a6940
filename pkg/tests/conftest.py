from __future__ import annotations

import pytest

from turaev.corpus import CORPUS
from turaev.diagram import parse_pd

FIGURE_EIGHT = CORPUS["figure_eight"].pd
TREFOIL = CORPUS["trefoil_left"].pd
PRETZEL = CORPUS["pretzel_3_-2_3"].pd

ENTRIES = list(CORPUS.values())
SMALL = [e for e in ENTRIES if e.diagram().c <= 8]


@pytest.fixture
def figure_eight():
    return parse_pd(FIGURE_EIGHT, "figure_eight")


@pytest.fixture
def trefoil():
    return parse_pd(TREFOIL, "trefoil_left")


@pytest.fixture
def pretzel():
    return parse_pd(PRETZEL, "pretzel_3_-2_3")


@pytest.fixture
def unknot():
    return parse_pd("")
