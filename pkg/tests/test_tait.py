from __future__ import annotations

import random
from collections import Counter

import pytest
from conftest import ENTRIES, SMALL
from oracles import (
    activity_bruteforce,
    matrix_tree_count,
    spanning_trees_bruteforce,
    tutte_bruteforce,
)

from turaev.diagram import faces_and_shading, is_alternating, outer_face, parse_pd
from turaev.invariants import jones_polynomial, kauffman_bracket_statesum
from turaev.polynomial import LaurentPoly, equal_up_to_units, substitute
from turaev.ribbon import all_A_ribbon_graph
from turaev.tait import (
    Edge,
    SignedMultigraph,
    SpanningTree,
    activity_word,
    cut,
    cycle,
    diagram_from_plane_graph,
    gradings,
    mu,
    parse_word,
    spanning_trees,
    tait_graph,
    thistlethwaite_bracket,
    tutte_polynomial,
    word_str,
)


def ids(entries):
    return [e.name for e in entries]


def ends(G):
    return [(e.u, e.v) for e in G.edges]


# -- Tait graphs ---------------------------------------------------------------------

def test_figure_eight_tait_graph(figure_eight):
    G = tait_graph(figure_eight)
    assert G.num_vertices == 3
    assert len(G.edges) == 4
    assert G.e_plus == 4
    pairs = Counter(frozenset((e.u, e.v)) for e in G.edges)
    assert sorted(pairs.values()) == [1, 1, 2]  # triangle with one doubled side
    assert len(spanning_trees(G)) == 5


def test_trefoil_tait_graph(trefoil):
    G = tait_graph(trefoil)
    assert len(spanning_trees(G)) == 3
    assert G.e_plus == 3


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_tait_graph_shape(entry):
    D = entry.diagram()
    G = tait_graph(D)
    assert len(G.edges) == D.c
    assert G.is_connected()
    assert G.e_plus >= G.e_minus
    if is_alternating(D):
        assert len({e.sign for e in G.edges}) <= 1


def test_canonical_tie_leaves_outer_face_unshaded(figure_eight):
    # amphichiral figure-eight: both colourings give four positive edges
    for arc in figure_eight.arcs:
        G = tait_graph(figure_eight, outer_arc=arc)
        assert G.e_plus == 4
    for arc in (1, 5):
        shading = faces_and_shading(figure_eight, outer_arc=arc)
        assert outer_face(figure_eight, arc) not in shading.shaded


def test_sign_convention_is_pinned(trefoil):
    # convention A reproduces -A^3 for the positive kink; the mirror convention
    # gives the bracket with A inverted
    kink = parse_pd("X[1,1,2,2]")
    assert thistlethwaite_bracket(kink) == LaurentPoly.parse("-A^3")
    assert thistlethwaite_bracket(kink, convention="B") == LaurentPoly.parse("-A^-3")
    kb = kauffman_bracket_statesum(trefoil)
    inverted = LaurentPoly({-k: c for k, c in kb.terms.items()})
    assert thistlethwaite_bracket(trefoil, convention="B") == inverted


# -- spanning trees ---------------------------------------------------------------------

def test_single_vertex_has_one_tree():
    G = SignedMultigraph(1, ())
    assert spanning_trees(G) == [SpanningTree(frozenset())]


def test_disconnected_graph_rejected():
    G = SignedMultigraph(2, ())
    with pytest.raises(ValueError):
        spanning_trees(G)


def test_loops_and_parallel_edges():
    G = SignedMultigraph(2, (Edge(0, 0, 1, 1), Edge(1, 0, 1, 1), Edge(2, 1, 1, -1)))
    trees = {T.edges for T in spanning_trees(G)}
    assert trees == {frozenset({0}), frozenset({1})}


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_tree_count_matches_matrix_tree(entry):
    G = tait_graph(entry.diagram())
    trees = spanning_trees(G)
    assert len(trees) == matrix_tree_count(G.num_vertices, ends(G))
    assert len({T.edges for T in trees}) == len(trees)
    for T in trees:
        assert len(T) == G.num_vertices - 1


@pytest.mark.parametrize("entry", SMALL, ids=ids(SMALL))
def test_tree_set_matches_bruteforce(entry):
    G = tait_graph(entry.diagram())
    assert {T.edges for T in spanning_trees(G)} == spanning_trees_bruteforce(G.num_vertices, ends(G))


# -- activities ---------------------------------------------------------------------------

TABLE_WORDS = ["LLdd", "LdDd", "lDDd", "lLdD", "llDD"]


def test_figure_eight_activity_words(figure_eight):
    G = tait_graph(figure_eight)
    words = sorted(word_str(activity_word(G, T)) for T in spanning_trees(G))
    assert words == sorted(TABLE_WORDS)


def test_capital_letters_recover_tree(figure_eight):
    G = tait_graph(figure_eight)
    for T in spanning_trees(G):
        word = activity_word(G, T)
        assert frozenset(k for k, x in enumerate(word) if x[0].isupper()) == T.edges


def test_bridge_is_live():
    # path 0-1-2 plus a parallel edge on 0-1; edge 1 (1-2) is a bridge
    G = SignedMultigraph(3, (Edge(0, 0, 1, 1), Edge(1, 1, 2, 1), Edge(2, 0, 1, 1)))
    T = SpanningTree(frozenset({1, 2}))
    assert cut(G, T, 1) == {1}
    assert activity_word(G, T, order=[2, 0, 1])[1] == "L"


@pytest.mark.parametrize("entry", SMALL, ids=ids(SMALL))
def test_cut_cycle_duality(entry):
    G = tait_graph(entry.diagram())
    m = len(G.edges)
    for T in spanning_trees(G):
        for e in T.edges:
            for f in range(m):
                if f in T.edges:
                    continue
                assert (f in cut(G, T, e)) == (e in cycle(G, T, f))


@pytest.mark.parametrize("entry", SMALL, ids=ids(SMALL))
def test_activity_matches_exchange_definition(entry):
    G = tait_graph(entry.diagram())
    rng = random.Random(7)
    orders = [None] + [rng.sample(range(len(G.edges)), len(G.edges)) for _ in range(2)]
    for T in spanning_trees(G)[:40]:
        for order in orders:
            live = [x[0] in "Ll" for x in activity_word(G, T, order)]
            assert live == activity_bruteforce(G.num_vertices, ends(G), T.edges, order)


def test_word_round_trip():
    word = ("L'", "D", "l", "d'")
    assert word_str(word) == "L'Dld'"
    assert parse_word("L'Dld'") == word
    with pytest.raises(ValueError):
        parse_word("'L")
    with pytest.raises(ValueError):
        parse_word("LX")


# -- weights and gradings -------------------------------------------------------------------

@pytest.mark.parametrize(
    "word, weight",
    [("LLdd", "A^-8"), ("LdDd", "-A^-4"), ("llDD", "A^8"), ("lDDd", "-A^4"), ("lLdD", "1")],
)
def test_mu_table(word, weight):
    assert mu(parse_word(word)) == LaurentPoly.parse(weight)


def test_mu_barred_letters():
    assert mu(parse_word("L'")) == LaurentPoly.parse("-A^3")
    assert mu(parse_word("D'")) == LaurentPoly.parse("A^-1")
    assert mu(parse_word("l'")) == LaurentPoly.parse("-A^-3")
    assert mu(parse_word("d'")) == LaurentPoly.parse("A")


def test_gradings_examples(figure_eight):
    assert gradings(parse_word("LLdd")) == (2, 2)
    assert gradings(parse_word("llDD")) == (-2, 2)
    assert gradings(parse_word("L'l'")) == (0, 0)
    G = tait_graph(figure_eight)
    assert {gradings(activity_word(G, T))[1] for T in spanning_trees(G)} == {2}


# -- bracket by spanning trees -----------------------------------------------------------------

def test_figure_eight_tree_bracket(figure_eight):
    assert thistlethwaite_bracket(figure_eight) == LaurentPoly.parse("A^-8 - A^-4 + 1 - A^4 + A^8")


def test_positive_kink_tree_bracket():
    assert thistlethwaite_bracket(parse_pd("X[1,1,2,2]")) == LaurentPoly.parse("-A^3")


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_tree_bracket_matches_state_sum(entry):
    D = entry.diagram()
    assert thistlethwaite_bracket(D) == kauffman_bracket_statesum(D)


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_edge_order_independence(entry):
    D = entry.diagram()
    rng = random.Random(2024)
    expected = kauffman_bracket_statesum(D)
    for _ in range(3):
        order = rng.sample(range(D.c), D.c)
        assert thistlethwaite_bracket(D, order=order) == expected


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_v_grading_spread_is_ribbon_genus(entry):
    D = entry.diagram()
    G = tait_graph(D)
    vs = [gradings(activity_word(G, T))[1] for T in spanning_trees(G)]
    g = all_A_ribbon_graph(D).genus
    assert max(vs) - min(vs) == g
    assert max(vs) - min(vs) + 1 <= entry.g_T + 1
    if is_alternating(D):
        assert len(set(vs)) == 1


# -- Tutte polynomial -----------------------------------------------------------------------------

def test_triangle_tutte():
    G = SignedMultigraph(3, (Edge(0, 0, 1, 1), Edge(1, 1, 2, 1), Edge(2, 2, 0, 1)))
    assert tutte_polynomial(G).terms == {(2, 0): 1, (1, 0): 1, (0, 1): 1}


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_tutte_matches_rank_expansion(entry):
    G = tait_graph(entry.diagram())
    T = tutte_polynomial(G)
    assert T.terms == tutte_bruteforce(G.num_vertices, ends(G))
    one = LaurentPoly.constant(1)
    assert substitute(T, {"x": one, "y": one}) == LaurentPoly.constant(len(spanning_trees(G)))


ALTERNATING = [e for e in ENTRIES if e.alternating]


@pytest.mark.parametrize("entry", ALTERNATING, ids=ids(ALTERNATING))
def test_jones_from_tutte(entry):
    D = entry.diagram()
    t = LaurentPoly.monomial(1, var="t")
    T = substitute(tutte_polynomial(tait_graph(D)), {"x": -t, "y": -(t ** -1)})
    assert equal_up_to_units(jones_polynomial(D), T)[0]


# -- medial construction ----------------------------------------------------------------------------

def test_plane_graph_round_trip():
    # theta graph with paths of lengths 3, 2, 3 and signs +, -, +
    rot = [[0, 3, 5], [7, 4, 2], [0, 1], [1, 2], [3, 4], [5, 6], [6, 7]]
    signs = [1, 1, 1, -1, -1, 1, 1, 1]
    D = diagram_from_plane_graph(rot, signs)
    G = tait_graph(D)
    assert sorted(e.sign for e in G.edges) == sorted(signs)
    assert G.num_vertices == 7
    assert D.c == 8 and not is_alternating(D)
