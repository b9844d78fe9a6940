from __future__ import annotations

import pytest
from conftest import ENTRIES, SMALL
from oracles import DELTA, bracket_bruteforce, pmul

from turaev import cli, diagram
from turaev.corpus import SPLIT_ENTRIES
from turaev.diagram import add_kink, is_alternating, mirror, parse_pd, writhe
from turaev.invariants import (
    METHODS,
    InvariantReport,
    LimitExceeded,
    adequacy_from_ribbon,
    bracket,
    genus_and_span_report,
    is_adequate,
    jones_has_alternating_form,
    jones_polynomial,
    kauffman_bracket_statesum,
    leaf_weight,
    parallel_genus_upper_bound,
    resolution_tree,
    twisted_unknot_check,
    verify_all,
)
from turaev.polynomial import LaurentPoly
from turaev.tait import spanning_trees, tait_graph


def ids(entries):
    return [e.name for e in entries]


FIG8_BRACKET = LaurentPoly.parse("A^-8 - A^-4 + 1 - A^4 + A^8")
FIG8_JONES = LaurentPoly.parse("t^-2 - t^-1 + 1 - t + t^2", "t")


# -- bracket -------------------------------------------------------------------------

def test_figure_eight_state_sum(figure_eight):
    assert kauffman_bracket_statesum(figure_eight) == FIG8_BRACKET


def test_unknot_bracket(unknot):
    assert kauffman_bracket_statesum(unknot) == LaurentPoly.constant(1)
    for method in METHODS:
        assert bracket(unknot, method) == LaurentPoly.constant(1)


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_state_sum_matches_bruteforce(entry):
    D = entry.diagram()
    kb = kauffman_bracket_statesum(D)
    assert kb.terms == bracket_bruteforce(D.crossings, D.loops)
    assert kb == entry.expected_bracket


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_three_methods_agree(entry):
    D = entry.diagram()
    values = {bracket(D, m) for m in METHODS}
    assert values == {entry.expected_bracket}


def test_extra_circle_multiplies_by_delta():
    split = SPLIT_ENTRIES[0]
    D = split.diagram()
    trefoil = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]")
    base = kauffman_bracket_statesum(trefoil)
    assert kauffman_bracket_statesum(D).terms == pmul(base.terms, DELTA)
    assert kauffman_bracket_statesum(D) == split.expected_bracket


def test_limit_exceeded(pretzel):
    with pytest.raises(LimitExceeded):
        kauffman_bracket_statesum(pretzel, limit=4)
    with pytest.raises(LimitExceeded):
        bracket(pretzel, "brt", limit=4)
    assert issubclass(LimitExceeded, ValueError)


def test_unknown_method(trefoil):
    with pytest.raises(ValueError):
        bracket(trefoil, "magic")


def test_mirror_inverts_bracket(trefoil):
    kb = kauffman_bracket_statesum(trefoil)
    flipped = LaurentPoly({-k: c for k, c in kb.terms.items()})
    assert kauffman_bracket_statesum(mirror(trefoil)) == flipped


# -- Jones -------------------------------------------------------------------------------

def test_figure_eight_jones(figure_eight):
    V = jones_polynomial(figure_eight)
    assert V == FIG8_JONES and V.var == "t"


def test_unknot_jones(unknot):
    assert jones_polynomial(unknot) == LaurentPoly.constant(1, "t")


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_corpus_jones(entry):
    V = jones_polynomial(entry.diagram())
    assert V == entry.expected_jones
    assert V.evaluate(1) == 1


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("name", ["trefoil_left", "figure_eight", "5_2"])
def test_jones_survives_kinks(name, sign):
    D = parse_pd(next(e.pd for e in ENTRIES if e.name == name))
    K = add_kink(D, D.arcs[0], sign)
    assert writhe(K) == writhe(D) + sign
    assert kauffman_bracket_statesum(K) == kauffman_bracket_statesum(D) * LaurentPoly.monomial(3 * sign, -1)
    assert jones_polynomial(K) == jones_polynomial(D)


def test_kinked_trefoil_pair():
    left = next(e for e in ENTRIES if e.name == "trefoil_left")
    kinked = next(e for e in ENTRIES if e.name == "trefoil_kinked")
    assert jones_polynomial(kinked.diagram()) == jones_polynomial(left.diagram())


def test_two_component_link_keeps_A_form():
    hopf = parse_pd("X[1,3,2,4];X[3,1,4,2]")
    V = jones_polynomial(hopf)
    assert V.var == "A"
    assert V == LaurentPoly.parse("-A^-10 - A^-2")


def test_alternating_form_detector():
    assert jones_has_alternating_form(FIG8_JONES)
    assert not jones_has_alternating_form(LaurentPoly.parse("t^3 + t^5 - t^8", "t"))
    assert not jones_has_alternating_form(LaurentPoly({}, "t"))


# -- adequacy --------------------------------------------------------------------------------

@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_adequacy_two_ways(entry):
    D = entry.diagram()
    assert is_adequate(D) == adequacy_from_ribbon(D) == entry.adequate


def test_reduced_alternating_is_adequate(figure_eight, trefoil):
    assert is_adequate(figure_eight) == (True, True)
    assert is_adequate(trefoil) == (True, True)


def test_kink_fails_on_its_side():
    assert is_adequate(parse_pd("X[1,1,2,2]")) == (True, False)
    assert is_adequate(parse_pd("X[1,2,2,1]")) == (False, True)


# -- spans and genus ----------------------------------------------------------------------------

def test_figure_eight_span(figure_eight):
    r = genus_and_span_report(figure_eight)
    assert r["span_jones"] == 4 == r["c"] - r["g_T"]
    assert r["certificate"] == "adequate"
    assert r["bound_tight"]


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_span_report(entry):
    D = entry.diagram()
    r = genus_and_span_report(D)
    assert r["bound_holds"] and r["eq1_holds"] and r["tight_if_adequate"]
    assert r["g_T"] == entry.g_T
    if all(entry.adequate):
        assert r["g_T"] == r["c"] - r["span_jones"]
    if r["certified"]:
        assert entry.certified_g_T is not None
    else:
        assert entry.certified_g_T is None


def test_pretzel_certificate(pretzel):
    r = genus_and_span_report(pretzel)
    assert r["g_T"] == 1
    assert not (r["adequate_A"] and r["adequate_B"])
    assert r["certificate"] == "non-alternating jones"


def test_tight_without_adequacy():
    # the braid diagram of T(3,4) meets the span bound with only one adequate side
    D = next(e for e in ENTRIES if e.name == "torus_3_4").diagram()
    r = genus_and_span_report(D)
    assert r["bound_tight"] and not r["adequate_B"]
    assert not r["certified"] and r["c_minus_span"] == 3


# -- twisted unknots ------------------------------------------------------------------------------

def test_figure_eight_twisted_unknots(figure_eight):
    G = tait_graph(figure_eight)
    checks = [twisted_unknot_check(figure_eight, T, G) for T in spanning_trees(G)]
    assert all(x.verdict for x in checks)
    first = next(x for x in checks if x.word == "LLdd")
    assert first.weight == LaurentPoly.parse("A^-8")
    assert len(first.smoothing) == 2 and first.kept == 2
    assert first.to_dict()["ok"] is True


@pytest.mark.parametrize("entry", SMALL, ids=ids(SMALL))
def test_twisted_unknots_corpus(entry):
    D = entry.diagram()
    if D.c == 0:
        return
    G = tait_graph(D)
    for T in spanning_trees(G):
        x = twisted_unknot_check(D, T, G)
        assert x.components == 1
        assert x.reducible and x.weight == x.predicted


def test_lowest_edge_is_never_dead(figure_eight):
    # so a word is never all dead; the fully smoothed case is checked directly below
    G = tait_graph(figure_eight)
    for T in spanning_trees(G):
        assert twisted_unknot_check(figure_eight, T, G).word[0] in "Ll"


def test_fully_smoothed_unknot_weight():
    kink = parse_pd("X[1,1,2,2]")
    assert leaf_weight(kink, {0: "B"}) == LaurentPoly.monomial(-1)
    with pytest.raises(AssertionError):
        leaf_weight(kink, {0: "A"})  # two circles


# -- resolution tree --------------------------------------------------------------------------------

def test_figure_eight_resolution(figure_eight):
    root = resolution_tree(figure_eight)
    leaves = root.leaves()
    assert len(leaves) == 5
    total = LaurentPoly({})
    for leaf in leaves:
        total = total + leaf_weight(figure_eight, leaf.smoothing)
    assert total == FIG8_BRACKET
    assert "crossing" in root.to_dict()


def test_trefoil_resolution(trefoil):
    assert len(resolution_tree(trefoil).leaves()) == 3


@pytest.mark.parametrize("entry", SMALL, ids=ids(SMALL))
def test_resolution_leaves_match_trees(entry):
    D = entry.diagram()
    leaves = resolution_tree(D).leaves()
    assert len(leaves) == len(spanning_trees(tait_graph(D)))
    total = LaurentPoly({})
    for leaf in leaves:
        total = total + leaf_weight(D, leaf.smoothing)
    assert total == entry.expected_bracket


def test_resolution_limit(pretzel):
    with pytest.raises(LimitExceeded):
        resolution_tree(pretzel, limit=3)


# -- cabling bound -----------------------------------------------------------------------------------

def test_parallel_bound_values():
    assert parallel_genus_upper_bound(0, 4, 2) == 14
    for g in range(3):
        for c in range(5):
            assert parallel_genus_upper_bound(g, c, 1) == 2 * g + c - 1
    assert parallel_genus_upper_bound(1, 0, 1) == 1


@pytest.mark.parametrize("args", [(0, 4, 0), (-1, 3, 1), (0, -1, 2)])
def test_parallel_bound_domain(args):
    with pytest.raises(ValueError):
        parallel_genus_upper_bound(*args)


# -- verify_all ------------------------------------------------------------------------------------------

def test_verify_figure_eight(figure_eight):
    r = verify_all(figure_eight, expected_bracket=FIG8_BRACKET)
    assert isinstance(r, InvariantReport)
    assert r.passed, r.failures
    assert set(r.brackets.values()) == {str(FIG8_BRACKET)}
    assert r.to_dict()["jones"] == {"value": str(FIG8_JONES), "variable": "t"}


def test_verify_pretzel(pretzel):
    r = verify_all(pretzel)
    assert r.passed, r.failures
    assert r.genus["g_T"] == 1
    assert r.width["qt_genus_max"] - r.width["qt_genus_min"] == 1


@pytest.mark.parametrize("entry", ENTRIES, ids=ids(ENTRIES))
def test_verify_corpus(entry):
    r = verify_all(entry.diagram(), expected_bracket=entry.expected_bracket)
    assert r.passed, (r.failures, r.notes)


def test_verify_same_seed_same_report(trefoil):
    assert verify_all(trefoil, seed=5).to_dict() == verify_all(trefoil, seed=5).to_dict()


def corrupt(monkeypatch):
    """Swap the A and B smoothing tables everywhere they are shared."""
    S, P = diagram.SMOOTHING, diagram._PARTNERS
    a, b = S["A"], S["B"]
    pa, pb = P["A"], P["B"]
    monkeypatch.setitem(S, "A", b)
    monkeypatch.setitem(S, "B", a)
    monkeypatch.setitem(P, "A", pb)
    monkeypatch.setitem(P, "B", pa)


def test_corrupted_convention_is_caught(monkeypatch, trefoil):
    corrupt(monkeypatch)
    r = verify_all(trefoil)
    assert not r.passed
    assert "bracket_three_way" in r.failures


def test_corrupted_convention_fails_cli(monkeypatch, capsys):
    corrupt(monkeypatch)
    assert cli.main(["verify", "trefoil_left"]) == cli.EXIT_FAIL
    assert "bracket_three_way" in capsys.readouterr().out


def test_alternating_entries_flagged():
    for e in ENTRIES:
        assert is_alternating(e.diagram()) == e.alternating
