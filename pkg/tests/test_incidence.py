"""Parsing, validation, duality and Levi graphs."""

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nkconf import FormatError, dual, levi_graph, parse_configuration, serialize, validate
from nkconf.corpus import CLASSICAL, TABLES_19_4, fixture_names
from nkconf.incidence import Configuration, digons, is_nk, same_structure

from conftest import levi_nx


@pytest.mark.parametrize("name", TABLES_19_4)
def test_paper_tables_are_19_4(fixtures, name):
    c = fixtures(name)
    assert (c.n, c.k) == (19, 4)
    assert validate(c, 19, 4).certified


@pytest.mark.parametrize("name,n,k", [("fano", 7, 3), ("pappus", 9, 3), ("desargues", 10, 3)])
def test_classical_configurations(fixtures, name, n, k):
    assert validate(fixtures(name), n, k).certified


@pytest.mark.parametrize("name", list(TABLES_19_4) + list(CLASSICAL))
def test_girth_matches_networkx(fixtures, name):
    c = fixtures(name)
    assert levi_graph(c).girth() == nx.girth(levi_nx(c)) >= 6


def test_garbled_cell_resolves_to_m(fixtures):
    c = fixtures("fig4_z2cubed")
    assert c.is_incident("M", "q")
    assert sorted(len(ls) for ls in c.point_lines.values()) == [4] * 19


def test_digon_is_reported():
    c = parse_configuration("config 4 2\na: A B\nb: A B\nc: C D\nd: C D\n")
    rep = validate(c, 4, 2)
    assert not rep.certified
    assert [v["kind"] for v in rep.violations] == ["digon", "digon"]
    assert digons(c) == [("A", "B", "a", "b"), ("C", "D", "c", "d")]
    assert levi_graph(c).girth() == 4


def test_degree_violations():
    c = parse_configuration("config 3 2\na: A B\nb: B C\nc: C\n")
    kinds = sorted(v["kind"] for v in validate(c, 3, 2).violations)
    assert kinds == ["line-degree", "point-degree"]


@pytest.mark.parametrize("text,msg", [
    ("", "missing header"),
    ("config x 3\n", "malformed header"),
    ("config 3 2\na B C\n", "expected"),
    ("config 3 2\na: A A\n", "twice"),
    ("config 3 2\na: A B\na: B C\n", "line"),
    ("structure\na: A B\nnonincidence: A a\n", "contradicts"),
    ("structure\na: A B\ncyclic line z: A B\n", "unknown"),
])
def test_format_errors(text, msg):
    with pytest.raises(FormatError, match=msg):
        parse_configuration(text)


@pytest.mark.parametrize("name", fixture_names())
def test_serialize_round_trip(fixtures, name):
    c = fixtures(name)
    again = parse_configuration(serialize(c), name=name)
    assert same_structure(c, again)
    assert again.nonincidences == tuple(sorted(c.nonincidences))


@pytest.mark.parametrize("name", list(TABLES_19_4) + list(CLASSICAL))
def test_dual_is_an_involution(fixtures, name):
    c = fixtures(name)
    d = dual(c)
    assert is_nk(d)
    assert same_structure(dual(d), c)
    assert all(d.is_incident(l, p) for p, l in c.flags)


@st.composite
def structures(draw):
    """Random linear spaces: every pair of points on at most one line."""
    n = draw(st.integers(3, 9))
    pts = [f"p{i}" for i in range(n)]
    lines = []
    for _ in range(draw(st.integers(1, 8))):
        size = draw(st.integers(2, min(4, n)))
        cand = draw(st.permutations(pts))[:size]
        if all(len(set(cand) & set(l)) <= 1 for l in lines):
            lines.append(cand)
    return Configuration.from_lines([(f"l{i}", l) for i, l in enumerate(lines)], points=pts)


@given(structures())
@settings(max_examples=60, deadline=None)
def test_linear_spaces_have_no_digons(c):
    assert digons(c) == []
    g = levi_graph(c).girth()
    assert g == float("inf") or g >= 6
    brute = [(p, q) for p, q in itertools.combinations(c.points, 2)
             if len(set(c.point_lines[p]) & set(c.point_lines[q])) > 1]
    assert brute == []
