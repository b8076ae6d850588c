"""Shared helpers: paper sequences, sympy conversion, Levi-graph oracle."""

from __future__ import annotations

import networkx as nx
import pytest
import sympy

from nkconf.corpus import load_fixture
from nkconf.polyalg import Poly, parse_poly

# construction sequences printed with the worked examples
PAPER_SEQUENCES = {
    "example_novar": "ABCD - degikp - IK - b - FJ - aj - H - q - E - s - QR - cn - GNO - fhlmor - LMPS",
    "example_onevar": "ABCD - dikpqr - E - [f] - LRS - h - K - l - I - jo - GJO - bgmns - FHMNPQ - ace",
    "example_twovar_a": "ABCD - ajkp - F - [b] - [E] - d - JM - hr - NO - cgo - GKQ - eflnqs - HILPRS - im",
    "example_twovar_b": "ABCD - gkpq - I - [a] - F - c - O - s - [E] - df - JQ - in - MNR - ehjor - GHKLPS - blm",
}


def to_sympy(p: Poly):
    return sympy.sympify(str(p).replace("^", "**"))


def from_sympy(expr) -> Poly:
    return parse_poly(str(sympy.expand(expr)).replace("**", "^"))


def levi_nx(c) -> nx.Graph:
    g = nx.Graph()
    for p in c.points:
        g.add_node(("P", p), kind="P")
    for l, ps in c.line_points.items():
        g.add_node(("L", l), kind="L")
        for p in ps:
            g.add_edge(("P", p), ("L", l))
    return g


def oracle_embeddings(pat, host) -> set:
    """Induced embeddings via networkx subgraph isomorphism, filtered by pinned non-incidences."""
    gm = nx.algorithms.isomorphism.GraphMatcher(levi_nx(host), levi_nx(pat),
                                                node_match=lambda a, b: a["kind"] == b["kind"])
    out = set()
    for m in gm.subgraph_isomorphisms_iter():
        inv = {v: k for k, v in m.items()}
        if any(host.is_incident(inv[("P", p)][1], inv[("L", l)][1]) for p, l in pat.nonincidences):
            continue
        pts = tuple(sorted((x[1], inv[x][1]) for x in inv if x[0] == "P"))
        lns = tuple(sorted((x[1], inv[x][1]) for x in inv if x[0] == "L"))
        out.add((pts, lns))
    return out


@pytest.fixture(scope="session")
def fixtures():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_fixture(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def verdicts(fixtures):
    """Planned-sequence realizer verdicts, computed once per session."""
    from nkconf.realizer import realize

    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = realize(fixtures(name))
        return cache[name]

    return get
