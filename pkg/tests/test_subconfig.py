"""Embedding search against a networkx subgraph-isomorphism oracle."""

import random

import pytest

from nkconf.corpus import EXAMPLES_19_4, load_fixture
from nkconf.incidence import Configuration
from nkconf.subconfig import Embedding, enumerate_embeddings, is_embedding, pattern, theorem_compatible

from conftest import oracle_embeddings


def as_pairs(embs):
    return {(e.points, e.lines) for e in embs}


@pytest.mark.parametrize("pat,host,count", [
    ("pappus", "pappus", 108),
    ("desargues", "desargues", 120),
    ("fano", "fano", 168),
    ("non_pappus", "pappus", 0),
    ("non_desargues", "desargues", 0),
    ("non_pappus", "non_pappus", None),
    ("non_desargues", "non_desargues", None),
])
def test_counts_match_oracle(pat, host, count):
    p, h = load_fixture(pat), load_fixture(host)
    ours = enumerate_embeddings(p, h)
    oracle = oracle_embeddings(p, h)
    assert as_pairs(ours) == oracle
    if count is not None:
        assert len(ours) == count
    assert all(is_embedding(p, h, e) for e in ours)


@pytest.mark.parametrize("name", EXAMPLES_19_4)
def test_examples_pass_both_filters(fixtures, name):
    res = theorem_compatible(fixtures(name))
    assert res["pappus"] and res["desargues"]
    assert res["pappus_violation"] is None and res["desargues_violation"] is None


def _extend_non_pappus() -> Configuration:
    """Non-Pappus plus a point X on e1 and a line x through P22 and X."""
    c = load_fixture("non_pappus")
    rows = [(l, list(ps)) for l, ps in c.incident]
    rows = [(l, ps + ["X"]) if l == "e1" else (l, ps) for l, ps in rows]
    rows.append(("x", ["P22", "X"]))
    return Configuration.from_lines(rows, points=list(c.points) + ["X"], name="non_pappus_host")


def test_synthetic_host_violates_pappus():
    host = _extend_non_pappus()
    res = theorem_compatible(host)
    assert res["pappus"] is False
    assert res["desargues"] is True
    emb = enumerate_embeddings(pattern("non_pappus"), host, limit=1)[0]
    assert is_embedding(pattern("non_pappus"), host, emb)
    assert as_pairs(enumerate_embeddings(pattern("non_pappus"), host)) == \
        oracle_embeddings(pattern("non_pappus"), host)


def test_limit_stops_early(fixtures):
    embs = enumerate_embeddings(load_fixture("pappus"), load_fixture("pappus"), limit=5)
    assert len(embs) == 5


def test_unknown_pattern():
    with pytest.raises(KeyError):
        pattern("fano_plane")


def test_embedding_json_and_text():
    e = Embedding((("A", "B"),), (("a", "b"),))
    assert str(e) == "A->B, a->b"
    assert e.to_json() == {"points": {"A": "B"}, "lines": {"a": "b"}}


def _random_linear_space(rng, n, attempts):
    pts = [f"q{i}" for i in range(n)]
    lines = []
    for _ in range(attempts):
        size = rng.randint(2, 4)
        cand = rng.sample(pts, size)
        if all(len(set(cand) & set(l)) <= 1 for l in lines):
            lines.append(cand)
    return Configuration.from_lines([(f"m{i}", l) for i, l in enumerate(lines)], points=pts)


def _random_pattern(rng, host):
    """Induced piece of the host, relabelled, sometimes with a pinned non-incidence."""
    pts = rng.sample(list(host.points), rng.randint(3, min(7, len(host.points))))
    lines = [l for l in host.lines if len(set(host.line_points[l]) & set(pts)) >= 2]
    lines = rng.sample(lines, min(len(lines), rng.randint(2, 6)))
    rows = [(f"L{l}", [f"P{p}" for p in host.line_points[l] if p in pts]) for l in lines]
    pins = []
    free = [(p, l) for p in pts for l in lines if p not in host.line_points[l]]
    if free and rng.random() < 0.4:
        p, l = rng.choice(free)
        pins.append((f"P{p}", f"L{l}"))
    return Configuration.from_lines(rows, points=[f"P{p}" for p in pts], nonincidences=pins)


def test_fifty_random_structures():
    rng = random.Random(31)
    done = 0
    while done < 50:
        host = _random_linear_space(rng, rng.randint(6, 12), rng.randint(6, 14))
        pat = _random_pattern(rng, host)
        if not pat.lines:
            continue
        ours = enumerate_embeddings(pat, host)
        assert as_pairs(ours) == oracle_embeddings(pat, host), (pat, host)
        assert all(is_embedding(pat, host, e) for e in ours)
        done += 1
