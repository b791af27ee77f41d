import itertools

import pytest

from dpchroma.constructions import (
    build_G42,
    build_H,
    build_k2_k2,
    build_ks_minus1,
    cascade_instance,
    chain_case,
    chain_graph,
    chain_token_pairs,
    forcing_instance,
    gadget_h,
    gadget_h_names,
    gadget_h_plane,
    verify_counterexample,
    verify_gadget,
    w_gadget_instance,
)
from dpchroma.errors import InstanceTooLarge, ReconstructionFailed
from dpchroma.exact_oracle import find_list_coloring


def proper_colorings(g, lists):
    vs = sorted(g.vertices)
    es = g.edges()
    out = []
    for combo in itertools.product(*(lists[v] for v in vs)):
        col = dict(zip(vs, combo))
        if all(col[u] != col[w] for u, w in es):
            out.append(col)
    return out


def test_gadget_shape():
    g, lists = gadget_h()
    assert g.n == 28 and g.m == 77
    names = gadget_h_names()
    by_name = {names[v]: v for v in g.vertices}
    assert g.degree(by_name["x"]) == 11 and g.degree(by_name["y"]) == 11
    for nm in ("u1", "u2", "v1", "v2"):
        assert g.degree(by_name[nm]) == 12
    assert g.degree(by_name["u3"]) == 7 and g.degree(by_name["v3"]) == 7
    # interior list sizes track min(degree, 7); x and y are forced
    for v in range(2, 28):
        assert len(lists[v]) == min(g.degree(v), 7)
    assert lists[by_name["x"]] == ["a"] and lists[by_name["y"]] == ["b"]
    # the two K4s that drive the pair-split claim
    for quad in ([by_name[n] for n in ("u1", "v1", "w1", "w2")],
                 [by_name[n] for n in ("u1", "v1", "w3", "w4")]):
        for u, w in itertools.combinations(quad, 2):
            assert g.has_edge(u, w)
    assert not g.has_edge(by_name["x"], by_name["y"])


def test_gadget_plane_embedding():
    pg = gadget_h_plane()
    assert pg.face_count() == 51
    assert sorted(pg.face_vertices(pg.outer)) == [0, 1, 4, 7]


def test_pair_split_claim_brute_force():
    g, lists = w_gadget_instance()
    cols = proper_colorings(g, lists)
    assert len(cols) > 0
    lo, hi = {1, 2}, {4, 5}
    for c in cols:
        pair = {c[2], c[5]}
        assert len(pair & lo) == 1 and len(pair & hi) == 1, c


def test_forcing_claim_brute_force():
    g, lists = forcing_instance()
    cols = proper_colorings(g, lists)
    assert len(cols) > 0
    assert all(c[3] == 5 for c in cols)


def test_cascade_claim_brute_force():
    g, lists = cascade_instance()
    assert proper_colorings(g, lists) == []


def test_gadget_not_list_colorable():
    g, lists = gadget_h()
    assert find_list_coloring(g, lists) is None


def test_verify_gadget_all_green():
    rows = verify_gadget()
    assert [name for name, ok in rows if not ok] == []
    assert len(rows) == 8


def test_chain_shape():
    g, lists = chain_graph()
    assert g.n == 1094 and g.m == 3276
    assert g.degree(0) == 463 and g.degree(1) == 463
    assert g.has_edge(0, 1)
    assert all(len(lists[v]) == min(g.degree(v), 7) for v in g.vertices)
    pairs = chain_token_pairs()
    assert len(pairs) == 42 and len(set(pairs)) == 42
    assert pairs[0] == ("a", "b") and pairs[-1] == ("g", "f")


def test_chain_case_lists_lose_fan_tokens():
    g, lists = chain_case(0)   # pair (a, b)
    assert g.n == 26 and g.m == 55
    base = min(g.vertices)
    # u1 saw both x and y, so both letters are gone
    assert lists[base] == [1, 2, 3, 4, 5]
    # w2 keeps only its numeric part, w4 likewise
    assert lists[base + 7] == [1, 2, 3]
    assert lists[base + 9] == [3, 4, 5]
    for v in g.vertices:
        assert all(isinstance(t, int) for t in lists[v])


def test_two_chain_cases_refuted():
    for i in (0, 41):
        g, lists = chain_case(i)
        assert find_list_coloring(g, lists) is None


def test_build_k2_k2_instances():
    for k in (1, 2, 3):
        g, lists = build_k2_k2(k)
        assert g.n == 2 + k * k and g.m == 2 * k * k
        if k >= 2:
            assert all(len(lists[v]) == min(g.degree(v), k) for v in g.vertices)
        assert find_list_coloring(g, lists) is None


def test_build_ks_minus1_instances():
    g, lists = build_ks_minus1(2, 3)
    assert g.n == 4 and sorted(len(lists[v]) for v in g.vertices) == [1, 1, 1, 3]
    assert find_list_coloring(g, lists) is None
    # same shape as the k=2 square instance
    g2, lists2 = build_ks_minus1(3, 2)
    gk, _ = build_k2_k2(2)
    assert g2.n == gk.n and g2.m == gk.m
    assert find_list_coloring(g2, lists2) is None
    with pytest.raises(InstanceTooLarge):
        build_ks_minus1(8, 4)


def test_build_H_validates_and_rejects():
    gh = build_H()
    assert gh.g.n == 28 and gh.plane.face_count() == 51
    assert gh.names[0] == "x" and gh.names[3] == "u2"
    with pytest.raises(ReconstructionFailed):
        build_H("a", "a")
    with pytest.raises(ReconstructionFailed):
        build_H(2, "b")


def test_verify_counterexample_dispatch():
    for fam, kw in (("k2k2", dict(k=2)), ("ks", dict(s=3, k=2))):
        rows = verify_counterexample(fam, **kw)
        assert rows and all(ok for _, ok in rows)
    g, lists = build_G42()
    assert (g.n, g.m) == (1094, 3276)
