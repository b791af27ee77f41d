import itertools
from types import SimpleNamespace

import pytest

from corpus import nx_planar_rotation
from dpchroma.cli import Xorshift64Star, generate_hub_instance, random_tight_matchings
from dpchroma.core_graph import Graph, connectivity_at_least
from dpchroma.dp_cover import Cover, degree_truncated_sizes, is_coloring_valid
from dpchroma.errors import EmptyResidualList, GDPTreeTight, PreconditionViolated
from dpchroma.exact_oracle import solve_cover
from dpchroma.plane_embed import PlaneGraph
from dpchroma.planar_truncated import (NoMove, PipelineState, color_planar_truncated,
                                       finish, is_safe, partition_threshold,
                                       plan_order, step_r1, step_r2)


def nx_plane(name):
    import networkx as nx

    G = {"icosahedron": nx.icosahedral_graph,
         "dodecahedron": nx.dodecahedral_graph}[name]()
    g = Graph(range(G.number_of_nodes()),
              [(min(u, w), max(u, w)) for u, w in G.edges()])
    return PlaneGraph(g, nx_planar_rotation(g))


def tight_cover(g, seed):
    sizes = degree_truncated_sizes(g, 16)
    return Cover(g, sizes, random_tight_matchings(g, sizes, Xorshift64Star(seed)))


def drum_plane(quarter=15, perm=(0, 1, 2, 3)):
    """Inner 8-cycle, ring of four hubs, outer cycle in four fanned
    quarters with shared ends.  perm places hub ids around the ring."""
    k = 8
    hub = lambda j: 8 + perm[j % 4]
    n_o = 4 * quarter
    out = lambda i: 12 + (i % n_o)
    edges = []
    rot = {}
    for i in range(k):
        edges.append((i, (i + 1) % k))
        edges.append((i, hub(i // 2)))
        rot[i] = ((i + 1) % k, (i - 1) % k, hub(i // 2))
    for j in range(4):
        edges.append((hub(j), hub(j + 1)))
    for i in range(n_o):
        edges.append((out(i), out(i + 1)))
        edges.append((out(i), hub(i // quarter)))
        if i % quarter == 0:
            edges.append((out(i), hub(i // quarter - 1)))
            rot[out(i)] = (out(i + 1), hub(i // quarter), hub(i // quarter - 1), out(i - 1))
        else:
            rot[out(i)] = (out(i + 1), hub(i // quarter), out(i - 1))
    for j in range(4):
        rot[hub(j)] = (hub(j + 1), 2 * j + 1, 2 * j, hub(j - 1)) + tuple(
            out(i) for i in range(quarter * j, quarter * (j + 1) + 1))
    g = Graph(range(12 + n_o), edges)
    return PlaneGraph(g, rot)


def drum_forcing_cover(pg):
    """Identity matchings, except hub 11: its first free color (3, after
    the protection of the inner cycle forbids 0..2) is matched into
    every list of its own outer quarter.  Coloring 11 then leaves that
    whole quarter tight, so the outer cycle stays unsafe and (R1) has
    to march along the freed arc."""
    g = pg.g
    sizes = degree_truncated_sizes(g, 16)
    matchings = {}
    for u, w in g.edges():
        if u in (8, 9, 10, 11) and w in (8, 9, 10, 11):
            continue
        small = min(sizes[u], sizes[w])
        if 11 in (u, w) and u + w - 11 >= 12:
            pairs = [(3 + t, t) for t in range(small)] if u == 11 else \
                [(t, 3 + t) for t in range(small)]
        else:
            pairs = [(t, t) for t in range(small)]
        matchings[(u, w)] = pairs
    return Cover(g, sizes, matchings)


def test_partition_threshold():
    ico = nx_plane("icosahedron").g
    v1, v2 = partition_threshold(ico)
    assert v2 == frozenset() and v1 == ico.vertices
    star = Graph(range(21), [(0, i) for i in range(1, 21)])
    assert partition_threshold(star)[1] == frozenset({0})
    for hubs, rim in ((1, 20), (2, 24), (3, 31)):
        pg, _ = generate_hub_instance(hubs, rim, 1)
        v1, v2 = partition_threshold(pg.g)
        assert v2 == frozenset(range(rim, rim + hubs))


def test_plan_order():
    ico = nx_plane("icosahedron").g
    assert plan_order(ico, set()) == []
    pg, _ = generate_hub_instance(3, 34, 2)
    g = pg.g.with_edge(34, 35)  # the chord augmentation would add
    order = plan_order(g, {34, 35, 36})
    assert order == [35, 34, 36]  # fan hubs contiguous, then the outer hub
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        assert sum(1 for w in g.adj[v] if w in pos and pos[w] < pos[v]) <= 5


def test_is_safe_examples():
    p3 = Graph(range(3), [(0, 1), (1, 2)])
    tight = Cover(p3, {0: 1, 1: 2, 2: 1}, {})
    assert not is_safe(p3, tight, [0, 1, 2], {})
    c5 = Graph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    surplus = Cover(c5, {0: 3, 1: 2, 2: 2, 3: 2, 4: 2}, {})
    assert is_safe(c5, surplus, range(5), {})
    k4e = Graph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    sizes = {v: k4e.degree(v) for v in range(4)}
    assert is_safe(k4e, Cover(k4e, sizes, {}), range(4), {})
    # a colored neighbor that removes no color leaves a surplus
    part = Cover(p3, {0: 1, 1: 2, 2: 1}, {(0, 1): [(0, 0)]})
    assert is_safe(p3, part, [1, 2], {0: (0, 0)}) is False
    assert is_safe(p3, Cover(p3, {0: 1, 1: 2, 2: 1}, {}), [1, 2], {0: (0, 0)})


def test_v2_empty_polyhedra():
    for name in ("icosahedron", "dodecahedron"):
        pg = nx_plane(name)
        for seed in (1, 2, 3, 4, 5):
            cover = tight_cover(pg.g, seed)
            trace = []
            phi = color_planar_truncated(pg, cover, trace=trace)
            assert trace == []  # no high-degree part, the finisher does it all
            assert is_coloring_valid(cover, phi)
    pg = nx_plane("icosahedron")
    cover = tight_cover(pg.g, 77)
    assert solve_cover(pg.g, cover) is not None


def test_preconditions():
    k4 = Graph(range(4), list(itertools.combinations(range(4), 2)))
    pk4 = PlaneGraph(k4, {0: (1, 3, 2), 1: (2, 3, 0), 2: (0, 3, 1), 3: (2, 0, 1)})
    with pytest.raises(PreconditionViolated):
        color_planar_truncated(pk4, Cover(k4, {v: 3 for v in range(4)}, {}))
    c5 = Graph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    pc5 = PlaneGraph(c5, {i: ((i + 1) % 5, (i - 1) % 5) for i in range(5)})
    with pytest.raises(PreconditionViolated):
        color_planar_truncated(pc5, Cover(c5, {v: 2 for v in range(5)}, {}))
    pg, cover = generate_hub_instance(1, 20, 1)
    sizes = dict(cover.sizes)
    sizes[0] -= 1
    with pytest.raises(PreconditionViolated):
        color_planar_truncated(pg, Cover(pg.g, sizes, {}))


def test_hub_instances_color():
    for hubs, rims in ((1, (20, 45)), (2, (24, 60)), (3, (30, 52))):
        for rim in rims:
            for seed in (1, 9):
                pg, cover = generate_hub_instance(hubs, rim, seed)
                trace = []
                phi = color_planar_truncated(pg, cover, trace=trace)
                assert is_coloring_valid(cover, phi)
                assert sum(1 for ln in trace if ln.startswith("R2")) == hubs


def test_pipeline_deterministic():
    runs = []
    for _ in range(2):
        pg, cover = generate_hub_instance(3, 40, 13)
        trace = []
        phi = color_planar_truncated(pg, cover, trace=trace)
        runs.append(("\n".join(trace), sorted(phi.items())))
    assert runs[0] == runs[1]


def test_drum_double_protection():
    pg = drum_plane()
    assert connectivity_at_least(pg.g, 3)
    cover = tight_cover(pg.g, 1)
    trace = []
    phi = color_planar_truncated(pg, cover, trace=trace)
    assert is_coloring_valid(cover, phi)
    # the ring of hubs bounds two face classes; the first hub serves both
    # and finds both cycles unsafe, so one color protects two components
    assert trace[0].startswith("R2 11 ") and trace[0].endswith("protects 0 12")


def test_drum_r1_march():
    pg = drum_plane(perm=(0, 3, 1, 2))
    cover = drum_forcing_cover(pg)
    traces = []
    for _ in range(2):
        trace = []
        phi = color_planar_truncated(pg, cover, trace=trace)
        assert is_coloring_valid(cover, phi)
        traces.append(list(trace))
    assert traces[0] == traces[1]
    trace = traces[0]
    assert trace[0] == "R2 11 11.3 protects 0"
    r1 = [ln for ln in trace if ln.startswith("R1")]
    assert len(r1) == 14 and r1[0] == "R1 28 28.1" and r1[-1] == "R1 41 41.2"
    assert "R2 9 9.0 protects 12" in trace


def test_step_functions_direct():
    pg = drum_plane(perm=(0, 3, 1, 2))
    cover = drum_forcing_cover(pg)
    v1, v2 = partition_threshold(pg.g)
    st = PipelineState(pg, cover, v1, v2)
    assert step_r1(st) is NoMove  # every low vertex still sees an uncolored hub
    step_r2(st)
    assert st.phi[11] == (11, 3)
    assert step_r1(st) is st and st.phi[28] == (28, 1)
    st.avail[29].clear()
    with pytest.raises(EmptyResidualList):
        step_r1(st)


def test_step_r1_nomove_when_all_safe():
    pg = nx_plane("icosahedron")
    cover = tight_cover(pg.g, 3)
    v1, v2 = partition_threshold(pg.g)
    st = PipelineState(pg, cover, v1, v2)
    assert step_r1(st) is NoMove
    assert st.safe == {0}


def test_finish_rejects_desafed_state():
    p3 = Graph(range(3), [(0, 1), (1, 2)])
    cover = Cover(p3, {0: 1, 1: 2, 2: 1}, {(0, 1): [(0, 0)], (1, 2): [(1, 0)]})
    state = SimpleNamespace(v2=frozenset(), phi={}, cover=cover,
                            avail={v: set(range(cover.sizes[v])) for v in range(3)})
    with pytest.raises(GDPTreeTight):
        finish(state)


def test_replay_keeps_c1_c2():
    pg, cover = generate_hub_instance(2, 26, 21)
    trace = []
    phi = color_planar_truncated(pg, cover, trace=trace)
    g = pg.g
    v1, _ = partition_threshold(g)
    done = {}
    for line in trace:
        parts = line.split()
        v, color = int(parts[1]), parts[2]
        cv, i = color.split(".")
        assert int(cv) == v
        done[v] = (v, int(i))
        rest = sorted(set(g.vertices) - set(done))
        for comp_rest in _components(g, [u for u in rest if u in v1]):
            assert _connected_within(g, comp_rest)
        for u in rest:
            if u not in v1:
                continue
            blocked = set()
            for w in g.adj[u]:
                if w in done:
                    j = cover.partner(w, done[w][1], u)
                    if j is not None:
                        blocked.add(j)
            res_deg = sum(1 for w in g.adj[u] if w not in done)
            assert cover.sizes[u] - len(blocked) >= res_deg
    assert all(phi[v] == done[v] for v in done)
    assert is_coloring_valid(cover, phi)


def _components(g, vs):
    vs = set(vs)
    out = []
    while vs:
        comp = {vs.pop()}
        queue = list(comp)
        while queue:
            v = queue.pop()
            for w in g.adj[v]:
                if w in vs:
                    vs.remove(w)
                    comp.add(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def _connected_within(g, comp):
    seen = {comp[0]}
    queue = [comp[0]]
    cs = set(comp)
    while queue:
        v = queue.pop()
        for w in g.adj[v]:
            if w in cs and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == cs
