"""Degree-truncated DP-coloring of 3-connected plane graphs.

The threshold 16 splits the vertices into a low-degree part V1 and a
high-degree part V2.  V2 vertices sharing a face are made adjacent by
chords, a covering subgraph H of the vertex-face incidences of the drawn
G[V2] assigns each V2 vertex at most two faces to look after, and two
rules consume the graph: (R1) colors a free vertex of a non-safe
low-degree component, (R2) colors the next V2 vertex, picking its color
so that the components it looks after keep a vertex with list surplus.
Everything left at the end is safe and falls to the greedy finisher.
"""

from __future__ import annotations

from .core_graph import (blocks_and_cut_vertices, connected_components,
                         connectivity_at_least, degeneracy_order, is_complete_graph,
                         is_connected, is_gdp_tree)
from .dp_cover import Cover, is_coloring_valid, residual_cover
from .errors import (EmptyResidualList, GDPTreeTight, InternalInvariantBreach,
                     PreconditionViolated, ProtectorInfeasible)
from .exact_oracle import degree_dp_color
from .plane_embed import FaceClasses, augment_visibility, component_planes, \
    very_nice_subgraph

THRESHOLD = 16

NoMove = object()


def partition_threshold(g, k=THRESHOLD):
    """(V1, V2) split by degree in the original, unaugmented graph."""
    v1 = frozenset(v for v in g.vertices if g.degree(v) < k)
    return v1, g.vertices - v1


def plan_order(g, v2):
    """5-degenerate order on V2, components of G[V2] consecutive."""
    sub = g.subgraph(set(v2))
    return degeneracy_order(sub, 5, groups=connected_components(sub))


def is_safe(g, cover, q, phi):
    """A component is safe when its uncolored rest is not a GDP-tree or
    some uncolored vertex has more colors left than uncolored neighbors."""
    rest = [v for v in sorted(q) if v not in phi]
    if not rest:
        return True
    blocked = {v: set() for v in rest}
    for v in rest:
        for w in g.adj[v]:
            if w in phi:
                j = cover.partner(w, phi[w][1], v)
                if j is not None:
                    blocked[v].add(j)
    for v in rest:
        left = cover.sizes[v] - len(blocked[v])
        if left > sum(1 for w in g.adj[v] if w not in phi):
            return True
    sub = g.subgraph(rest)
    if not is_connected(sub):
        return True
    return not is_gdp_tree(sub)


class PipelineState:
    """Mutable run state; the step functions below drive it."""

    __slots__ = ("pg", "g", "cover", "v1", "v2", "order", "h_by_class",
                 "comps", "comp_of", "theta", "phi", "avail", "safe",
                 "protectors", "trace")

    protector_cap = 2

    def __init__(self, pg, cover, v1, v2, trace=None):
        self.v1 = frozenset(v1)
        self.v2 = frozenset(v2)
        if self.v2:
            pg = augment_visibility(pg, self.v2)
            if pg.g.m != cover.g.m:
                # chords between V2 vertices carry no matched pairs
                kept = {e: cover.edge_pairs(*e) for e in cover.g.edges()}
                cover = Cover(pg.g, cover.sizes, {e: p for e, p in kept.items() if p})
        self.pg = pg
        self.g = pg.g
        self.cover = cover
        self.order = tuple(plan_order(self.g, self.v2))
        h = set()
        for comp, pgq, cmap, v_star in component_planes(pg, self.v2):
            for v, f in very_nice_subgraph(pgq, v_star):
                h.add((v, cmap[f]))
        by_class = {}
        for v, c in h:
            by_class.setdefault(c, set()).add(v)
        self.h_by_class = {c: frozenset(vs) for c, vs in by_class.items()}
        self.comps = tuple(tuple(c) for c in
                           connected_components(self.g.subgraph(self.v1)))
        self.comp_of = {v: qi for qi, comp in enumerate(self.comps) for v in comp}
        self.theta = {}
        if self.v2:
            fc = FaceClasses(pg, self.v2)
            for qi, comp in enumerate(self.comps):
                cls = {fc.class_of(f) for v in comp for f in pg.faces_at(v)}
                assert len(cls) == 1, "component straddles face classes"
                self.theta[qi] = cls.pop()
            assert len(set(self.theta.values())) == len(self.theta), \
                "two components share a face class"
        self.phi = {}
        self.avail = {v: set(range(cover.sizes[v])) for v in self.g.vertices}
        self.safe = set()
        self.protectors = {}
        self.trace = trace
        self.check_invariants()

    def res_degree(self, v):
        return sum(1 for w in self.g.adj[v] if w not in self.phi)

    def assign(self, v, i):
        assert v not in self.phi and i in self.avail[v]
        self.phi[v] = (v, i)
        for w in self.g.adj[v]:
            if w not in self.phi:
                j = self.cover.partner(v, i, w)
                if j is not None:
                    self.avail[w].discard(j)

    def comp_safe_now(self, qi):
        rest = [v for v in self.comps[qi] if v not in self.phi]
        if not rest:
            return True
        for v in rest:
            if len(self.avail[v]) > self.res_degree(v):
                return True
        sub = self.g.subgraph(rest)
        if not is_connected(sub):
            return True
        return not is_gdp_tree(sub)

    def refresh_safety(self):
        """Unsafe component indices; the safe set only ever grows."""
        out = []
        for qi in range(len(self.comps)):
            if qi in self.safe:
                continue
            if self.comp_safe_now(qi):
                self.safe.add(qi)
            else:
                out.append(qi)
        return out

    def log(self, line):
        if self.trace is not None:
            self.trace.append(line)

    def check_invariants(self):
        for comp in self.comps:
            rest = [v for v in comp if v not in self.phi]
            if rest and not is_connected(self.g.subgraph(rest)):
                raise InternalInvariantBreach(
                    "(C1) uncolored part of component %d fell apart" % comp[0])
        for v in sorted(self.v1):
            if v not in self.phi and len(self.avail[v]) < self.res_degree(v):
                raise InternalInvariantBreach(
                    "(C2) list shorter than residual degree at %r" % (v,))
        for qi in sorted(self.safe):
            if not self.comp_safe_now(qi):
                raise InternalInvariantBreach(
                    "(C3) safety revoked on component %d" % self.comps[qi][0])
        counts = {}
        for v in self.protectors.values():
            counts[v] = counts.get(v, 0) + 1
        for v in sorted(counts):
            if counts[v] > self.protector_cap:
                raise InternalInvariantBreach(
                    "(D1) %r protects %d components" % (v, counts[v]))


def step_r1(state):
    """Color the smallest free vertex of a non-safe component.

    Free means: not a cut vertex of the component's uncolored part and
    no uncolored V2 neighbor.  Returns NoMove when nothing qualifies.
    """
    best = None
    for qi in state.refresh_safety():
        rest = [v for v in state.comps[qi] if v not in state.phi]
        cuts = blocks_and_cut_vertices(state.g.subgraph(rest))[1]
        for v in rest:
            if v in cuts:
                continue
            if any(w in state.v2 and w not in state.phi for w in state.g.adj[v]):
                continue
            if best is None or v < best:
                best = v
            break
    if best is None:
        return NoMove
    if not state.avail[best]:
        raise EmptyResidualList("no color left at %r during (R1)" % (best,))
    i = min(state.avail[best])
    state.assign(best, i)
    state.log("R1 %d %d.%d" % (best, best, i))
    state.check_invariants()
    return state


def step_r2(state):
    """Color the next V2 vertex, protecting the components it looks after.

    For each non-safe component in one of v's assigned face classes with
    an uncolored neighbor u of residual degree at most 5, the chosen
    color avoids the matched partners of u's remaining list, so u ends
    up with more colors than uncolored neighbors.
    """
    left = [v for v in state.order if v not in state.phi]
    assert left, "step_r2 needs an uncolored high-degree vertex"
    v = left[0]
    assert len(state.avail[v]) >= THRESHOLD - 5, \
        "(C4) %r reached its turn with %d colors" % (v, len(state.avail[v]))
    gathered = []
    for qi in state.refresh_safety():
        if v not in state.h_by_class.get(state.theta[qi], ()):
            continue
        cands = []
        for u in state.g.adj[v]:
            if state.comp_of.get(u) == qi and u not in state.phi:
                rd = state.res_degree(u)
                if rd <= 5:
                    cands.append((rd, u))
        if not cands:
            continue
        u = min(cands)[1]
        forb = set()
        for j in state.avail[u]:
            p = state.cover.partner(u, j, v)
            if p is not None:
                forb.add(p)
        assert len(forb) <= 5, "(D2) protection of %d would cost %d" % (qi, len(forb))
        gathered.append((qi, u, forb))
    assert len(gathered) <= 2, "(D1) %r asked to protect %d components" % (v, len(gathered))
    forbidden = set()
    for _, _, forb in gathered:
        forbidden |= forb
    allowed = sorted(state.avail[v] - forbidden)
    if not allowed:
        raise ProtectorInfeasible(
            "every color of %r is matched into a protected list" % (v,))
    i = allowed[0]
    state.assign(v, i)
    for qi, u, _ in gathered:
        state.protectors[qi] = v
        state.safe.add(qi)
    line = "R2 %d %d.%d" % (v, v, i)
    if gathered:
        line += " protects " + " ".join(str(state.comps[qi][0]) for qi, _, _ in gathered)
    state.log(line)
    state.check_invariants()
    return state


def finish(state):
    """Greedy-color every uncolored component and validate the total."""
    assert state.v2 <= set(state.phi), "finish needs every V2 vertex colored"
    res, kept = residual_cover(state.cover, state.phi)
    for v in res.g.vertices:
        assert kept[v] == sorted(state.avail[v]), "availability drifted at %r" % (v,)
    phi = dict(state.phi)
    for comp in connected_components(res.g):
        sub = res.subcover(comp)
        try:
            col = degree_dp_color(sub.g, sub)
        except GDPTreeTight:
            raise GDPTreeTight("component %d was never made safe" % comp[0])
        for v, (_, i) in col.items():
            phi[v] = (v, kept[v][i])
    assert is_coloring_valid(state.cover, phi)
    return phi


def color_planar_truncated(pg, cover, trace=None):
    """Color a 3-connected non-complete plane graph under a cover with
    list sizes at least min(16, degree).  trace, when given, is a list
    that receives one line per R1/R2 step for replay checking."""
    g = pg.g
    if cover.g.vertices != g.vertices or cover.g.edges() != g.edges():
        raise ValueError("graph does not match the cover's graph")
    if not connectivity_at_least(g, 3):
        raise PreconditionViolated("input graph is not 3-connected")
    if is_complete_graph(g):
        raise PreconditionViolated("complete graphs are excluded")
    for v in sorted(g.vertices):
        if cover.sizes[v] < min(THRESHOLD, g.degree(v)):
            raise PreconditionViolated(
                "list at %r is smaller than min(%d, degree)" % (v, THRESHOLD))
    v1, v2 = partition_threshold(g)
    state = PipelineState(pg, cover, v1, v2, trace=trace)
    while True:
        while step_r1(state) is not NoMove:
            pass
        if state.v2 <= set(state.phi):
            break
        step_r2(state)
    phi = finish(state)
    assert is_coloring_valid(cover, phi)
    return phi
