"""Degree-truncated DP-coloring for s-connected graphs from a proper
minor-closed class.

The class enters only through two numbers: a K_{s,t}-minor-free graph is
(2^{s+2}t-1)-degenerate, and in a bipartite contraction whose branch
side has degrees >= s the other side keeps a vertex of degree at most
4^{s+1}s!st.  From those, vertices of degree >= k form V2, every V2
vertex gets a q-color sublist chosen so that sublists of adjacent V2
vertices share no matched pair, the components of G[V1] are contracted
and peeled against V2, and the peel order is colored with the same (R1)
rule as the planar pipeline.  When a V2 vertex is colored, it protects
the not-yet-safe components that the peel assigned to it; each costs at
most s+t-1 forbidden colors because leaf blocks have at most s+t-1
vertices.  The true constants are astronomically past desk scale, so the
entry point takes overridable parameters and refuses real ones whenever
the high-degree machinery would actually engage.
"""

from __future__ import annotations

import math

from .core_graph import (Graph, connected_components, connectivity_at_least,
                         degeneracy_order, is_gdp_tree)
from .dp_cover import is_coloring_valid
from .errors import (ColorExhausted, DegreeBelowS, InstanceTooLarge, ListTooSmall,
                     PeelBoundExceeded, PreconditionViolated)
from .exact_oracle import degree_dp_color
from .planar_truncated import NoMove, PipelineState, finish, step_r1


class ClassParams:
    """Pipeline constants for a K_{s,t}-minor-free class."""

    __slots__ = ("s", "t", "q", "k", "peel_bound", "degeneracy_bound", "overridden")

    def __init__(self, s, t, q, k, peel_bound, degeneracy_bound, overridden):
        assert s >= 1 and t >= 1 and q >= 1 and k >= 1
        self.s = s
        self.t = t
        self.q = q
        self.k = k
        self.peel_bound = peel_bound
        self.degeneracy_bound = degeneracy_bound
        self.overridden = overridden

    def with_overrides(self, q=None, k=None, peel_bound=None, degeneracy_bound=None):
        return ClassParams(
            self.s, self.t,
            self.q if q is None else q,
            self.k if k is None else k,
            self.peel_bound if peel_bound is None else peel_bound,
            self.degeneracy_bound if degeneracy_bound is None else degeneracy_bound,
            True)

    def __repr__(self):
        return "ClassParams(s=%d, t=%d, q=%d, k=%d, peel=%d, degen=%d%s)" % (
            self.s, self.t, self.q, self.k, self.peel_bound,
            self.degeneracy_bound, ", overridden" if self.overridden else "")


def constants(s, t):
    """Exact constants for the class; plain ints, arbitrary precision."""
    assert s >= 1 and t >= 1
    peel = 4 ** (s + 1) * math.factorial(s) * s * t
    q = peel * (s + t - 1) + 1
    k = 2 ** (s + 2) * t * q
    degen = 2 ** (s + 2) * t - 1
    return ClassParams(s, t, q, k, peel, degen, False)


def select_sublists(g, v2_order, c, q):
    """q colors per V2 vertex, smallest ids first, skipping the matched
    partners of sublists already fixed on earlier neighbors.  The result
    has no matched pair between sublists of adjacent V2 vertices, so the
    V2 side can be treated as independent from here on."""
    chosen = {}
    for v in v2_order:
        banned = set()
        for w in g.adj[v]:
            if w in chosen:
                for j in chosen[w]:
                    p = c.partner(w, j, v)
                    if p is not None:
                        banned.add(p)
        free = [i for i in range(c.sizes[v]) if i not in banned]
        if len(free) < q:
            raise ListTooSmall(
                "%d of %d colors left at %r, need %d"
                % (len(free), c.sizes[v], v, q))
        chosen[v] = tuple(free[:q])
    return chosen


def contract_components(g, v1, s=None):
    """Bipartite contraction: each component of G[V1] becomes one node,
    named by its smallest vertex, adjacent to the V2 vertices it touches.
    With s given, every component node must see at least s V2 vertices."""
    v1 = frozenset(v1)
    v2 = g.vertices - v1
    node_of = {}
    for comp in connected_components(g.subgraph(v1)):
        for v in comp:
            node_of[v] = comp[0]
    edges = set()
    for u in sorted(v2):
        for w in g.adj[u]:
            if w in node_of:
                n = node_of[w]
                edges.add((min(u, n), max(u, n)))
    gp = Graph(set(node_of.values()) | v2, sorted(edges))
    if s is not None:
        for n in sorted(set(node_of.values())):
            if gp.degree(n) < s:
                raise DegreeBelowS(
                    "component %r sees %d high-degree vertices, needs %d"
                    % (n, gp.degree(n), s))
    return gp, node_of


class PeelPlan:
    """Coloring order u_1..u_p of V2 with the component nodes each one
    is responsible for.  parts[i] lists the nodes whose last V2 neighbor
    in the order is order[i]."""

    __slots__ = ("order", "parts")

    def __init__(self, order, parts):
        assert len(order) == len(parts)
        self.order = tuple(order)
        self.parts = tuple(tuple(p) for p in parts)


def peel_sequence(gp, b, bound):
    """Repeatedly delete the min-degree vertex of the b side together
    with its current neighborhood on the other side; the coloring order
    is the reverse of the deletion order."""
    adj = {v: set(gp.adj[v]) for v in gp.vertices}
    b_left = set(b)
    a_left = set(gp.vertices) - b_left
    rev = []
    while b_left:
        u = min(b_left, key=lambda v: (len(adj[v]), v))
        if len(adj[u]) > bound:
            raise PeelBoundExceeded(
                "%r has degree %d, peel bound is %d" % (u, len(adj[u]), bound))
        r = sorted(adj[u])
        b_left.remove(u)
        for x in adj.pop(u):
            adj[x].discard(u)
        for w in r:
            a_left.remove(w)
            for x in adj.pop(w):
                adj[x].discard(w)
        rev.append((u, r))
    assert not a_left, "component nodes survived the peel"
    rev.reverse()
    return PeelPlan([u for u, _ in rev], [r for _, r in rev])


class MinorState(PipelineState):
    """Run state for the minor pipeline.  Reuses the planar state's
    bookkeeping and the shared (R1) rule; the embedding-tied fields stay
    empty because protection duty comes from the peel plan instead of
    face classes."""

    __slots__ = ("plan", "node_comp", "params", "protector_cap")

    def __init__(self, g, cover, v1, v2, plan, sublists, params, trace=None):
        self.v1 = frozenset(v1)
        self.v2 = frozenset(v2)
        self.pg = None
        self.g = g
        self.cover = cover
        self.order = tuple(plan.order)
        self.h_by_class = {}
        self.theta = {}
        self.comps = tuple(tuple(c) for c in
                           connected_components(g.subgraph(self.v1)))
        self.comp_of = {v: qi for qi, comp in enumerate(self.comps) for v in comp}
        self.node_comp = {comp[0]: qi for qi, comp in enumerate(self.comps)}
        self.plan = plan
        self.params = params
        self.phi = {}
        self.avail = {v: set(range(cover.sizes[v])) for v in g.vertices}
        for v in self.v2:
            self.avail[v] = set(sublists[v])
        self.safe = set()
        self.protectors = {}
        self.protector_cap = max(params.peel_bound, 1)
        self.trace = trace
        self.check_invariants()


def step_r2(state, idx):
    """Color the next vertex of the peel order, protecting every
    non-safe component in its part of the plan.  Mirrors the planar
    rule: each protected component contributes the matched partners of
    one cheap neighbor's list, at most s+t-1 colors."""
    u = state.plan.order[idx]
    assert u not in state.phi and all(w in state.phi for w in state.order[:idx])
    q = state.params.q
    cost_cap = state.params.s + state.params.t - 1
    part = state.plan.parts[idx]
    assert len(state.avail[u]) == q, \
        "(C4) sublist of %r shrank to %d" % (u, len(state.avail[u]))
    assert cost_cap * len(part) < q, \
        "(D2) part of %d components cannot be protected with q=%d" % (len(part), q)
    unsafe = set(state.refresh_safety())
    gathered = []
    for node in part:
        qi = state.node_comp[node]
        if qi not in unsafe:
            continue
        cands = []
        for w in state.g.adj[u]:
            if state.comp_of.get(w) == qi and w not in state.phi:
                rd = state.res_degree(w)
                if rd <= cost_cap:
                    cands.append((rd, w))
        assert cands, "no cheap neighbor in component %d" % state.comps[qi][0]
        w = min(cands)[1]
        forb = set()
        for j in state.avail[w]:
            p = state.cover.partner(w, j, u)
            if p is not None:
                forb.add(p)
        assert len(forb) <= cost_cap, \
            "(D2) protection of %d would cost %d" % (qi, len(forb))
        gathered.append((qi, w, forb))
    forbidden = set()
    for _, _, forb in gathered:
        forbidden |= forb
    allowed = sorted(state.avail[u] - forbidden)
    if not allowed:
        raise ColorExhausted(
            "every color of %r is matched into a protected list" % (u,))
    i = allowed[0]
    state.assign(u, i)
    for qi, _, _ in gathered:
        state.protectors[qi] = u
        state.safe.add(qi)
    line = "R2 %d %d.%d" % (u, u, i)
    if gathered:
        line += " protects " + " ".join(str(state.comps[qi][0]) for qi, _, _ in gathered)
    state.log(line)
    state.check_invariants()
    return state


def color_minor_truncated(g, c, params, trace=None):
    """Color an s-connected non-GDP-tree under a cover with list sizes
    at least min(params.k, degree).  With the real constants the
    high-degree machinery only fits graphs far past desk scale, so
    instances that would engage it are refused unless params carries
    overridden values."""
    if c.g.vertices != g.vertices or c.g.edges() != g.edges():
        raise ValueError("graph does not match the cover's graph")
    for v in sorted(g.vertices):
        if c.sizes[v] < min(params.k, g.degree(v)):
            raise PreconditionViolated(
                "list at %r is smaller than min(k, degree)" % (v,))
    if params.s == 1:
        # K_{1,t}-minor-free caps the maximum degree below k, so the
        # truncation never bites and the degree-DP argument is the
        # whole pipeline
        if is_gdp_tree(g):
            raise PreconditionViolated("GDP-trees are excluded")
        return degree_dp_color(g, c)
    v1 = frozenset(v for v in g.vertices if g.degree(v) < params.k)
    v2 = g.vertices - v1
    if v2 and not params.overridden:
        raise InstanceTooLarge(
            "%d vertices of degree >= %d; override the constants for desk scale"
            % (len(v2), params.k))
    if not connectivity_at_least(g, params.s):
        raise PreconditionViolated("input graph is not %d-connected" % params.s)
    if is_gdp_tree(g):
        raise PreconditionViolated("GDP-trees are excluded")
    if v2:
        order_w = degeneracy_order(g.subgraph(v2), params.degeneracy_bound)
        sublists = select_sublists(g, order_w, c, params.q)
        gp, _ = contract_components(g, v1, s=params.s)
        plan = peel_sequence(gp, v2, params.peel_bound)
    else:
        # everything is low degree; one non-GDP-tree component, so the
        # finisher alone suffices
        sublists = {}
        plan = PeelPlan([], [])
    state = MinorState(g, c, v1, v2, plan, sublists, params, trace=trace)
    for idx in range(len(plan.order)):
        while step_r1(state) is not NoMove:
            pass
        step_r2(state, idx)
    while step_r1(state) is not NoMove:
        pass
    phi = finish(state)
    assert is_coloring_valid(c, phi)
    return phi
