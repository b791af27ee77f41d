"""Undirected simple graphs with the little structure theory we need.

Vertices are arbitrary non-negative ints (dense 0..n-1 in files, but
induced subgraphs keep their original ids).  A Graph is immutable once
built; operations return new graphs.  All iteration orders are sorted so
every algorithm downstream is deterministic.
"""

from __future__ import annotations

from .errors import MalformedInput, NotConnected, NotDegenerate


class Graph:
    __slots__ = ("vertices", "adj")

    def __init__(self, vertices, edges):
        vs = frozenset(vertices)
        adj = {v: set() for v in vs}
        for u, w in edges:
            if u == w:
                raise ValueError("self-loop at %r" % (u,))
            if u not in vs or w not in vs:
                raise ValueError("edge (%r, %r) uses unknown vertex" % (u, w))
            adj[u].add(w)
            adj[w].add(u)
        self.vertices = vs
        self.adj = {v: frozenset(ns) for v, ns in adj.items()}

    @property
    def n(self):
        return len(self.vertices)

    @property
    def m(self):
        return sum(len(ns) for ns in self.adj.values()) // 2

    def degree(self, v):
        return len(self.adj[v])

    def neighbors(self, v):
        return self.adj[v]

    def has_edge(self, u, w):
        return w in self.adj.get(u, ())

    def edges(self):
        """Sorted list of edges as (min, max) tuples."""
        out = []
        for v in sorted(self.vertices):
            for w in self.adj[v]:
                if v < w:
                    out.append((v, w))
        out.sort()
        return out

    def subgraph(self, keep) -> "Graph":
        keep = frozenset(keep)
        assert keep <= self.vertices
        edges = [(u, w) for u, w in self.edges() if u in keep and w in keep]
        return Graph(keep, edges)

    def without_vertex(self, v) -> "Graph":
        return self.subgraph(self.vertices - {v})

    def with_edge(self, u, w) -> "Graph":
        assert u in self.vertices and w in self.vertices and u != w
        return Graph(self.vertices, self.edges() + [(min(u, w), max(u, w))])

    def max_degree(self):
        return max((len(ns) for ns in self.adj.values()), default=0)

    def __repr__(self):
        return "Graph(n=%d, m=%d)" % (self.n, self.m)


def parse_graph(text: str) -> Graph:
    """Read the plain `v`/`e` format; `c` lines are comments."""
    count = None
    edges = []
    seen = set()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "v":
            if count is not None:
                raise MalformedInput("second v line", ln)
            if len(parts) != 2:
                raise MalformedInput("v line needs one count", ln)
            try:
                count = int(parts[1])
            except ValueError:
                raise MalformedInput("bad vertex count %r" % parts[1], ln)
            if count < 0:
                raise MalformedInput("negative vertex count", ln)
        elif parts[0] == "e":
            if count is None:
                raise MalformedInput("e line before v line", ln)
            if len(parts) != 3:
                raise MalformedInput("e line needs two endpoints", ln)
            try:
                u, w = int(parts[1]), int(parts[2])
            except ValueError:
                raise MalformedInput("bad endpoint on e line", ln)
            if not (0 <= u < count and 0 <= w < count):
                raise MalformedInput("endpoint out of range", ln)
            if u == w:
                raise MalformedInput("self-loop", ln)
            key = (min(u, w), max(u, w))
            if key in seen:
                raise MalformedInput("duplicate edge %d %d" % key, ln)
            seen.add(key)
            edges.append(key)
        else:
            raise MalformedInput("unknown record %r" % parts[0], ln)
    if count is None:
        raise MalformedInput("missing v line")
    return Graph(range(count), edges)


def write_graph(g: Graph) -> str:
    assert g.vertices == frozenset(range(g.n)), "file format needs dense ids"
    lines = ["v %d" % g.n]
    lines.extend("e %d %d" % e for e in g.edges())
    return "\n".join(lines) + "\n"


def connected_components(g: Graph):
    """Components as sorted vertex lists, ordered by smallest member."""
    seen = set()
    comps = []
    for s in sorted(g.vertices):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = [s]
        while queue:
            v = queue.pop()
            for w in sorted(g.adj[v]):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def bfs_parents(g: Graph, source):
    """BFS tree as {vertex: parent}; source maps to None.

    Neighbors are scanned in sorted order, so the tree is canonical.
    Only the component of source is reached.
    """
    parent = {source: None}
    queue = [source]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in sorted(g.adj[v]):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return parent, queue


def blocks_and_cut_vertices(g: Graph):
    """Biconnected components (iterative Hopcroft-Tarjan).

    Returns (blocks, cuts): blocks is a list of sorted vertex lists,
    cuts a set.  Isolated vertices count as single-vertex blocks.
    The recursion is unrolled by hand because callers feed graphs with
    thousands of vertices and long paths.
    """
    disc = {}
    low = {}
    blocks = []
    cuts = set()
    counter = 0
    for root in sorted(g.vertices):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        if not g.adj[root]:
            blocks.append([root])
            continue
        root_blocks = 0
        estack = []
        stack = [(root, None, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            w = next(it, None)
            if w is not None:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append((v, w))
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                elif disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if low[v] >= disc[p]:
                blk = set()
                while True:
                    e = estack.pop()
                    blk.update(e)
                    if e == (p, v):
                        break
                blocks.append(sorted(blk))
                if p == root:
                    root_blocks += 1
                else:
                    cuts.add(p)
        if root_blocks > 1:
            cuts.add(root)
        assert not estack
    return blocks, cuts


def is_complete_graph(g: Graph) -> bool:
    return 2 * g.m == g.n * (g.n - 1)


def is_cycle_graph(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and all(len(g.adj[v]) == 2 for v in g.vertices)


def is_gallai_tree(g: Graph) -> bool:
    """Every block complete or an odd cycle (the graph must be connected)."""
    if not is_connected(g):
        raise NotConnected("is_gallai_tree needs a connected graph")
    for blk in blocks_and_cut_vertices(g)[0]:
        b = g.subgraph(blk)
        if is_complete_graph(b):
            continue
        if is_cycle_graph(b) and b.n % 2 == 1:
            continue
        return False
    return True


def is_gdp_tree(g: Graph) -> bool:
    """Every block complete or a cycle of any parity."""
    if not is_connected(g):
        raise NotConnected("is_gdp_tree needs a connected graph")
    for blk in blocks_and_cut_vertices(g)[0]:
        b = g.subgraph(blk)
        if not (is_complete_graph(b) or is_cycle_graph(b)):
            return False
    return True


def degeneracy_order(g: Graph, d: int, groups=None):
    """Order where every vertex has at most d earlier neighbors.

    Built by repeated minimum-degree removal (ties to the smallest id)
    and reversing.  When groups are given they must be unions of
    components; each group's vertices come out consecutive, groups in
    the given sequence.  Raises NotDegenerate(d) if some removal step
    only finds vertices of degree above d.
    """
    if groups is None:
        groups = [sorted(g.vertices)] if g.n else []
    order = []
    for grp in groups:
        sub = g.subgraph(grp)
        deg = {v: sub.degree(v) for v in sub.vertices}
        alive = set(sub.vertices)
        removed = []
        while alive:
            v = min(alive, key=lambda x: (deg[x], x))
            if deg[v] > d:
                raise NotDegenerate(d)
            alive.remove(v)
            removed.append(v)
            for w in sub.adj[v]:
                if w in alive:
                    deg[w] -= 1
        removed.reverse()
        order.extend(removed)
    return order


def connectivity_at_least(g: Graph, s: int) -> bool:
    """Exhaustive s-connectivity test by deleting vertex sets.

    s <= 3 in every caller; the s = 3 case runs one articulation-point
    pass per vertex, which is what makes a 1094-vertex instance finish
    in seconds rather than hours.
    """
    if s <= 0:
        return g.n > 0
    if g.n <= s:
        return False
    if s == 1:
        return is_connected(g)
    if s == 2:
        return is_connected(g) and not blocks_and_cut_vertices(g)[1]
    for v in sorted(g.vertices):
        if not connectivity_at_least(g.without_vertex(v), s - 1):
            return False
    return True
