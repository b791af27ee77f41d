"""Covers for DP-coloring.

A cover assigns each vertex v a list of colors, represented as pairs
(v, 0), ..., (v, size-1), and each edge a partial matching between the
two endpoint lists.  A coloring picks one color per vertex avoiding
matched pairs across edges.  List coloring is the special case where
colors sharing a token are matched (induced_cover).
"""

from __future__ import annotations

from .core_graph import Graph, bfs_parents, blocks_and_cut_vertices, is_complete_graph, \
    is_connected, is_cycle_graph, is_gdp_tree
from .errors import (GDPTreeTight, InternalInvariantBreach, MalformedInput,
                     NotConnected, PreconditionViolated)


class Cover:
    """List sizes plus matchings.  partner(u, i, w) answers in O(1)."""

    __slots__ = ("g", "sizes", "_m")

    def __init__(self, g: Graph, sizes, matchings):
        self.g = g
        self.sizes = dict(sizes)
        if set(self.sizes) != set(g.vertices):
            raise ValueError("sizes must cover exactly the vertex set")
        for v, s in self.sizes.items():
            if s < 0:
                raise ValueError("negative list size at %r" % (v,))
        m = {}
        for (u, w), pairs in matchings.items():
            if not g.has_edge(u, w):
                raise ValueError("matching on non-edge (%r, %r)" % (u, w))
            fwd = m.setdefault((u, w), {})
            bwd = m.setdefault((w, u), {})
            for i, j in pairs:
                if not (0 <= i < self.sizes[u] and 0 <= j < self.sizes[w]):
                    raise ValueError("matched color out of range on (%r, %r)" % (u, w))
                if i in fwd or j in bwd:
                    raise ValueError("matching on (%r, %r) is not a matching" % (u, w))
                fwd[i] = j
                bwd[j] = i
        self._m = m

    def colors(self, v):
        return [(v, i) for i in range(self.sizes[v])]

    def partner(self, u, i, w):
        """Index at w matched to (u, i), or None."""
        d = self._m.get((u, w))
        if d is None:
            return None
        return d.get(i)

    def edge_pairs(self, u, w):
        """The matching on edge (u, w) as a sorted list of (i, j)."""
        d = self._m.get((u, w), {})
        return sorted(d.items())

    def neighborhood(self, v, i):
        """All matched colors of (v, i) across incident edges."""
        out = set()
        for w in self.g.adj[v]:
            j = self.partner(v, i, w)
            if j is not None:
                out.add((w, j))
        return out

    def is_tight_at(self, v):
        return self.sizes[v] == self.g.degree(v)

    def subcover(self, keep) -> "Cover":
        """Induced cover on a vertex subset (matchings restricted)."""
        keep = frozenset(keep)
        sub = self.g.subgraph(keep)
        matchings = {}
        for u, w in sub.edges():
            d = self._m.get((u, w), {})
            if d:
                matchings[(u, w)] = sorted(d.items())
        return Cover(sub, {v: self.sizes[v] for v in keep}, matchings)


def is_coloring_valid(cover: Cover, coloring) -> bool:
    """Full proper coloring: every vertex, own color, no matched edge pair."""
    if set(coloring) != set(cover.g.vertices):
        return False
    for v, (cv, i) in coloring.items():
        if cv != v or not (0 <= i < cover.sizes[v]):
            return False
    for u, w in cover.g.edges():
        if cover.partner(u, coloring[u][1], w) == coloring[w][1]:
            return False
    return True


def degree_truncated_sizes(g: Graph, k: int):
    """f(v) = min(k, d(v))."""
    return {v: min(k, g.degree(v)) for v in g.vertices}


def is_partial_coloring_valid(cover: Cover, phi) -> bool:
    """phi colors a subset of vertices; no matched pair across an edge."""
    for v, col in phi.items():
        if v not in cover.g.vertices:
            return False
        cv, i = col
        if cv != v or not (0 <= i < cover.sizes[v]):
            return False
    for u in phi:
        for w in cover.g.adj[u]:
            if w in phi and u < w:
                if cover.partner(u, phi[u][1], w) == phi[w][1]:
                    return False
    return True


def residual_cover(cover: Cover, phi):
    """Cover on the uncolored rest after the partial coloring phi.

    A color matched to a used color disappears; matchings restrict to
    the survivors.  Colors are renumbered, so this returns (residual,
    kept) where kept[v] lists the surviving original indices in order:
    residual color (v, i) stands for original (v, kept[v][i]).
    """
    if not is_partial_coloring_valid(cover, phi):
        raise ValueError("partial coloring is not valid on the cover")
    g = cover.g
    rest = g.vertices - set(phi)
    blocked = {v: set() for v in rest}
    for u, (_, i) in phi.items():
        for w in g.adj[u]:
            if w in blocked:
                j = cover.partner(u, i, w)
                if j is not None:
                    blocked[w].add(j)
    kept = {v: [i for i in range(cover.sizes[v]) if i not in blocked[v]] for v in rest}
    pos = {v: {old: new for new, old in enumerate(kept[v])} for v in rest}
    sub = g.subgraph(rest)
    matchings = {}
    for u, w in sub.edges():
        pairs = [(pos[u][i], pos[w][j]) for i, j in cover.edge_pairs(u, w)
                 if i in pos[u] and j in pos[w]]
        if pairs:
            matchings[(u, w)] = pairs
    return Cover(sub, {v: len(kept[v]) for v in rest}, matchings), kept


def validate_cover(g: Graph, sizes, matchings):
    """Report cover invariant breaches; an empty list means ok.

    Works on the raw fields since a constructed Cover cannot be invalid.
    Disjointness across vertices is structural with (v, i) identifiers,
    so the checks are coverage, ranges, and the matching property.
    """
    viol = []
    for v in sorted(set(sizes) - set(g.vertices)):
        viol.append("size for unknown vertex %r" % (v,))
    for v in sorted(set(g.vertices) - set(sizes)):
        viol.append("no size for vertex %r" % (v,))
    for v in sorted(set(sizes) & set(g.vertices)):
        if sizes[v] < 0:
            viol.append("negative size at %r" % (v,))
    for (u, w), pairs in sorted(matchings.items()):
        if not g.has_edge(u, w):
            viol.append("matching on non-edge (%r, %r)" % (u, w))
            continue
        fwd, bwd = set(), set()
        for i, j in pairs:
            if not (0 <= i < sizes.get(u, 0) and 0 <= j < sizes.get(w, 0)):
                viol.append("color out of range on (%r, %r): %r %r" % (u, w, i, j))
            if i in fwd or j in bwd:
                viol.append("repeated color in matching on (%r, %r)" % (u, w))
            fwd.add(i)
            bwd.add(j)
    return viol


def token_sort_key(tok):
    # ints before strings, each kind in natural order
    return (isinstance(tok, str), tok)


def induced_cover(g: Graph, lists):
    """Cover induced by a list assignment.

    lists maps each vertex to an iterable of distinct hashable tokens.
    Colors of adjacent vertices are matched iff their tokens are equal.
    Returns (cover, tokens) where tokens[v] is the sorted token list, so
    color (v, i) stands for tokens[v][i].
    """
    tokens = {}
    for v in sorted(g.vertices):
        ts = list(lists[v])
        if len(set(ts)) != len(ts):
            raise ValueError("duplicate token in list of %r" % (v,))
        tokens[v] = sorted(ts, key=token_sort_key)
    sizes = {v: len(tokens[v]) for v in g.vertices}
    matchings = {}
    for u, w in g.edges():
        pos_w = {t: j for j, t in enumerate(tokens[w])}
        pairs = [(i, pos_w[t]) for i, t in enumerate(tokens[u]) if t in pos_w]
        if pairs:
            matchings[(u, w)] = pairs
    return Cover(g, sizes, matchings), tokens


def parse_lists(text: str):
    """`A <v> <tok>...` lines; tokens become ints when they parse as ints."""
    lists = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "A":
            raise MalformedInput("unknown record %r" % parts[0], ln)
        if len(parts) < 2:
            raise MalformedInput("A line needs a vertex", ln)
        try:
            v = int(parts[1])
        except ValueError:
            raise MalformedInput("bad vertex %r" % parts[1], ln)
        if v in lists:
            raise MalformedInput("second A line for vertex %d" % v, ln)
        toks = []
        for t in parts[2:]:
            try:
                toks.append(int(t))
            except ValueError:
                toks.append(t)
        if len(set(toks)) != len(toks):
            raise MalformedInput("duplicate token for vertex %d" % v, ln)
        lists[v] = toks
    return lists


def write_lists(lists) -> str:
    lines = []
    for v in sorted(lists):
        lines.append("A %d %s" % (v, " ".join(str(t) for t in lists[v])))
    return "\n".join(lines) + "\n"


def parse_cover(text: str, g: Graph) -> Cover:
    """`L <v> <n>` size lines and `M <u> <i> <w> <j>` matched pairs."""
    sizes = {}
    matchings = {}
    back = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "L":
            if len(parts) != 3:
                raise MalformedInput("L line needs vertex and size", ln)
            try:
                v, nsz = int(parts[1]), int(parts[2])
            except ValueError:
                raise MalformedInput("bad L line", ln)
            if v not in g.vertices:
                raise MalformedInput("unknown vertex %d" % v, ln)
            if v in sizes:
                raise MalformedInput("second L line for vertex %d" % v, ln)
            if nsz < 0:
                raise MalformedInput("negative size", ln)
            sizes[v] = nsz
        elif parts[0] == "M":
            if len(parts) != 5:
                raise MalformedInput("M line needs u i w j", ln)
            try:
                u, i, w, j = (int(p) for p in parts[1:])
            except ValueError:
                raise MalformedInput("bad M line", ln)
            if not g.has_edge(u, w):
                raise MalformedInput("M line on non-edge %d %d" % (u, w), ln)
            if u > w:
                u, w, i, j = w, u, j, i
            fwd = matchings.setdefault((u, w), {})
            bwd = back.setdefault((u, w), set())
            if i in fwd or j in bwd:
                raise MalformedInput("repeated color in matching on %d %d" % (u, w), ln)
            fwd[i] = j
            bwd.add(j)
        else:
            raise MalformedInput("unknown record %r" % parts[0], ln)
    missing = sorted(set(g.vertices) - set(sizes))
    if missing:
        raise MalformedInput("no L line for vertex %d" % missing[0])
    try:
        return Cover(g, sizes, {e: sorted(d.items()) for e, d in matchings.items()})
    except ValueError as exc:
        raise MalformedInput(str(exc))


def write_cover(cover: Cover) -> str:
    lines = ["L %d %d" % (v, cover.sizes[v]) for v in sorted(cover.g.vertices)]
    for u, w in cover.g.edges():
        for i, j in cover.edge_pairs(u, w):
            lines.append("M %d %d %d %d" % (u, i, w, j))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# constructive degree-DP-coloring


def _greedy_color(cover, avail, coloring, order):
    """Color `order` greedily, smallest index first, updating avail."""
    for v in order:
        if not avail[v]:
            raise InternalInvariantBreach("greedy ran dry at %r" % (v,))
        i = min(avail[v])
        coloring[v] = (v, i)
        for w in cover.g.adj[v]:
            if w not in coloring:
                j = cover.partner(v, i, w)
                if j is not None:
                    avail[w].discard(j)


def _reverse_bfs_from(g, sources):
    """Vertices outside sources, farthest from sources first.

    Ties broken by the canonical BFS order, so for every emitted vertex
    some neighbor strictly closer to sources comes later.
    """
    seen = set(sources)
    queue = sorted(sources)
    head = 0
    order = []
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in sorted(g.adj[v]):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    order.reverse()
    return order


def _color_awkward_block(cover, avail, coloring, block):
    """Color a 2-connected block that is neither complete nor a cycle.

    Looks for an induced path v1-u-v2 whose ends can be colored so that
    together they forbid at most one color at u and whose removal keeps
    the block connected; then greedy toward u finishes.  Falls back to
    plain backtracking (the cover theory says a coloring exists).
    """
    sub = cover.g.subgraph(block)
    for u in sorted(block):
        nbrs = sorted(sub.adj[u])
        for a in range(len(nbrs)):
            for b in range(a + 1, len(nbrs)):
                v1, v2 = nbrs[a], nbrs[b]
                if sub.has_edge(v1, v2):
                    continue
                if not is_connected(sub.subgraph(set(block) - {v1, v2})):
                    continue
                pick = _pair_sparing_u(cover, avail, u, v1, v2)
                if pick is None:
                    continue
                c1, c2 = pick
                for v, i in ((v1, c1), (v2, c2)):
                    coloring[v] = (v, i)
                    for w in cover.g.adj[v]:
                        if w not in coloring:
                            j = cover.partner(v, i, w)
                            if j is not None:
                                avail[w].discard(j)
                rest = _reverse_bfs_from(sub.subgraph(set(block) - {v1, v2}), [u])
                _greedy_color(cover, avail, coloring, rest + [u])
                return
    if not _backtrack_block(cover, avail, coloring, sorted(block)):
        raise InternalInvariantBreach("block believed colorable was not")


def _pair_sparing_u(cover, avail, u, v1, v2):
    """Colors for v1 and v2 removing at most one color from avail[u]."""
    best = None
    for c1 in sorted(avail[v1]):
        p1 = cover.partner(v1, c1, u)
        if p1 is None or p1 not in avail[u]:
            return c1, min(avail[v2])
        for c2 in sorted(avail[v2]):
            p2 = cover.partner(v2, c2, u)
            if p2 is None or p2 not in avail[u] or p2 == p1:
                return c1, c2
    return best


def _backtrack_block(cover, avail, coloring, order):
    if not order:
        return True
    v = order[0]
    for i in sorted(avail[v]):
        coloring[v] = (v, i)
        removed = []
        for w in cover.g.adj[v]:
            if w not in coloring:
                j = cover.partner(v, i, w)
                if j is not None and j in avail[w]:
                    avail[w].discard(j)
                    removed.append((w, j))
        if _backtrack_block(cover, avail, coloring, order[1:]):
            return True
        del coloring[v]
        for w, j in removed:
            avail[w].add(j)
    return False


def degree_dp_color(g: Graph, cover: Cover):
    """Color a connected graph whose cover has sizes >= degrees.

    Greedy away from a surplus vertex when one exists.  With all sizes
    tight this is possible iff the graph is not a GDP-tree (every block
    complete or a cycle); on a GDP-tree we refuse with GDPTreeTight since
    no strategy can promise a coloring there.
    """
    if not is_connected(g):
        raise NotConnected("degree_dp_color needs a connected graph")
    for v in g.vertices:
        if cover.sizes[v] < g.degree(v):
            raise PreconditionViolated("size below degree at %r" % (v,))
    avail = {v: set(range(cover.sizes[v])) for v in g.vertices}
    coloring = {}
    surplus = sorted(v for v in g.vertices if cover.sizes[v] > g.degree(v))
    if surplus:
        s = surplus[0]
        order = _reverse_bfs_from(g, [s]) + [s]
        _greedy_color(cover, avail, coloring, order)
        assert is_coloring_valid(cover, coloring)
        return coloring
    if is_gdp_tree(g):
        raise GDPTreeTight("tight cover on a GDP-tree")
    candidates = []
    for blk in blocks_and_cut_vertices(g)[0]:
        b = g.subgraph(blk)
        if not (is_complete_graph(b) or is_cycle_graph(b)):
            candidates.append(sorted(blk))
    assert candidates
    block = min(candidates)
    order = _reverse_bfs_from(g, block)
    _greedy_color(cover, avail, coloring, order)
    _color_awkward_block(cover, avail, coloring, block)
    assert is_coloring_valid(cover, coloring)
    return coloring
