"""Plane graphs as rotation systems, and the covering-subgraph machinery.

A PlaneGraph is a Graph plus, for each vertex, the cyclic order of its
neighbors.  Faces are traced eagerly: the walk leaving v toward the
successor of u in rot(v) after arriving from u.  A rotation system is
accepted only if Euler's relation holds on each component, which is
exactly planarity of the embedding.

A face usually carries one boundary walk.  Disconnected graphs are
drawn side by side, so the outer walks of all components (and every
isolated vertex) share a single outer face; with that convention
|V| - |E| + |F| = 1 + #components.  Faces are identified across graphs
by their directed edge sets, so operations that modify the graph can
report how old face ids map to new ones.
"""

from __future__ import annotations

from collections import namedtuple

from .core_graph import Graph, connected_components
from .errors import (A2Unattainable, AmbiguousFace, BadRotation,
                     InternalInvariantBreach, MalformedInput)


class PlaneGraph:
    __slots__ = ("g", "rot", "faces", "outer", "_edge_face", "_edge_walk",
                 "_iso_face", "_vertex_faces")

    def __init__(self, g: Graph, rot, outer=0):
        """outer names a traced walk (their order is deterministic).

        With one component the walk index equals the face id.  The walk
        orbits are traced from the smallest unvisited directed edge.
        """
        self.g = g
        self.rot = {v: tuple(rot[v]) for v in g.vertices}
        if set(self.rot) != set(g.vertices):
            raise BadRotation("rotation must cover exactly the vertex set")
        for v in g.vertices:
            if sorted(self.rot[v]) != sorted(g.adj[v]):
                raise BadRotation("rotation at %r is not a permutation of neighbors" % (v,))
        nxt = {}
        for v in g.vertices:
            r = self.rot[v]
            for i, u in enumerate(r):
                nxt[(u, v)] = (v, r[(i + 1) % len(r)])
        walks = []
        seen = set()
        for e in sorted(nxt):
            if e in seen:
                continue
            walk = []
            cur = e
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                cur = nxt[cur]
            if cur != e:
                raise BadRotation("face trace did not close")
            walks.append(tuple(walk))
        self._edge_walk = {de: wi for wi, walk in enumerate(walks) for de in walk}

        comps = connected_components(g)
        comp_of = {}
        for ci, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = ci
        walks_of_comp = {}
        for wi, walk in enumerate(walks):
            walks_of_comp.setdefault(comp_of[walk[0][0]], []).append(wi)
        isolated = [comp[0] for comp in comps if len(comp) == 1 and not g.adj[comp[0]]]
        for ci, wis in walks_of_comp.items():
            comp = comps[ci]
            nc = len(comp)
            mc = sum(len(g.adj[v]) for v in comp) // 2
            wc = len(wis)
            if nc - mc + wc != 2:
                raise BadRotation("rotation system is not planar (Euler check failed)")

        if walks:
            if not (0 <= outer < len(walks)):
                raise ValueError("outer walk index out of range")
            outer_comp = comp_of[walks[outer][0][0]]
            merged = {outer}
            for ci in sorted(walks_of_comp):
                if ci != outer_comp:
                    merged.add(walks_of_comp[ci][0])
            merged_sorted = sorted(merged)
            faces = []
            iso_face = {}
            outer_fid = None
            for wi, walk in enumerate(walks):
                if wi in merged:
                    if outer_fid is None:
                        outer_fid = len(faces)
                        faces.append([walks[outer]] + [walks[w] for w in merged_sorted if w != outer])
                else:
                    faces.append([walk])
            if isolated:
                iso_face[outer_fid] = list(isolated)
            self.faces = [tuple(ws) for ws in faces]
            self.outer = outer_fid
        else:
            if outer != 0:
                raise ValueError("outer walk index out of range")
            self.faces = [()] if g.n else []
            self.outer = 0
            iso_face = {0: isolated} if isolated else {}
        self._iso_face = {fid: tuple(vs) for fid, vs in iso_face.items()}

        ncomp = len(comps)
        if g.n and g.n - g.m + len(self.faces) != 1 + ncomp:
            raise InternalInvariantBreach("Euler count wrong after face grouping")

        ef = {}
        for fid, fwalks in enumerate(self.faces):
            for walk in fwalks:
                for de in walk:
                    ef[de] = fid
        self._edge_face = ef
        vf = {v: [] for v in g.vertices}
        for fid in range(len(self.faces)):
            for v in self.face_vertices(fid):
                vf[v].append(fid)
        self._vertex_faces = vf

    def face_walk(self, fid):
        """The boundary walk of a single-walk face (the usual case)."""
        walks = self.faces[fid]
        if len(walks) != 1:
            raise ValueError("face %d has %d boundary walks" % (fid, len(walks)))
        return walks[0]

    def face_walks(self, fid):
        return self.faces[fid]

    def face_vertices(self, fid):
        """Distinct vertices on the face boundary, in order of first visit."""
        out = []
        seen = set()
        for walk in self.faces[fid]:
            for u, _ in walk:
                if u not in seen:
                    seen.add(u)
                    out.append(u)
        for v in self._iso_face.get(fid, ()):
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out

    def face_key(self, fid):
        des = frozenset(de for walk in self.faces[fid] for de in walk)
        if not des:
            return ("vertices", self._iso_face.get(fid, ()))
        return des

    def face_of_directed_edge(self, u, v):
        return self._edge_face[(u, v)]

    def faces_at(self, v):
        """Face ids incident to v (each once, in id order)."""
        return list(self._vertex_faces[v])

    def face_count(self):
        return len(self.faces)

    def __repr__(self):
        return "PlaneGraph(n=%d, m=%d, f=%d)" % (self.g.n, self.g.m, len(self.faces))


Face = namedtuple("Face", ["id", "walks", "vertices"])


def trace_faces(pg: PlaneGraph):
    """The traced faces as (id, walks, vertices) records."""
    return [Face(fid, pg.face_walks(fid), tuple(pg.face_vertices(fid)))
            for fid in range(pg.face_count())]


def parse_plane(text: str) -> PlaneGraph:
    """Graph records plus `r <v> <edge-index>...` rotation lines.

    Edge indices refer to the lexicographically sorted edge list.  Every
    vertex with neighbors needs an r line.  The outer face defaults to
    face id 0.
    """
    from .core_graph import parse_graph

    graph_lines = []
    rot_lines = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.split()[:1] == ["r"]:
            rot_lines.append((ln, line.split()))
        else:
            graph_lines.append(raw)
    g = parse_graph("\n".join(graph_lines))
    edges = g.edges()
    rot = {}
    for ln, parts in rot_lines:
        if len(parts) < 2:
            raise MalformedInput("r line needs a vertex", ln)
        try:
            v = int(parts[1])
        except ValueError:
            raise MalformedInput("bad vertex %r" % parts[1], ln)
        if v not in g.vertices:
            raise MalformedInput("unknown vertex %d" % v, ln)
        if v in rot:
            raise MalformedInput("second r line for vertex %d" % v, ln)
        nbrs = []
        for p in parts[2:]:
            try:
                ei = int(p)
            except ValueError:
                raise MalformedInput("bad edge index %r" % p, ln)
            if not (0 <= ei < len(edges)):
                raise MalformedInput("edge index out of range", ln)
            a, b = edges[ei]
            if v == a:
                nbrs.append(b)
            elif v == b:
                nbrs.append(a)
            else:
                raise MalformedInput("edge %d not incident to vertex %d" % (ei, v), ln)
        rot[v] = nbrs
    for v in sorted(g.vertices):
        if v not in rot:
            if g.adj[v]:
                raise MalformedInput("missing r line for vertex %d" % v)
            rot[v] = ()
    return PlaneGraph(g, rot)


def write_plane(pg: PlaneGraph) -> str:
    from .core_graph import write_graph

    edges = pg.g.edges()
    eidx = {e: i for i, e in enumerate(edges)}
    lines = [write_graph(pg.g).rstrip("\n")]
    for v in sorted(pg.g.vertices):
        if not pg.rot[v]:
            continue
        idxs = [eidx[(min(v, u), max(v, u))] for u in pg.rot[v]]
        lines.append("r %d %s" % (v, " ".join(str(i) for i in idxs)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# vertex-face incidence and nice subgraphs


class ThetaGraph:
    """Bipartite incidence of vertices and faces of a plane graph."""

    __slots__ = ("pg", "edges")

    def __init__(self, pg: PlaneGraph):
        self.pg = pg
        es = set()
        for fid in range(pg.face_count()):
            for v in pg.face_vertices(fid):
                es.add((v, fid))
        self.edges = frozenset(es)

    def faces_of(self, v):
        return sorted(f for (w, f) in self.edges if w == v)

    def vertices_of(self, fid):
        return self.pg.face_vertices(fid)

    def degree_face(self, fid):
        return len(self.pg.face_vertices(fid))


def theta_graph(pg: PlaneGraph) -> ThetaGraph:
    return ThetaGraph(pg)


def is_nice(pg: PlaneGraph, h, very=None):
    """Check the covering-subgraph conditions; returns (ok, violations).

    h is a collection of (vertex, face id) incidence pairs.  With
    very=v_star the outer face must be fully covered and v_star must
    have degree exactly 1.
    """
    from .core_graph import blocks_and_cut_vertices

    h = set(h)
    viol = []
    face_vs = {fid: pg.face_vertices(fid) for fid in range(pg.face_count())}
    for (v, fid) in sorted(h):
        if fid not in face_vs or v not in face_vs[fid]:
            viol.append("not an incidence: vertex %r face %r" % (v, fid))
    dv = {}
    for (v, fid) in h:
        dv[v] = dv.get(v, 0) + 1
    for v in sorted(dv):
        if dv[v] > 2:
            viol.append("vertex %r covered %d times" % (v, dv[v]))
    blocks = [set(b) for b in blocks_and_cut_vertices(pg.g)[0]]
    for fid in range(pg.face_count()):
        vs = face_vs[fid]
        covered = {v for (v, f) in h if f == fid}
        uncovered = [v for v in vs if v not in covered]
        if len(uncovered) > 2:
            viol.append("face %d misses %d vertices" % (fid, len(uncovered)))
        if uncovered and not any(set(uncovered) <= b for b in blocks):
            viol.append("face %d misses vertices across blocks: %r" % (fid, sorted(uncovered)))
    if very is not None:
        outer_vs = face_vs[pg.outer]
        missing = [v for v in outer_vs if (v, pg.outer) not in h]
        if missing:
            viol.append("outer face not saturated, missing %r" % (sorted(missing),))
        if dv.get(very, 0) != 1:
            viol.append("designated vertex %r has degree %d" % (very, dv.get(very, 0)))
    return (not viol), viol


def _restrict_rot(pg, keep):
    keep = set(keep)
    return {v: tuple(w for w in pg.rot[v] if w in keep) for v in pg.rot if v in keep}


def _connected_plane(g, rot, outer_edge=None):
    """Build a PlaneGraph on a connected graph, outer face named by a
    directed edge (walk index equals face id when connected)."""
    pg = PlaneGraph(g, rot)
    if outer_edge is None:
        return pg
    return PlaneGraph(g, rot, outer=pg.face_of_directed_edge(*outer_edge))


def _lift(h, face_map):
    return {(v, face_map[f]) for (v, f) in h}


def _exact_face_map(child, parent, skip=(), translate=None):
    """Map child face ids to parent ids by directed-edge identity.

    translate rewrites a child directed edge into a parent one (used
    when an edge was introduced by suppression).  Faces listed in skip
    are left out; every other face must match exactly one parent face.
    """
    fmap = {}
    for fid in range(child.face_count()):
        if fid in skip:
            continue
        target = None
        for walk in child.face_walks(fid):
            for de in walk:
                pde = translate(de) if translate else de
                got = parent.face_of_directed_edge(*pde)
                if target is None:
                    target = got
                elif got != target:
                    raise InternalInvariantBreach("child face %d straddles parent faces" % fid)
        if target is None:
            raise InternalInvariantBreach("child face %d has no edges to match" % fid)
        fmap[fid] = target
    return fmap


def very_nice_subgraph(pg: PlaneGraph, v_star):
    """Covering subgraph that saturates the outer face and pins v_star.

    Follows the inductive construction: ear removal when everything is
    on the outer face, suppression of a degree-2 vertex, deletion of an
    interior vertex with a face-by-face patch, and leaf-block gluing
    when the graph is not 2-connected.  The result is checked before it
    is returned; a failed check is a bug, not an input problem.
    """
    from .core_graph import is_connected
    from .errors import NotConnected, PreconditionViolated

    if not is_connected(pg.g):
        raise NotConnected("very_nice_subgraph needs a connected graph")
    if v_star not in pg.face_vertices(pg.outer):
        raise PreconditionViolated("v_star %r not on the outer face" % (v_star,))
    h = _vns(pg, v_star)
    ok, viol = is_nice(pg, h, very=v_star)
    if not ok:
        raise InternalInvariantBreach("construction failed checks: %s" % "; ".join(viol))
    return frozenset(h)


def _vns(pg, v_star):
    from .core_graph import blocks_and_cut_vertices

    g = pg.g
    if g.n <= 2:
        return {(v, fid) for fid in range(pg.face_count()) for v in pg.face_vertices(fid)}
    blocks, cuts = blocks_and_cut_vertices(g)
    if len(blocks) > 1:
        return _vns_leaf_block(pg, v_star, blocks, cuts)
    outer_vs = set(pg.face_vertices(pg.outer))
    if outer_vs == set(g.vertices):
        return _vns_ear(pg, v_star)
    for v in sorted(g.vertices):
        if v != v_star and g.degree(v) == 2:
            x, y = sorted(g.adj[v])
            if not g.has_edge(x, y):
                return _vns_suppress(pg, v_star, v, x, y)
    return _vns_interior(pg, v_star)


def _vns_ear(pg, v_star):
    """All vertices on the outer cycle: peel an inner face that is an
    ear (every vertex between two chosen boundary neighbors has degree
    2), recurse, then cover the ear on its two faces."""
    g = pg.g
    pick = None
    for fid in range(pg.face_count()):
        if fid == pg.outer:
            continue
        cyc = pg.face_vertices(fid)
        k = len(cyc)
        high = [v for v in cyc if g.degree(v) >= 3]
        if len(high) > 2:
            continue
        for i in range(k):
            e1, e2 = cyc[i], cyc[(i + 1) % k]
            internals = [v for v in cyc if v not in (e1, e2)]
            if all(v in (e1, e2) for v in high) and v_star not in internals and internals:
                pick = (fid, e1, e2, internals)
                break
        if pick:
            break
    if pick is None:
        raise InternalInvariantBreach("no removable ear face")
    fid, e1, e2, internals = pick
    dead = set(internals)
    g2 = g.subgraph(g.vertices - dead)
    rot2 = _restrict_rot(pg, g2.vertices)
    surv = next(de for de in pg.face_walk(pg.outer) if de[0] not in dead and de[1] not in dead)
    pg2 = _connected_plane(g2, rot2, surv)
    h2 = _vns(pg2, v_star)
    fmap = _exact_face_map(pg2, pg, skip={pg2.outer})
    fmap[pg2.outer] = pg.outer
    h = _lift(h2, fmap)
    for v in internals:
        h.add((v, fid))
        h.add((v, pg.outer))
    return h


def _vns_suppress(pg, v_star, v, x, y):
    """Replace the path x-v-y by the edge x-y at the same rotation slot."""
    g = pg.g
    f1 = pg.face_of_directed_edge(x, v)
    f2 = pg.face_of_directed_edge(y, v)
    if f1 == f2:
        raise InternalInvariantBreach("degree-2 vertex sees one face twice")
    keep = g.vertices - {v}
    edges = [e for e in g.edges() if v not in e] + [(min(x, y), max(x, y))]
    g2 = Graph(keep, edges)
    rot2 = {}
    for w in keep:
        if w == x:
            rot2[w] = tuple(y if z == v else z for z in pg.rot[w])
        elif w == y:
            rot2[w] = tuple(x if z == v else z for z in pg.rot[w])
        else:
            rot2[w] = pg.rot[w]
    surv = next(de for de in pg.face_walk(pg.outer) if v not in de)
    pg2 = _connected_plane(g2, rot2, surv)

    def translate(de):
        if de == (x, y):
            return (x, v)
        if de == (y, x):
            return (y, v)
        return de

    h2 = _vns(pg2, v_star)
    fmap = _exact_face_map(pg2, pg, translate=translate)
    h = _lift(h2, fmap)
    h.add((v, f1))
    h.add((v, f2))
    return h


def _vns_interior(pg, v_star):
    """Delete an interior vertex u; its faces merge into one face of
    G - u, and the recursion's coverage of that face is redistributed
    over the restored faces around u."""
    from .core_graph import connectivity_at_least

    g = pg.g
    outer_vs = set(pg.face_vertices(pg.outer))
    u = None
    for cand in sorted(g.vertices - outer_vs):
        if connectivity_at_least(g.without_vertex(cand), 2):
            u = cand
            break
    if u is None:
        raise InternalInvariantBreach("no interior vertex with 2-connected remainder")
    nbrs = pg.rot[u]
    k = len(nbrs)
    theta = [pg.face_of_directed_edge(nbrs[t], u) for t in range(k)]
    if len(set(theta)) != k:
        raise InternalInvariantBreach("faces around interior vertex repeat")
    paths = []
    starts = []
    for t in range(k):
        wk = list(pg.face_walk(theta[t]))
        i = wk.index((nbrs[t], u))
        rotated = wk[i + 1:] + wk[: i + 1]
        assert rotated[0] == (u, nbrs[(t + 1) % k])
        pvs = [de[0] for de in rotated[1:]]
        assert pvs[0] == nbrs[(t + 1) % k] and pvs[-1] == nbrs[t]
        paths.append(pvs)
        starts.append(pvs[0])

    g2 = g.without_vertex(u)
    rot2 = _restrict_rot(pg, g2.vertices)
    surv = next(de for de in pg.face_walk(pg.outer))
    pg2 = _connected_plane(g2, rot2, surv)
    link_de = next(de for de in pg.face_walk(theta[0]) if u not in de)
    theta_u = pg2.face_of_directed_edge(*link_de)
    link_walk = pg2.face_walk(theta_u)
    link_vs = pg2.face_vertices(theta_u)
    if len(link_walk) != len(link_vs):
        raise InternalInvariantBreach("merged face around deleted vertex is not a cycle")

    h2 = _vns(pg2, v_star)
    fmap = _exact_face_map(pg2, pg, skip={theta_u})
    h = {(w, fmap[f]) for (w, f) in h2 if f != theta_u}
    base = {}
    for t in range(k):
        for w in paths[t][1:]:
            base[w] = (w, theta[t])
    zs = sorted(w for w in link_vs if (w, theta_u) not in h2)
    where = {}
    for t in range(k):
        for w in paths[t][1:]:
            where.setdefault(w, t)
    add = set()
    drop = set()
    if len(zs) == 0:
        add = {(u, theta[0]), (u, theta[1 % k])}
    elif len(zs) == 1:
        i = where[zs[0]]
        j = next(t for t in range(k) if t != i)
        add = {(u, theta[i]), (u, theta[j])}
        drop = {base[zs[0]]}
    else:
        if len(zs) != 2:
            raise InternalInvariantBreach("more than two uncovered link vertices")
        z1, z2 = zs
        i, j = where[z1], where[z2]
        if i != j:
            add = {(u, theta[i]), (u, theta[j])}
            drop = {base[z1], base[z2]}
        else:
            s = starts[j]
            jn = (j + 1) % k
            assert base[s] == (s, theta[jn])
            add = {(u, theta[j]), (u, theta[jn]), (s, theta[j])}
            drop = {base[z1], base[z2], base[s]}
    h |= set(base.values()) - drop
    h |= add
    return h


def _vns_leaf_block(pg, v_star, blocks, cuts):
    """Split off a leaf block B at its cut vertex r.  B must hold the
    rest of the graph in a single one of its faces (that face plays the
    infinite face of B).  Recurse on both sides and glue at r, dropping
    r's block-side incidence when the other side left r uncovered on
    the shared face, so r never exceeds degree 2."""
    g = pg.g
    p_keys = {pg.face_key(f): f for f in range(pg.face_count())}
    chosen = None
    for blk in sorted(blocks, key=lambda b: b[0]):
        bcuts = [v for v in blk if v in cuts]
        if len(bcuts) != 1:
            continue
        r = bcuts[0]
        gb = g.subgraph(blk)
        rotb = _restrict_rot(pg, blk)
        pgb0 = PlaneGraph(gb, rotb)
        impure = [f for f in range(pgb0.face_count()) if pgb0.face_key(f) not in p_keys]
        if len(impure) != 1:
            continue
        if v_star in set(blk) - {r}:
            continue
        # the outer face must not sit strictly inside this block
        pure_fids = {p_keys[pgb0.face_key(f)] for f in range(pgb0.face_count()) if f != impure[0]}
        if pg.outer in pure_fids:
            continue
        chosen = (blk, r, impure[0])
        break
    if chosen is None:
        raise InternalInvariantBreach("no splittable leaf block")
    blk, r, star_idx = chosen
    gb = g.subgraph(blk)
    rotb = _restrict_rot(pg, blk)
    pgb = PlaneGraph(gb, rotb, outer=star_idx)
    mixed = pg.face_of_directed_edge(*pgb.face_walk(pgb.outer)[0])

    dead = set(blk) - {r}
    g2 = g.subgraph(g.vertices - dead)
    rot2 = _restrict_rot(pg, g2.vertices)
    if g2.m == 0:
        # everything outside the block hangs on r alone
        pg2 = PlaneGraph(g2, rot2)
        theta_b = 0
    else:
        pg2a = PlaneGraph(g2, rot2)
        mixed_surv = [de for walk in pg.face_walks(mixed) for de in walk
                      if de[0] not in dead and de[1] not in dead]
        assert mixed_surv, "rest of the graph has edges but none on the shared face"
        theta_b0 = pg2a.face_of_directed_edge(*mixed_surv[0])
        outer_surv = [de for walk in pg.face_walks(pg.outer) for de in walk
                      if de[0] not in dead and de[1] not in dead]
        outer2 = pg2a.face_of_directed_edge(*outer_surv[0]) if outer_surv else theta_b0
        pg2 = PlaneGraph(g2, rot2, outer=outer2)
        theta_b = theta_b0

    hb = _vns(pgb, r)
    h2 = _vns(pg2, v_star)
    fmap_b = _exact_face_map(pgb, pg, skip={pgb.outer})
    fmap_b[pgb.outer] = mixed
    fmap_2 = _exact_face_map(pg2, pg, skip={theta_b})
    fmap_2[theta_b] = mixed
    if (r, theta_b) not in h2:
        assert (r, pgb.outer) in hb
        hb = set(hb) - {(r, pgb.outer)}
    return _lift(h2, fmap_2) | _lift(hb, fmap_b)


# ---------------------------------------------------------------------------
# visibility augmentation and the face structure of a drawn subgraph


class FaceClasses:
    """Faces of the subgraph drawn on a vertex subset.

    Erasing the other vertices (and every edge leaving the subset) fuses
    the ambient faces on the two sides of each erased edge.  The fused
    classes are exactly the faces of the drawn subgraph in the inherited
    drawing, which is the honest face structure even when the subgraph
    is disconnected or nested.  A class is named by its smallest member
    face id.
    """

    __slots__ = ("pg", "v2", "_cls", "outer_class")

    def __init__(self, pg: PlaneGraph, v2):
        self.pg = pg
        self.v2 = frozenset(v2)
        parent = list(range(pg.face_count()))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, v), fid in pg._edge_face.items():
            if u in self.v2 and v in self.v2:
                continue
            a, b = find(fid), find(pg._edge_face[(v, u)])
            if a != b:
                parent[max(a, b)] = min(a, b)
        self._cls = tuple(find(f) for f in range(pg.face_count()))
        self.outer_class = self._cls[pg.outer] if self._cls else 0

    def class_of(self, fid):
        return self._cls[fid]

    def classes(self):
        return sorted(set(self._cls))

    def class_depths(self):
        """BFS depth of every class from the outer one, where one step
        crosses an edge of the drawn subgraph."""
        adj = {c: set() for c in self.classes()}
        for (u, v), fid in self.pg._edge_face.items():
            if u in self.v2 and v in self.v2:
                a = self._cls[fid]
                b = self._cls[self.pg._edge_face[(v, u)]]
                if a != b:
                    adj[a].add(b)
                    adj[b].add(a)
        depth = {self.outer_class: 0}
        frontier = [self.outer_class]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for c in frontier:
                for c2 in sorted(adj[c]):
                    if c2 not in depth:
                        depth[c2] = d
                        nxt.append(c2)
            frontier = nxt
        if set(depth) != set(adj):
            raise InternalInvariantBreach("face classes are not connected")
        return depth


def face_of_component(pg: PlaneGraph, v2, q):
    """The face of the subgraph drawn on v2 that contains the component
    q of the rest, named by its class.  All ambient faces met by q must
    fuse into one class; anything else means q straddles faces."""
    fc = FaceClasses(pg, v2)
    cls = {fc.class_of(f) for v in q for f in pg.faces_at(v)}
    if len(cls) != 1:
        raise AmbiguousFace("vertices %r see face classes %r" % (sorted(q), sorted(cls)))
    return cls.pop()


def component_planes(pg: PlaneGraph, v2):
    """Standalone plane pieces of the subgraph drawn on v2.

    For each connected piece, ordered by smallest vertex, yields
    (vertices, piece PlaneGraph, local face id -> class, v_star).  The
    piece's outer face is its incident class nearest the ambient outer
    region; v_star is the smallest vertex on it.
    """
    fc = FaceClasses(pg, v2)
    depth = fc.class_depths()
    sub = pg.g.subgraph(set(v2))
    out = []
    for comp in sorted(connected_components(sub), key=min):
        gq = pg.g.subgraph(comp)
        rotq = _restrict_rot(pg, comp)
        pgq0 = PlaneGraph(gq, rotq)
        cmap = {}
        for fid in range(pgq0.face_count()):
            cs = {fc.class_of(pg.face_of_directed_edge(*de))
                  for walk in pgq0.face_walks(fid) for de in walk}
            if not cs:
                cs = {fc.class_of(f) for f in pg.faces_at(min(comp))}
            if len(cs) != 1:
                raise InternalInvariantBreach("piece face touches several classes")
            cmap[fid] = cs.pop()
        order = sorted(cmap, key=lambda f: (depth[cmap[f]], f))
        if len(order) > 1 and depth[cmap[order[0]]] == depth[cmap[order[1]]]:
            raise InternalInvariantBreach("outer face of a piece is not unique")
        louter = order[0]
        pgq = pgq0 if louter == pgq0.outer else PlaneGraph(gq, rotq, outer=louter)
        out.append((tuple(sorted(comp)), pgq, cmap, min(pgq.face_vertices(pgq.outer))))
    return out


def _insert_chord(pg, fid, a, b):
    """New PlaneGraph with the chord a-b drawn inside face fid."""
    g = pg.g
    rot2 = {v: list(pg.rot[v]) for v in g.vertices}

    def arriving(v):
        for walk in pg.face_walks(fid):
            for de in walk:
                if de[1] == v:
                    return de[0]
        return None

    for v, w in ((a, b), (b, a)):
        x = arriving(v)
        if x is None:
            rot2[v].append(w)
        else:
            rot2[v].insert(rot2[v].index(x) + 1, w)
    g2 = Graph(g.vertices, list(g.edges()) + [(min(a, b), max(a, b))])
    old_outer = sorted(de for walk in pg.face_walks(pg.outer) for de in walk)
    pg2 = PlaneGraph(g2, rot2)
    if old_outer:
        pg2 = PlaneGraph(g2, rot2, outer=pg2._edge_walk[old_outer[0]])
    return pg2


def augment_visibility(pg: PlaneGraph, v2) -> PlaneGraph:
    """Add chords until v2-vertices that share a face are all adjacent.

    Faces are scanned by id and the lexicographically smallest
    nonadjacent v2-pair on a boundary gets the chord; the scan restarts
    after every insertion, so the output embedding is deterministic.
    Afterwards the faces of the subgraph drawn on v2 are checked to
    hold at most one component of the rest each (A2Unattainable names
    the first clash; wanting 3-connectivity is the usual cause).
    """
    v2 = frozenset(v2)
    cur = pg
    for _ in range(3 * pg.g.n + 8):
        pick = None
        for fid in range(cur.face_count()):
            onface = sorted(v for v in cur.face_vertices(fid) if v in v2)
            for i in range(len(onface)):
                for j in range(i + 1, len(onface)):
                    if not cur.g.has_edge(onface[i], onface[j]):
                        pick = (fid, onface[i], onface[j])
                        break
                if pick:
                    break
            if pick:
                break
        if pick is None:
            break
        cur = _insert_chord(cur, *pick)
    else:
        raise InternalInvariantBreach("chord insertion did not reach a fixpoint")

    fc = FaceClasses(cur, v2)
    holder = {}
    for comp in sorted(connected_components(cur.g.subgraph(cur.g.vertices - v2)), key=min):
        cls = {fc.class_of(f) for v in comp for f in cur.faces_at(v)}
        if len(cls) != 1:
            raise InternalInvariantBreach("component sees several face classes")
        c = cls.pop()
        if c in holder:
            raise A2Unattainable(
                "components %r and %r lie in the same face of the subgraph on %r"
                % (holder[c], sorted(comp), sorted(v2)))
        holder[c] = sorted(comp)
    return cur
