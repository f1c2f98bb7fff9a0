"""Treewidth-2 recognition and embedding into two-terminal series-parallel hosts.

An ``SPNode`` is one node of a binary composition tree: leaves are single
edges with a fixed source and sink; internal nodes are series or parallel
compositions of their children.  The subgraph, source and sink of every node
are precomputed, so validation and decomposition building are table lookups.

``embed_into_sp`` turns any treewidth-<=2 graph into a supergraph that is
two-terminal series-parallel, together with its composition tree.  The
original graph is untouched: missing structure is added as fresh *fill* edges
and fresh connector vertices, never by identifying existing vertices.
"""

from dataclasses import dataclass

from .errors import InvalidSPTree, NotTreewidth2
from .graphs import Graph

SERIES = "series"
PARALLEL = "parallel"
EDGE = "edge"


class SPNode:
    """One node of a series-parallel composition tree (immutable)."""

    __slots__ = ("kind", "left", "right", "source", "sink", "vertices", "edges")

    def __init__(self, kind, left, right, source, sink, vertices, edges):
        self.kind = kind
        self.left = left
        self.right = right
        self.source = source
        self.sink = sink
        self.vertices = vertices
        self.edges = edges

    def __repr__(self):
        return "SPNode(%s, %s->%s, %d edges)" % (self.kind, self.source, self.sink, len(self.edges))

    def leaves(self):
        return sum(1 for node in walk_postorder(self) if node.kind == EDGE)


def edge_node(u, v):
    if u == v:
        raise InvalidSPTree("loop edge %r" % (u,))
    return SPNode(EDGE, None, None, u, v, frozenset((u, v)), frozenset((frozenset((u, v)),)))


def series(a, b):
    "Series composition: glue a's sink onto b's source."
    if a.sink != b.source:
        raise InvalidSPTree("series children do not share a terminal")
    if a.vertices & b.vertices != {a.sink}:
        raise InvalidSPTree("series children overlap beyond the shared terminal")
    if a.edges & b.edges:
        raise InvalidSPTree("series children share edges")
    return SPNode(SERIES, a, b, a.source, b.sink,
                  a.vertices | b.vertices, a.edges | b.edges)


def parallel(a, b):
    "Parallel composition: identify both terminals."
    if a.source != b.source or a.sink != b.sink:
        raise InvalidSPTree("parallel children disagree on terminals")
    if a.vertices & b.vertices != {a.source, a.sink}:
        raise InvalidSPTree("parallel children overlap beyond the terminals")
    if a.edges & b.edges:
        raise InvalidSPTree("parallel children share edges")
    return SPNode(PARALLEL, a, b, a.source, a.sink,
                  a.vertices | b.vertices, a.edges | b.edges)


def walk_postorder(root):
    "Iterative post-order over an SP tree (children before parents)."
    out = []
    stack = [root]
    while stack:
        node = stack.pop()
        out.append(node)
        if node.kind != EDGE:
            stack.append(node.left)
            stack.append(node.right)
    return reversed(out)


def mirror(root):
    "The same graph with source and sink exchanged at every node."
    done = {}
    for node in walk_postorder(root):
        if node.kind == EDGE:
            done[id(node)] = edge_node(node.sink, node.source)
        elif node.kind == SERIES:
            done[id(node)] = series(done[id(node.right)], done[id(node.left)])
        else:
            done[id(node)] = parallel(done[id(node.left)], done[id(node.right)])
    return done[id(root)]


def sp_tree_violations(root):
    "Re-derive every node's subgraph bottom-up and check the composition rules."
    problems = []
    derived = {}
    for pos, node in enumerate(walk_postorder(root)):
        if node.kind == EDGE:
            if node.source == node.sink:
                problems.append("node %d: loop edge" % pos)
                derived[id(node)] = (frozenset((node.source,)), frozenset())
                continue
            derived[id(node)] = (frozenset((node.source, node.sink)),
                                 frozenset((frozenset((node.source, node.sink)),)))
        elif node.kind in (SERIES, PARALLEL):
            lv, le = derived[id(node.left)]
            rv, re = derived[id(node.right)]
            if le & re:
                problems.append("node %d: children share edges" % pos)
            if node.kind == SERIES:
                if node.left.sink != node.right.source:
                    problems.append("node %d: series children do not share a terminal" % pos)
                elif lv & rv != {node.left.sink}:
                    problems.append("node %d: series children overlap beyond the shared vertex" % pos)
                if (node.source, node.sink) != (node.left.source, node.right.sink):
                    problems.append("node %d: series terminals mismatch" % pos)
            else:
                if (node.left.source, node.left.sink) != (node.right.source, node.right.sink):
                    problems.append("node %d: parallel children disagree on terminals" % pos)
                elif lv & rv != {node.source, node.sink}:
                    problems.append("node %d: parallel children overlap beyond the terminals" % pos)
                if (node.source, node.sink) != (node.left.source, node.left.sink):
                    problems.append("node %d: parallel terminals mismatch" % pos)
            derived[id(node)] = (lv | rv, le | re)
        else:
            problems.append("node %d: unknown kind %r" % (pos, node.kind))
            derived[id(node)] = (frozenset(), frozenset())
        dv, de = derived[id(node)]
        if (dv, de) != (node.vertices, node.edges):
            problems.append("node %d: cached subgraph disagrees with children" % pos)
        if node.source not in dv or node.sink not in dv:
            problems.append("node %d: terminals outside the subgraph" % pos)
    return problems


def validate_sp_tree(root):
    return not sp_tree_violations(root)


@dataclass(frozen=True)
class Embedding:
    """A graph embedded in a two-terminal series-parallel host.

    ``host`` is the root subgraph of ``sp``; the input graph is a subgraph of
    it.  ``added_edges`` and ``added_vertices`` are the fresh fill material.
    """

    sp: SPNode
    host: Graph
    added_edges: frozenset
    added_vertices: frozenset
    source: str
    sink: str


def _reduces_to_empty(adj):
    "Destructive partial-2-tree reduction over an adjacency-set dict."
    queue = [v for v, nb in adj.items() if len(nb) <= 2]
    while queue:
        v = queue.pop()
        if v not in adj or len(adj[v]) > 2:
            continue
        nb = list(adj.pop(v))
        for u in nb:
            adj[u].discard(v)
        if len(nb) == 2:
            u, w = nb
            adj[u].add(w)
            adj[w].add(u)
        for u in nb:
            if len(adj[u]) <= 2:
                queue.append(u)
    return not adj


def has_treewidth_at_most_2(graph):
    """Standard partial-2-tree reduction: repeatedly delete vertices of degree
    <= 1 and suppress degree-2 vertices (joining their neighbors); the graph
    has treewidth <= 2 iff this empties it."""
    return _reduces_to_empty({v: set(graph.neighbors(v)) for v in graph.vertices})


class _Names:
    "Deterministic fresh-name allocator avoiding existing identifiers."

    def __init__(self, taken):
        self.taken = set(taken)

    def make(self, base):
        name = base
        while name in self.taken:
            name += "'"
        self.taken.add(name)
        return name


def _oriented(tree, source, sink):
    if tree.source == source and tree.sink == sink:
        return tree
    if tree.source == sink and tree.sink == source:
        return mirror(tree)
    raise InvalidSPTree("cannot orient %r as (%r, %r)" % (tree, source, sink))


def _tw2_with_extra_edge(comp, comp_edges, s, t):
    "Treewidth-<=2 test of the component plus the edge st."
    adj = {v: set() for v in comp}
    for u, v in comp_edges:
        adj[u].add(v)
        adj[v].add(u)
    adj[s].add(t)
    adj[t].add(s)
    return _reduces_to_empty(adj)


def _terminal_candidates(graph, comp, comp_edges):
    """Terminal pairs to try, best first.

    A pair (s, t) admits a series-parallel host containing the component iff
    the component plus the edge st still has treewidth <= 2 (any host would
    tolerate a parallel st edge, and with it contains component + st as a
    subgraph).  Low-degree pairs are preferred so that paths keep their ends
    as terminals and fills stay rare; an existing edge always qualifies, so
    the candidate list is never exhausted for treewidth-<=2 inputs.
    """
    idx = graph.index
    degree = {v: 0 for v in comp}
    for u, v in comp_edges:
        degree[u] += 1
        degree[v] += 1
    lows = [v for v in comp if degree[v] <= 2]
    pairs = sorted(((lows[i], lows[j]) for i in range(len(lows))
                    for j in range(i + 1, len(lows))),
                   key=lambda p: (degree[p[0]] + degree[p[1]], idx(p[0]), idx(p[1])))
    seen = set(map(frozenset, pairs))
    for u, v in comp_edges:
        if frozenset((u, v)) not in seen:
            pairs.append((u, v))
    for s, t in pairs:
        if _tw2_with_extra_edge(comp, comp_edges, s, t):
            yield s, t


def _reduce_component(graph, comp, comp_edges, s, t):
    """Build the composition tree of one connected component on terminals (s, t).

    The component is reduced by repeatedly suppressing a non-terminal vertex
    of degree 2 (a series composition of its two incident bundles, merged as
    a parallel composition with any bundle already joining its neighbors).
    A non-terminal vertex of degree 1 first receives a fill edge to another
    neighbor of its only neighbor, which makes it suppressible.  Returns the
    tree and the fill edges used, or None when the reduction cannot finish on
    these terminals.
    """
    idx = graph.index
    adj = {v: set() for v in comp}
    bundles = {}
    for u, v in comp_edges:
        adj[u].add(v)
        adj[v].add(u)
        bundles[frozenset((u, v))] = edge_node(u, v)
    fills = []

    def canonical_pair(u, v):
        return (u, v) if idx(u) < idx(v) else (v, u)

    def put_bundle(u, v, tree):
        key = frozenset((u, v))
        cu, cv = canonical_pair(u, v)
        tree = _oriented(tree, cu, cv)
        if key in bundles:
            bundles[key] = parallel(_oriented(bundles[key], cu, cv), tree)
        else:
            bundles[key] = tree
            adj[u].add(v)
            adj[v].add(u)

    while len(adj) > 2:
        pick = None
        for v in comp:
            if v in adj and v != s and v != t and len(adj[v]) <= 2:
                pick = v
                break
        if pick is None:
            return None
        if len(adj[pick]) == 1:
            (u,) = adj[pick]
            partners = sorted((w for w in adj[u] if w != pick), key=idx)
            assert partners, "dangling vertex with no fill partner"
            w = partners[0]
            fills.append(canonical_pair(pick, w))
            put_bundle(pick, w, edge_node(*canonical_pair(pick, w)))
        u, w = sorted(adj[pick], key=idx)
        left = _oriented(bundles.pop(frozenset((u, pick))), u, pick)
        right = _oriented(bundles.pop(frozenset((pick, w))), pick, w)
        adj[u].discard(pick)
        adj[w].discard(pick)
        del adj[pick]
        put_bundle(u, w, series(left, right))

    assert set(adj) == {s, t} and len(bundles) == 1
    return _oriented(bundles[frozenset((s, t))], s, t), fills


def embed_into_sp(graph):
    """Embed a treewidth-<=2 graph into a two-terminal series-parallel host.

    Components are reduced independently with their own terminals, then
    chained with fresh bridge edges (component i's sink to component i+1's
    source).  Isolated vertices are first tied to a fresh connector vertex by
    one fill edge.  An edgeless input with no vertices becomes a single fresh
    edge so that the host is never empty.
    """
    if not has_treewidth_at_most_2(graph):
        raise NotTreewidth2("input graph has treewidth greater than 2")
    names = _Names(graph.vertices)
    added_edges = []
    added_vertices = []
    trees = []
    for k, comp in enumerate(graph.connected_components()):
        if len(comp) == 1:
            v = comp[0]
            c = names.make("+c%d" % k)
            added_vertices.append(c)
            added_edges.append((v, c))
            trees.append(edge_node(v, c))
            continue
        comp_set = set(comp)
        comp_edges = [e for e in graph.sorted_edges() if e[0] in comp_set]
        result = None
        for s, t in _terminal_candidates(graph, comp, comp_edges):
            result = _reduce_component(graph, comp, comp_edges, s, t)
            if result is not None:
                break
        if result is None:
            raise NotTreewidth2("component cannot be reduced to a series-parallel host")
        tree, fills = result
        added_edges.extend(fills)
        trees.append(tree)
    if not trees:
        a = names.make("+c0")
        b = names.make("+c1")
        added_vertices += [a, b]
        added_edges.append((a, b))
        trees.append(edge_node(a, b))
    root = trees[0]
    for tree in trees[1:]:
        bridge = (root.sink, tree.source)
        added_edges.append(bridge)
        root = series(root, series(edge_node(*bridge), tree))
    host = Graph(tuple(graph.vertices) + tuple(added_vertices),
                 [tuple(e) for e in root.edges])
    assert root.vertices == set(host.vertices)
    return Embedding(sp=root, host=host,
                     added_edges=frozenset(host.edge(u, v) for u, v in added_edges),
                     added_vertices=frozenset(added_vertices),
                     source=root.source, sink=root.sink)


def augment_with_fresh_terminals(embedding):
    """Extend the host by fresh outer terminals so that neither terminal is a
    vertex of the original graph: series(edge(s*, s), series(tree, edge(t, t*)))."""
    names = _Names(embedding.host.vertices)
    s_new = names.make("+s")
    t_new = names.make("+t")
    tree = series(edge_node(s_new, embedding.source),
                  series(embedding.sp, edge_node(embedding.sink, t_new)))
    host = Graph(tuple(embedding.host.vertices) + (s_new, t_new),
                 [tuple(e) for e in tree.edges])
    extra = {host.edge(s_new, embedding.source), host.edge(embedding.sink, t_new)}
    return Embedding(sp=tree, host=host,
                     added_edges=embedding.added_edges | extra,
                     added_vertices=embedding.added_vertices | {s_new, t_new},
                     source=s_new, sink=t_new)
