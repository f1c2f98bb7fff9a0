"""Binary tree-decompositions with per-bag source/sink terminals.

Every node carries a bag of 2 or 3 host vertices plus two distinguished bag
members, its source and sink.  Leaf bags have size 2; a size-2 internal node
passes its terminals to both children; a size-3 internal node splits at its
middle vertex (left child runs source -> middle, right child middle -> sink).

Decomposition node ids mirror the series-parallel tree they were built from
(pre-order), and are preserved by ``reverse`` and ``swap_size2_children`` so
that nodes can be compared across transformed decompositions.
"""

import json
from dataclasses import dataclass

from .errors import InvalidSPTree, PreconditionViolated, VertexNotInDecomposition
from .spembed import EDGE, validate_sp_tree


@dataclass(frozen=True)
class DecompNode:
    id: int
    parent: int | None
    left: int | None
    right: int | None
    bag: tuple
    s: str
    t: str

    @property
    def middle(self):
        "The bag member that is neither source nor sink (size-3 bags only)."
        assert len(self.bag) == 3
        (m,) = [v for v in self.bag if v != self.s and v != self.t]
        return m

    @property
    def is_leaf(self):
        return self.left is None


class STDecomposition:
    """An s-t tree-decomposition of a two-terminal graph (immutable)."""

    def __init__(self, nodes, root, graph):
        self.nodes = tuple(nodes)
        self.root = root
        self.graph = graph
        self._depth = [0] * len(self.nodes)
        for node in self._preorder():
            if node.parent is not None:
                self._depth[node.id] = self._depth[node.parent] + 1
        self._inorder_pos = [0] * len(self.nodes)
        for pos, nid in enumerate(self.in_order()):
            self._inorder_pos[nid] = pos
        self._least = {}
        for node in self.nodes:
            for v in node.bag:
                best = self._least.get(v)
                if best is None or self._depth[node.id] < self._depth[best]:
                    self._least[v] = node.id

    @property
    def source(self):
        return self.nodes[self.root].s

    @property
    def sink(self):
        return self.nodes[self.root].t

    def __len__(self):
        return len(self.nodes)

    def _preorder(self):
        stack = [self.root]
        while stack:
            node = self.nodes[stack.pop()]
            yield node
            if node.right is not None:
                stack.append(node.right)
            if node.left is not None:
                stack.append(node.left)

    def in_order(self):
        "Node ids in in-order traversal (left subtree, node, right subtree)."
        out = []
        stack = []
        cur = self.root
        while stack or cur is not None:
            while cur is not None:
                stack.append(cur)
                cur = self.nodes[cur].left
            cur = stack.pop()
            out.append(cur)
            cur = self.nodes[cur].right
        return out

    def depth(self, u):
        return self._depth[u]

    def parent(self, u):
        return self.nodes[u].parent

    def is_ancestor(self, u, v):
        "True iff u lies on the root path of v (u <= v in the tree order)."
        while v is not None and self._depth[v] > self._depth[u]:
            v = self.nodes[v].parent
        return v == u

    def lca(self, u, v):
        while self._depth[u] > self._depth[v]:
            u = self.nodes[u].parent
        while self._depth[v] > self._depth[u]:
            v = self.nodes[v].parent
        while u != v:
            u = self.nodes[u].parent
            v = self.nodes[v].parent
        return u

    def in_order_less(self, u, v):
        return self._inorder_pos[u] < self._inorder_pos[v]

    def tree_path(self, u, v):
        "Node ids along the unique tree path from u to v, inclusive."
        w = self.lca(u, v)
        up = []
        x = u
        while x != w:
            up.append(x)
            x = self.nodes[x].parent
        down = []
        x = v
        while x != w:
            down.append(x)
            x = self.nodes[x].parent
        return up + [w] + list(reversed(down))

    def least_node(self, vertex):
        "The node closest to the root whose bag contains the vertex."
        try:
            return self._least[vertex]
        except KeyError:
            raise VertexNotInDecomposition("vertex %r is in no bag" % (vertex,)) from None

    # -- transforms ---------------------------------------------------------

    def reverse(self):
        """Swap children everywhere and exchange every (source, sink); the
        result decomposes the same host with the outer terminals exchanged,
        and its in-order is the exact reverse."""
        nodes = [DecompNode(n.id, n.parent, n.right, n.left,
                            tuple(reversed(n.bag)), n.t, n.s)
                 for n in self.nodes]
        return STDecomposition(nodes, self.root, self.graph)

    def swap_size2_children(self):
        "Swap the children of every size-2 internal node; bags and terminals stay."
        nodes = [DecompNode(n.id, n.parent, n.right, n.left, n.bag, n.s, n.t)
                 if (not n.is_leaf and len(n.bag) == 2) else n
                 for n in self.nodes]
        return STDecomposition(nodes, self.root, self.graph)

    # -- validation ---------------------------------------------------------

    def validation_errors(self, graph, source, sink):
        problems = []
        nodes = self.nodes
        for node in nodes:
            if (node.left is None) != (node.right is None):
                problems.append("node %d has exactly one child" % node.id)
            for c in (node.left, node.right):
                if c is not None and nodes[c].parent != node.id:
                    problems.append("node %d: child %d has wrong parent" % (node.id, c))
        covered = set()
        for node in nodes:
            covered.update(node.bag)
            if len(node.bag) != len(set(node.bag)):
                problems.append("node %d: repeated bag entry" % node.id)
        if covered != set(graph.vertices):
            problems.append("bags do not cover exactly the vertex set")
        for u, v in graph.edges:
            if not any(u in n.bag and v in n.bag for n in nodes):
                problems.append("edge (%s, %s) is in no bag" % (u, v))
        for v in covered:
            roots = 0
            for node in nodes:
                if v in node.bag:
                    p = node.parent
                    if p is None or v not in nodes[p].bag:
                        roots += 1
            if roots != 1:
                problems.append("nodes containing %r do not form a subtree" % (v,))
        for node in nodes:
            if len(node.bag) not in (2, 3):
                problems.append("node %d: bag size %d" % (node.id, len(node.bag)))
                continue
            if node.s == node.t or node.s not in node.bag or node.t not in node.bag:
                problems.append("node %d: bad source/sink" % node.id)
                continue
            if node.is_leaf:
                if len(node.bag) != 2:
                    problems.append("leaf %d has a bag of size %d" % (node.id, len(node.bag)))
                continue
            left, right = nodes[node.left], nodes[node.right]
            if len(node.bag) == 2:
                if not (left.s == right.s == node.s and left.t == right.t == node.t):
                    problems.append("size-2 node %d: children do not inherit terminals" % node.id)
            else:
                if left.s != node.s or right.t != node.t:
                    problems.append("size-3 node %d: outer terminals not passed down" % node.id)
                if left.t != right.s or left.t not in node.bag:
                    problems.append("size-3 node %d: children do not meet inside the bag" % node.id)
        root = nodes[self.root]
        if root.parent is not None:
            problems.append("root has a parent")
        if (root.s, root.t) != (source, sink):
            problems.append("root terminals are (%s, %s), expected (%s, %s)"
                            % (root.s, root.t, source, sink))
        for v in covered:
            if v in (source, sink):
                continue
            w = nodes[self.least_node(v)]
            if v in (w.s, w.t):
                problems.append("least node of %r uses it as a terminal" % (v,))
        return problems

    def validate(self, graph, source, sink):
        return not self.validation_errors(graph, source, sink)

    # -- separation properties ---------------------------------------------

    def separation_hits(self, u1, u2, tree_edge, subgraph_vertices):
        """Whether a connected host subgraph meeting both end bags also meets
        the separator of an edge on the tree path between them.  Always true;
        exposed as a predicate so the guarantee itself can be property-tested."""
        H = set(subgraph_vertices)
        if not self.graph.is_connected_set(H):
            raise PreconditionViolated("subgraph is not connected")
        if not (H & set(self.nodes[u1].bag)) or not (H & set(self.nodes[u2].bag)):
            raise PreconditionViolated("subgraph misses an end bag")
        if u1 == u2:
            return True  # no edge separates a node from itself
        path = self.tree_path(u1, u2)
        v1, v2 = tree_edge
        on_path = any((path[i], path[i + 1]) in ((v1, v2), (v2, v1))
                      for i in range(len(path) - 1))
        if not on_path:
            raise PreconditionViolated("edge is not on the tree path")
        return bool(H & (set(self.nodes[v1].bag) & set(self.nodes[v2].bag)))

    def st_subset_witness(self, u1, u2, subgraph_vertices):
        """A node v on the tree path between comparable u1, u2 whose source and
        sink both lie in the given connected subgraph (which must contain the
        source of u1 and the sink of u2)."""
        H = set(subgraph_vertices)
        if not self.graph.is_connected_set(H):
            raise PreconditionViolated("subgraph is not connected")
        if self.nodes[u1].s not in H or self.nodes[u2].t not in H:
            raise PreconditionViolated("subgraph misses a required terminal")
        if self.is_ancestor(u1, u2):
            # Deepest node on the path whose source is in the subgraph; the
            # separation property then forces its sink into the subgraph too.
            witness = None
            for v in self.tree_path(u1, u2):
                if self.nodes[v].s in H:
                    witness = v
            assert witness is not None
            node = self.nodes[witness]
            assert node.t in H, "separation property violated"
            return witness
        if self.is_ancestor(u2, u1):
            return self.reverse().st_subset_witness(u2, u1, H)
        raise PreconditionViolated("nodes are not comparable in the tree")


def build_st_decomposition(sp_root, graph=None):
    """Decomposition mirroring a series-parallel tree node for node.

    Leaf -> bag {source, sink}; parallel -> bag {source, sink}; series ->
    the size-3 bag {source, shared vertex, sink}.  Node ids are assigned in
    pre-order of the composition tree.
    """
    if not validate_sp_tree(sp_root):
        raise InvalidSPTree("refusing to decompose an invalid composition tree")
    if graph is None:
        from .graphs import Graph
        order = sorted(sp_root.vertices)
        graph = Graph(order, [tuple(e) for e in sp_root.edges])
    nodes = []
    stack = [(sp_root, None, None)]
    while stack:
        sp, parent, side = stack.pop()
        nid = len(nodes)
        if sp.kind == "series":
            bag = (sp.source, sp.left.sink, sp.sink)
        else:
            bag = (sp.source, sp.sink)
        nodes.append([nid, parent, None, None, bag, sp.source, sp.sink])
        if parent is not None:
            nodes[parent][2 if side == "left" else 3] = nid
        if sp.kind != EDGE:
            stack.append((sp.right, nid, "right"))
            stack.append((sp.left, nid, "left"))
    decomp_nodes = [DecompNode(nid, parent, left, right, bag, s, t)
                    for nid, parent, left, right, bag, s, t in nodes]
    return STDecomposition(decomp_nodes, 0, graph)


# -- JSON export -------------------------------------------------------------

def decomposition_to_json(decomp):
    out = []
    for node in decomp.nodes:
        parent = node.parent
        side = None
        if parent is not None:
            side = "left" if decomp.nodes[parent].left == node.id else "right"
        out.append({"id": node.id, "parent": parent, "side": side,
                    "bag": list(node.bag), "s": node.s, "t": node.t})
    return out


def dumps_decomposition(decomp):
    return json.dumps(decomposition_to_json(decomp), indent=2) + "\n"
