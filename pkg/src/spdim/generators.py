"""Instance generators: named families plus seeded random families.

Determinism contract: a (family, n, seed) triple produces the same poset on
every platform and run.  Random families draw only from
``random.Random(seed)`` via ``randrange``/``random``/``shuffle``, which are
stable Mersenne-Twister consumers.
"""

import random

from .errors import BadParameter
from .poset import Poset


def standard_example(n):
    "Height-2 poset with minimal a_i, maximal b_j and a_i < b_j iff i != j."
    if n < 2:
        raise BadParameter("standard examples need n >= 2")
    elements = ["a%d" % i for i in range(1, n + 1)] + ["b%d" % i for i in range(1, n + 1)]
    relations = [("a%d" % i, "b%d" % j)
                 for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return Poset(elements, relations)


def kelly(n):
    """A planar-cover-graph poset inducing the order-n standard example.

    Two auxiliary chains sandwich the standard example:

    * an ascending chain c0 < c1 < ... < cn, where ci sits above exactly
      a1..ai and below exactly b(i+1)..bn;
    * a descending chain d1 > d2 > ... > d(n+1), where dk sits above exactly
      ak..an and below exactly b1..b(k-1).

    Each a_i is covered by c_i and d_i; each b_j covers c_(j-1) and d_(j+1).
    The cover graph is two paths joined by one rung per element of the
    standard example (a_i between c_i and d_i, b_j between c_(j-1) and
    d_(j+1)); the offset between the two rung families makes the graph
    treewidth 3 for n >= 3 while keeping it planar (a-rungs nest inside the
    c/d frame, b-rungs outside).
    """
    if n < 2:
        raise BadParameter("the construction needs n >= 2")
    elements = (["a%d" % i for i in range(1, n + 1)]
                + ["b%d" % i for i in range(1, n + 1)]
                + ["c%d" % i for i in range(n + 1)]
                + ["d%d" % i for i in range(1, n + 2)])
    relations = []
    for i in range(n):
        relations.append(("c%d" % i, "c%d" % (i + 1)))
    for k in range(1, n + 1):
        relations.append(("d%d" % (k + 1), "d%d" % k))
    for i in range(1, n + 1):
        relations.append(("a%d" % i, "c%d" % i))
        relations.append(("a%d" % i, "d%d" % i))
    for j in range(1, n + 1):
        relations.append(("c%d" % (j - 1), "b%d" % j))
        relations.append(("d%d" % (j + 1), "b%d" % j))
    return Poset(elements, relations)


def chain(n):
    if n < 1:
        raise BadParameter("chains need n >= 1")
    elements = ["v%d" % i for i in range(n)]
    return Poset(elements, list(zip(elements, elements[1:])))


def antichain(n):
    if n < 1:
        raise BadParameter("antichains need n >= 1")
    return Poset(["v%d" % i for i in range(n)], [])


def _oriented_poset(n, edges, rng):
    "Orient edges of a graph by a random vertex ranking; closure gives the poset."
    ranking = list(range(n))
    rng.shuffle(ranking)
    rank = {v: r for v, r in zip(range(n), ranking)}
    elements = ["v%d" % i for i in range(n)]
    relations = []
    for u, v in edges:
        if rank[u] > rank[v]:
            u, v = v, u
        relations.append(("v%d" % u, "v%d" % v))
    return Poset(elements, relations)


def random_tw2_poset(n, seed, delete_prob=0.3):
    """Random poset whose cover graph has treewidth at most 2.

    A random 2-tree is grown edge by edge, thinned by random deletions that
    keep it connected, then oriented by a random linear order; the poset is
    the transitive closure.  Cover edges are a subset of the oriented edges,
    so the treewidth bound is inherited.
    """
    if n < 1:
        raise BadParameter("need n >= 1")
    rng = random.Random(seed)
    if n == 1:
        return Poset(["v0"], [])
    edges = [(0, 1)]
    for v in range(2, n):
        a, b = edges[rng.randrange(len(edges))]
        edges.append((a, v))
        edges.append((b, v))
    keep = list(edges)
    for e in edges[1:]:
        if rng.random() < delete_prob:
            trial = [f for f in keep if f != e]
            if _connected(n, trial):
                keep = trial
    return _oriented_poset(n, keep, rng)


def forest_poset(n, seed, root_prob=0.25):
    "Random forest, randomly oriented; dimension is at most 3."
    if n < 1:
        raise BadParameter("need n >= 1")
    rng = random.Random(seed)
    edges = []
    for v in range(1, n):
        if rng.random() >= root_prob:
            edges.append((rng.randrange(v), v))
    return _oriented_poset(n, edges, rng)


def _connected(n, edges):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


FAMILIES = {
    "standard_example": lambda n, seed: standard_example(n),
    "kelly": lambda n, seed: kelly(n),
    "chain": lambda n, seed: chain(n),
    "antichain": lambda n, seed: antichain(n),
    "forest": forest_poset,
    "random_tw2": random_tw2_poset,
}


def generate(family, n, seed=0):
    if family not in FAMILIES:
        raise BadParameter("unknown family %r" % (family,))
    return FAMILIES[family](n, seed)
