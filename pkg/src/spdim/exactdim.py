"""Brute-force exact poset dimension at desk scale.

The dimension is the least number of parts in a partition of the incomparable
ordered pairs into reversible sets.  The search assigns pairs to parts one at
a time, keeping an incrementally updated reachability table per part so that
a non-reversible assignment is rejected the moment it closes a cycle.

Two sound accelerations keep standard-example instances tractable:

* pairs that close an alternating cycle of length two can never share a part,
  and a greedy clique in that conflict graph is a lower bound on the answer;
* pairs are assigned most-conflicted first, while the part chosen for a pair
  is still restricted to the already-used parts plus at most one fresh part.
"""

from dataclasses import dataclass

from .errors import BadParameter, Exceeded, TooLarge


@dataclass
class DimensionResult:
    dimension: int
    witness: list
    parts: list


def dimension_exact(poset, max_d=12, cap=60):
    """Exact dimension with a witness realizer and the partition behind it.

    ``cap`` guards the search, counting incomparable ordered pairs; ``max_d``
    bounds the number of parts tried (``Exceeded`` when the true dimension is
    larger).
    """
    inc = poset.incomparable_pairs()
    if len(inc) > cap:
        raise TooLarge("%d incomparable pairs exceed the cap of %d" % (len(inc), cap))
    if not inc:
        return DimensionResult(1, [poset.canonical_extension()], [])
    n = len(poset)
    index = {pair: k for k, pair in enumerate(inc)}
    up = [poset.upset_mask(e) for e in poset.elements]
    eidx = poset._index

    m = len(inc)
    conflict = [0] * m
    for a, (x1, y1) in enumerate(inc):
        for b in range(a + 1, m):
            x2, y2 = inc[b]
            if up[eidx[x1]] >> eidx[y2] & 1 and up[eidx[x2]] >> eidx[y1] & 1:
                conflict[a] |= 1 << b
                conflict[b] |= 1 << a
    degrees = [bin(c).count("1") for c in conflict]

    lower = max(2, _greedy_clique(conflict, degrees))
    if lower > max_d:
        raise Exceeded(max_d)

    order = sorted(range(m), key=lambda k: (-degrees[k], k))
    base_reach = [poset.upset_mask(e) for e in poset.elements]
    for d in range(lower, max_d + 1):
        assignment = _search(poset, inc, order, base_reach, d)
        if assignment is not None:
            parts = [[] for _ in range(max(assignment) + 1)]
            for k, part in enumerate(assignment):
                parts[part].append(inc[k])
            parts = [sorted(p, key=index.__getitem__) for p in parts]
            witness = [poset.linear_extension_reversing(p) for p in parts]
            return DimensionResult(len(parts), witness, parts)
    raise Exceeded(max_d)


def _greedy_clique(conflict, degrees):
    m = len(conflict)
    ranked = sorted(range(m), key=lambda k: (-degrees[k], k))
    best = 1 if m else 0
    for start in range(m):
        size = 1
        cand = conflict[start]
        while cand:
            pick = next(k for k in ranked if cand >> k & 1)
            size += 1
            cand &= conflict[pick]
        best = max(best, size)
    return best


def _search(poset, inc, order, base_reach, d):
    "Backtracking part assignment; returns pair-index -> part or None."
    n = len(poset)
    eidx = poset._index
    m = len(inc)
    reaches = []  # one reachability table per open part
    assignment = [None] * m

    def place(table, xi, yi):
        "Add arc y -> x; return the undo log, or None if it closes a cycle."
        if table[xi] >> yi & 1:
            return None
        undo = []
        xrow = table[xi]
        for u in range(n):
            row = table[u]
            if row >> yi & 1 and (row | xrow) != row:
                undo.append((u, row))
                table[u] = row | xrow
        return undo

    def attempt(depth):
        if depth == m:
            return True
        k = order[depth]
        x, y = inc[k]
        xi, yi = eidx[x], eidx[y]
        limit = len(reaches) + 1 if len(reaches) < d else len(reaches)
        for part in range(limit):
            if part == len(reaches):
                reaches.append(list(base_reach))
            undo = place(reaches[part], xi, yi)
            if undo is not None:
                assignment[k] = part
                if attempt(depth + 1):
                    return True
                assignment[k] = None
                for u, row in undo:
                    reaches[part][u] = row
            if part == len(reaches) - 1 and all(a != part for a in assignment if a is not None):
                reaches.pop()
        return False

    if attempt(0):
        return list(assignment)
    return None


def contains_standard_example(poset, n):
    """Whether 2n elements of the poset induce exactly the order-n standard
    example: minimal a_1..a_n, maximal b_1..b_n, a_i < b_j iff i != j."""
    if n < 2:
        raise BadParameter("standard examples start at order 2")
    inc = [(x, y) for x, y in poset.incomparable_pairs()]
    eidx = poset._index
    up = [poset.upset_mask(e) for e in poset.elements]

    def compatible(a, b, chosen):
        ai, bi = eidx[a], eidx[b]
        for a2, b2 in chosen:
            a2i, b2i = eidx[a2], eidx[b2]
            if a == a2 or a == b2 or b == a2 or b == b2:
                return False
            if not (up[ai] >> eidx[b2] & 1) or not (up[a2i] >> eidx[b] & 1):
                return False
            if up[ai] >> a2i & 1 or up[a2i] >> ai & 1:
                return False
            if up[bi] >> b2i & 1 or up[b2i] >> bi & 1:
                return False
        return True

    def extend(chosen):
        if len(chosen) == n:
            return True
        floor = eidx[chosen[-1][0]] if chosen else -1
        for a, b in inc:
            if eidx[a] <= floor:
                continue
            if compatible(a, b, chosen) and extend(chosen + [(a, b)]):
                return True
        return False

    return extend([])
