"""Finite posets with reachability stored as dense bitmask rows.

Elements are arbitrary space-free string identifiers.  The canonical order of
elements is their declaration order; every deterministic tie-break in the
package refers back to it.  A poset is immutable after construction and safe
to share between threads.

Text format (one poset per stream)::

    # comment
    elements: a b c
    a < b
    b < c

The first non-comment line declares the ground set; each following line
declares one cover relation.  ``loads``/``dumps`` round-trip exactly.
"""

import heapq
from collections import deque

from .errors import (
    CycleError,
    NotComparable,
    NotReversible,
    PairNotIncomparable,
    ParseError,
    UnknownElement,
)
from .graphs import Graph


class Poset:
    """A finite strict partial order over named elements.

    ``relations`` may be any set of ordered pairs (x, y) meaning x < y; the
    transitive closure is taken and pairs implied by transitivity are absorbed
    when the cover relation is recomputed.  Construction fails with
    ``CycleError`` if the closure would make any element below itself.
    """

    __slots__ = ("elements", "_index", "_above", "_below", "_cover_up")

    def __init__(self, elements, relations=()):
        elements = tuple(elements)
        index = {}
        for e in elements:
            if e in index:
                raise UnknownElement("duplicate element %r" % (e,))
            index[e] = len(index)
        n = len(elements)
        above = [0] * n
        for x, y in relations:
            if x not in index:
                raise UnknownElement("unknown element %r" % (x,))
            if y not in index:
                raise UnknownElement("unknown element %r" % (y,))
            above[index[x]] |= 1 << index[y]
        # Warshall closure over bitmask rows.
        for k in range(n):
            bit = 1 << k
            row = above[k]
            for i in range(n):
                if above[i] & bit:
                    above[i] |= row
        for i in range(n):
            if above[i] & (1 << i):
                raise CycleError("relation has a directed cycle through %r" % (elements[i],))
        below = [0] * n
        for i in range(n):
            row = above[i]
            j = 0
            while row:
                if row & 1:
                    below[j] |= 1 << i
                row >>= 1
                j += 1
        # Cover relation = transitive reduction: j covers i iff i < j and no
        # k with i < k < j.  Implied bits are the union of rows above i.
        cover_up = [0] * n
        for i in range(n):
            implied = 0
            row = above[i]
            for k in _bits(row):
                implied |= above[k]
            cover_up[i] = row & ~implied
        self.elements = elements
        self._index = index
        self._above = tuple(above)
        self._below = tuple(below)
        self._cover_up = tuple(cover_up)

    @classmethod
    def from_cover_relations(cls, elements, covers):
        return cls(elements, covers)

    @classmethod
    def _from_masks(cls, elements, above):
        p = cls.__new__(cls)
        n = len(elements)
        below = [0] * n
        cover_up = [0] * n
        for i in range(n):
            row = above[i]
            for j in _bits(row):
                below[j] |= 1 << i
        for i in range(n):
            implied = 0
            for k in _bits(above[i]):
                implied |= above[k]
            cover_up[i] = above[i] & ~implied
        p.elements = tuple(elements)
        p._index = {e: i for i, e in enumerate(elements)}
        p._above = tuple(above)
        p._below = tuple(below)
        p._cover_up = tuple(cover_up)
        return p

    # -- basic queries -----------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._above == other._above

    def __hash__(self):
        return hash((self.elements, self._above))

    def __repr__(self):
        return "Poset(%d elements, %d cover relations)" % (len(self), len(self.covers()))

    def index(self, x):
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement("unknown element %r" % (x,)) from None

    def less(self, x, y):
        "True iff x < y (strictly)."
        return bool(self._above[self.index(x)] >> self.index(y) & 1)

    def leq(self, x, y):
        i, j = self.index(x), self.index(y)
        return i == j or bool(self._above[i] >> j & 1)

    def incomparable(self, x, y):
        i, j = self.index(x), self.index(y)
        return i != j and not (self._above[i] >> j & 1) and not (self._above[j] >> i & 1)

    def upset_mask(self, x):
        "Bitmask of {y : y >= x} over element indices, including x itself."
        i = self.index(x)
        return self._above[i] | (1 << i)

    def downset_mask(self, x):
        i = self.index(x)
        return self._below[i] | (1 << i)

    def upset(self, x):
        return {self.elements[j] for j in _bits(self.upset_mask(x))}

    def downset(self, x):
        return {self.elements[j] for j in _bits(self.downset_mask(x))}

    def covers(self):
        "All cover relations (x, y) with y covering x, in canonical order."
        out = []
        for i, row in enumerate(self._cover_up):
            for j in _bits(row):
                out.append((self.elements[i], self.elements[j]))
        return out

    def cover_edges(self):
        return frozenset((self.elements[i], self.elements[j])
                         for i, row in enumerate(self._cover_up) for j in _bits(row))

    def cover_graph(self):
        return Graph(self.elements, self.covers())

    def covering_chain(self, x, y):
        """A chain x = z1 < z2 < ... < zk = y where each step is a cover.

        Tie-break: always step to the smallest cover (canonical order) above
        the current element that still lies below y.
        """
        if not self.leq(x, y):
            raise NotComparable("%r is not below %r" % (x, y))
        j = self.index(y)
        chain = [self.index(x)]
        while chain[-1] != j:
            cur = chain[-1]
            step = self._cover_up[cur] & (self._below[j] | (1 << j))
            chain.append(_low_bit(step))
        return [self.elements[i] for i in chain]

    def incomparable_pairs(self):
        "All ordered incomparable pairs, in canonical order (symmetric set)."
        n = len(self.elements)
        out = []
        for i in range(n):
            cmp_mask = self._above[i] | self._below[i] | (1 << i)
            for j in range(n):
                if not (cmp_mask >> j & 1):
                    out.append((self.elements[i], self.elements[j]))
        return out

    def dual(self):
        "The poset with all comparabilities flipped; same cover graph."
        return Poset._from_masks(self.elements, self._below)

    # -- linear extensions and reversibility -------------------------------

    def is_linear_extension(self, order):
        order = list(order)
        if sorted(order, key=self._sort_key) != sorted(self.elements, key=self._sort_key):
            return False
        if any(e not in self._index for e in order):
            return False
        pos = {e: k for k, e in enumerate(order)}
        return all(pos[x] < pos[y] for x, y in self.covers())

    def _sort_key(self, e):
        return self._index.get(e, len(self._index)), str(e)

    def canonical_extension(self):
        "The linear extension picked by canonical-order tie-breaking."
        return self.linear_extension_reversing(())

    def _check_pairs(self, pairs):
        pairs = [(x, y) for x, y in pairs]
        for x, y in pairs:
            if not self.incomparable(x, y):
                raise PairNotIncomparable("(%r, %r) is not an incomparable pair" % (x, y))
        return pairs

    def linear_extension_reversing(self, pairs):
        """A linear extension placing y before x for every pair (x, y).

        Topological order of the cover digraph plus the arcs y -> x, with
        ties broken by canonical element order.  Raises ``NotReversible``
        (carrying a witness strict alternating cycle) when impossible.
        """
        pairs = self._check_pairs(pairs)
        n = len(self.elements)
        succ = [list(_bits(row)) for row in self._cover_up]
        indeg = [0] * n
        for i in range(n):
            for j in succ[i]:
                indeg[j] += 1
        for x, y in pairs:
            i, j = self._index[y], self._index[x]
            succ[i].append(j)
            indeg[j] += 1
        ready = [i for i in range(n) if indeg[i] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            i = heapq.heappop(ready)
            order.append(i)
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(ready, j)
        if len(order) != n:
            raise NotReversible("pair set is not reversible", self._witness_cycle(pairs))
        return [self.elements[i] for i in order]

    def is_reversible(self, pairs):
        "True iff one linear extension can reverse every pair at once."
        try:
            self.linear_extension_reversing(pairs)
        except NotReversible:
            return False
        return True

    def find_strict_alternating_cycle(self, pairs):
        """A strict alternating cycle with all pairs from ``pairs``, or None.

        None is returned exactly when the set is reversible.
        """
        pairs = self._check_pairs(pairs)
        try:
            self.linear_extension_reversing(pairs)
        except NotReversible as exc:
            return exc.cycle
        return None

    def _witness_cycle(self, pairs):
        # Shortest digraph cycle through a reversal arc: for pair (x, y) the
        # arc y -> x closes a cycle with any x ->* y path of order arcs and
        # further reversal arcs; BFS from x to y over both arc kinds.
        n = len(self.elements)
        succ = [list(_bits(row)) for row in self._cover_up]
        arc_pair = {}
        for x, y in pairs:
            i, j = self._index[y], self._index[x]
            succ[i].append(j)
            arc_pair[(i, j)] = (x, y)
        best = None
        for x, y in pairs:
            src, dst = self._index[x], self._index[y]
            parent = {src: None}
            queue = deque([src])
            while queue:
                v = queue.popleft()
                if v == dst:
                    break
                for w in succ[v]:
                    if w not in parent:
                        parent[w] = v
                        queue.append(w)
            if dst not in parent:
                continue
            path = []
            v = dst
            while v is not None:
                path.append(v)
                v = parent[v]
            path.reverse()  # x ... y
            if best is None or len(path) < len(best[0]):
                best = (path, (x, y))
        assert best is not None, "witness requested for a reversible set"
        path, closing = best
        cycle = [closing]
        for a, b in zip(path, path[1:]):
            pair = arc_pair.get((a, b))
            if pair is not None:
                cycle.append(pair)
        return self._strictify(cycle)

    def _strictify(self, cycle):
        # Any chord x_i <= y_j with j != i+1 yields the shorter alternating
        # cycle p_j, ..., p_i; iterate until the strict condition holds.
        while True:
            m = len(cycle)
            chord = None
            for i in range(m):
                for j in range(m):
                    if j == (i + 1) % m:
                        continue
                    if self.leq(cycle[i][0], cycle[j][1]):
                        chord = (i, j)
                        break
                if chord:
                    break
            if chord is None:
                return cycle
            i, j = chord
            out = []
            k = j
            while True:
                out.append(cycle[k])
                if k == i:
                    break
                k = (k + 1) % m
            assert 2 <= len(out) < m
            cycle = out

    def is_alternating_cycle(self, cycle):
        cycle = list(cycle)
        if len(cycle) < 2:
            return False
        if any(not self.incomparable(x, y) for x, y in cycle):
            return False
        m = len(cycle)
        return all(self.leq(cycle[i][0], cycle[(i + 1) % m][1]) for i in range(m))

    def is_strict_alternating_cycle(self, cycle):
        cycle = list(cycle)
        if not self.is_alternating_cycle(cycle):
            return False
        m = len(cycle)
        for i in range(m):
            for j in range(m):
                if self.leq(cycle[i][0], cycle[j][1]) != (j == (i + 1) % m):
                    return False
        return True

    # -- realizer checking --------------------------------------------------

    def realizer_violations(self, extensions):
        "Diagnostics explaining why the extensions are not a realizer."
        problems = []
        positions = []
        for k, ext in enumerate(extensions):
            ext = list(ext)
            if not self.is_linear_extension(ext):
                problems.append("order %d is not a linear extension of the poset" % k)
                positions.append(None)
            else:
                positions.append({e: p for p, e in enumerate(ext)})
        for x, y in self.incomparable_pairs():
            if not any(pos is not None and pos[y] < pos[x] for pos in positions):
                problems.append("incomparable pair (%s, %s) is reversed by no extension" % (x, y))
        return problems

    def verify_realizer(self, extensions):
        """True iff every order is a linear extension and each incomparable
        ordered pair (x, y) has some extension with y before x."""
        return not self.realizer_violations(extensions)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _low_bit(mask):
    assert mask
    return (mask & -mask).bit_length() - 1


# -- text format -----------------------------------------------------------

def dumps(poset):
    "Serialize to the poset text format (canonical, round-trips exactly)."
    lines = ["elements: %s" % " ".join(poset.elements)]
    for x, y in poset.covers():
        lines.append("%s < %s" % (x, y))
    return "\n".join(lines) + "\n"


def loads(text):
    "Parse the poset text format; strict, with line numbers on errors."
    elements = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("elements:"):
            if elements is not None:
                raise ParseError("duplicate elements line", lineno)
            elements = line[len("elements:"):].split()
            continue
        if elements is None:
            raise ParseError("expected an 'elements:' line first", lineno)
        tokens = line.split()
        if len(tokens) != 3 or tokens[1] != "<":
            raise ParseError("expected a cover relation 'x < y'", lineno)
        x, _, y = tokens
        known = set(elements)
        if x not in known:
            raise ParseError("unknown element %r" % (x,), lineno)
        if y not in known:
            raise ParseError("unknown element %r" % (y,), lineno)
        relations.append((x, y))
    if elements is None:
        raise ParseError("missing 'elements:' line", 1)
    if len(set(elements)) != len(elements):
        raise ParseError("duplicate identifiers in elements line", 1)
    return Poset(elements, relations)
