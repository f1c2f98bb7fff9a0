"""Signature classification of incomparable pairs and realizer synthesis.

Every incomparable ordered pair (x, y) of a poset whose cover graph has
treewidth at most 2 is labelled by a small signature read off an s-t
tree-decomposition of a series-parallel supergraph of the cover graph.  Pairs
sharing a signature can be reversed by a single linear extension, and there
are at most 12 signatures, so the poset has dimension at most 12.

Signature fields (values are 1 or 2 so that transformations flip v -> 3-v):

* ``kind``  -- 1 if the upset of x or the downset of y misses the bag of the
  meeting node (the lca of the least nodes of x and y); 2 otherwise.
* ``order`` -- 1 if x's least node precedes y's in the in-order traversal.
* ``up``    -- kind 1 only: 1 if the upset of x misses the meeting bag.
* ``span``  -- kind 2 only: 2 if some ancestor-or-self of the meeting node has
  both its terminals inside the upset of x.
* ``gate``  -- kind 2 only, for size-2 meeting bags: 1 if the meeting node's
  source sits in the upset of x (and its sink in the downset of y), 2 for the
  mirrored case; equal to ``order`` when the meeting bag has size 3.
"""

import json
from dataclasses import dataclass

from .errors import MalformedInstance, NotIncomparable, NotTreewidth2, ReversibilityViolation
from .spembed import augment_with_fresh_terminals, embed_into_sp, has_treewidth_at_most_2
from .stdecomp import build_st_decomposition


@dataclass(frozen=True, order=True)
class PairClass:
    kind: int
    order: int
    up: int | None = None
    span: int | None = None
    gate: int | None = None

    def __post_init__(self):
        assert self.kind in (1, 2) and self.order in (1, 2)
        if self.kind == 1:
            assert self.up in (1, 2) and self.span is None and self.gate is None
        else:
            assert self.up is None and self.span in (1, 2) and self.gate in (1, 2)

    def __str__(self):
        if self.kind == 1:
            return "kind=1 order=%d up=%d" % (self.order, self.up)
        return "kind=2 order=%d span=%d gate=%d" % (self.order, self.span, self.gate)

    def to_json(self):
        if self.kind == 1:
            return {"kind": 1, "order": self.order, "up": self.up}
        return {"kind": 2, "order": self.order, "span": self.span, "gate": self.gate}

    @classmethod
    def from_json(cls, obj):
        if obj["kind"] == 1:
            return cls(1, obj["order"], up=obj["up"])
        return cls(2, obj["order"], span=obj["span"], gate=obj["gate"])


ALL_CLASSES = tuple(
    [PairClass(1, o, up=u) for o in (1, 2) for u in (1, 2)]
    + [PairClass(2, o, span=sp, gate=g) for o in (1, 2) for sp in (1, 2) for g in (1, 2)]
)


class _Classifier:
    """Precomputed tables for classifying all pairs of one (poset, decomposition)."""

    def __init__(self, poset, decomp):
        self.poset = poset
        self.decomp = decomp
        index = poset._index
        nodes = decomp.nodes
        self.home = {}
        for x in poset.elements:
            w = decomp.least_node(x)
            node = nodes[w]
            if len(node.bag) != 3 or node.middle != x:
                raise MalformedInstance(
                    "least node of %r does not carry it as its middle vertex" % (x,))
            self.home[x] = w
        self.bagmask = []
        self.s_idx = []
        self.t_idx = []
        for node in nodes:
            mask = 0
            for v in node.bag:
                i = index.get(v)
                if i is not None:
                    mask |= 1 << i
            self.bagmask.append(mask)
            self.s_idx.append(index.get(node.s))
            self.t_idx.append(index.get(node.t))
        # For every element, the set of nodes u such that some ancestor-or-self
        # of u has both terminals inside the up/down set of the element.
        self.up_span = {}
        self.down_span = {}
        for x in poset.elements:
            self.up_span[x] = self._span_mask(poset.upset_mask(x))
            self.down_span[x] = self._span_mask(poset.downset_mask(x))

    def _span_mask(self, member_mask):
        decomp = self.decomp
        out = 0
        stack = [(decomp.root, False)]
        while stack:
            nid, flag = stack.pop()
            si, ti = self.s_idx[nid], self.t_idx[nid]
            if (si is not None and member_mask >> si & 1
                    and ti is not None and member_mask >> ti & 1):
                flag = True
            if flag:
                out |= 1 << nid
            node = decomp.nodes[nid]
            if node.left is not None:
                stack.append((node.left, flag))
                stack.append((node.right, flag))
        return out

    def classify(self, x, y):
        poset = self.poset
        decomp = self.decomp
        wx, wy = self.home[x], self.home[y]
        if wx == wy:
            raise MalformedInstance("incomparable elements share a least node")
        meet = decomp.lca(wx, wy)
        up_mask = poset.upset_mask(x)
        down_mask = poset.downset_mask(y)
        up_hits = up_mask & self.bagmask[meet]
        down_hits = down_mask & self.bagmask[meet]
        order = 1 if decomp.in_order_less(wx, wy) else 2
        if not up_hits or not down_hits:
            return PairClass(1, order, up=(1 if not up_hits else 2))
        span = 2 if self.up_span[x] >> meet & 1 else 1
        if len(decomp.nodes[meet].bag) == 3:
            gate = order
        else:
            si, ti = self.s_idx[meet], self.t_idx[meet]
            s_up = si is not None and bool(up_mask >> si & 1)
            t_up = ti is not None and bool(up_mask >> ti & 1)
            s_down = si is not None and bool(down_mask >> si & 1)
            t_down = ti is not None and bool(down_mask >> ti & 1)
            if s_up and t_down and not (t_up or s_down):
                gate = 1
            elif t_up and s_down and not (s_up or t_down):
                gate = 2
            else:
                raise MalformedInstance(
                    "meeting bag of (%r, %r) is not split between upset and downset" % (x, y))
        return PairClass(2, order, span=span, gate=gate)


def classify_pairs(poset, decomp):
    "Signature of every incomparable ordered pair under one decomposition."
    classifier = _Classifier(poset, decomp)
    return {(x, y): classifier.classify(x, y) for x, y in poset.incomparable_pairs()}


class ClassifiedInstance:
    """A poset together with its embedding, decomposition and classification."""

    def __init__(self, poset, embedding, decomp):
        self.poset = poset
        self.embedding = embedding
        self.decomp = decomp
        classifier = _Classifier(poset, decomp)
        self.home = classifier.home
        self.classification = {(x, y): classifier.classify(x, y)
                               for x, y in poset.incomparable_pairs()}


def build_instance(poset):
    "Embed the cover graph, add fresh outer terminals, decompose, classify."
    cover = poset.cover_graph()
    if not has_treewidth_at_most_2(cover):
        raise NotTreewidth2("cover graph has treewidth greater than 2")
    embedding = augment_with_fresh_terminals(embed_into_sp(cover))
    decomp = build_st_decomposition(embedding.sp, embedding.host)
    return ClassifiedInstance(poset, embedding, decomp)


def classify_pair(instance, x, y):
    try:
        return instance.classification[(x, y)]
    except KeyError:
        raise NotIncomparable("(%r, %r) is not an incomparable pair" % (x, y)) from None


def partition_inc_pairs(instance):
    """Group the incomparable pairs by signature and certify that every class
    is reversible.  A failure would be an implementation bug; it raises
    ``ReversibilityViolation`` carrying the witness cycle."""
    parts = {}
    for pair, cls in instance.classification.items():
        parts.setdefault(cls, []).append(pair)
    poset = instance.poset
    for cls, pairs in sorted(parts.items()):
        witness = poset.find_strict_alternating_cycle(pairs)
        if witness is not None:
            raise ReversibilityViolation(
                "signature class %s is not reversible" % (cls,), witness, cls)
    return parts


def signature_census(instance):
    "Pair count per signature, zeros included (sums to |Inc|)."
    census = {cls: 0 for cls in ALL_CLASSES}
    for cls in instance.classification.values():
        census[cls] += 1
    return census


@dataclass(frozen=True)
class Realizer:
    """An ordered family of linear extensions whose intersection is the poset.

    Each entry pairs a signature with the extension reversing that signature
    class; a poset with no incomparable pairs yields one entry with signature
    ``None``.
    """

    extensions: tuple

    def orders(self):
        return [list(ext) for _, ext in self.extensions]

    def __len__(self):
        return len(self.extensions)


def realize_tw2(poset):
    """End-to-end realizer construction for treewidth-<=2 cover graphs.

    At most 12 linear extensions are produced (one per nonempty signature
    class); their intersection is exactly the input order.
    """
    if not has_treewidth_at_most_2(poset.cover_graph()):
        raise NotTreewidth2("cover graph has treewidth greater than 2")
    if not poset.incomparable_pairs():
        return Realizer(((None, tuple(poset.canonical_extension())),))
    instance = build_instance(poset)
    parts = partition_inc_pairs(instance)
    out = []
    for cls in ALL_CLASSES:
        if cls in parts:
            ext = poset.linear_extension_reversing(parts[cls])
            out.append((cls, tuple(ext)))
    return Realizer(tuple(out))


# -- consistency transformations ---------------------------------------------

@dataclass(frozen=True)
class Violation:
    check: str
    pair: tuple
    expected: object
    actual: object

    def __str__(self):
        return "%s: pair %s expected %s, got %s" % (self.check, self.pair, self.expected, self.actual)


def metamorphic_check(instance):
    """Re-classify all pairs under the dual poset, the reversed decomposition
    and the size-2 child swap, and compare against the signature relabelings
    these transformations are guaranteed to produce.  Returns the list of
    violations (empty on a correct implementation)."""
    poset = instance.poset
    decomp = instance.decomp
    base = instance.classification
    report = []

    dual_cls = classify_pairs(poset.dual(), decomp)
    for (x, y), cls in base.items():
        got = dual_cls[(y, x)]
        if cls.kind == 1:
            if cls.up == 2:
                want = PairClass(1, 3 - cls.order, up=1)
                if got != want:
                    report.append(Violation("dual/kind1", (x, y), want, got))
        else:
            ok = (got.kind == 2 and got.order == 3 - cls.order and got.gate == 3 - cls.gate)
            if ok and cls.span == 2:
                ok = got.span == 1
            if not ok:
                report.append(Violation("dual/kind2", (x, y),
                                        "kind=2 order=%d gate=%d%s" % (3 - cls.order, 3 - cls.gate,
                                                                       " span=1" if cls.span == 2 else ""),
                                        got))

    rev_cls = classify_pairs(poset, decomp.reverse())
    for (x, y), cls in base.items():
        got = rev_cls[(x, y)]
        if cls.kind == 1:
            want = PairClass(1, 3 - cls.order, up=cls.up)
        else:
            want = PairClass(2, 3 - cls.order, span=cls.span, gate=3 - cls.gate)
        if got != want:
            report.append(Violation("reversed", (x, y), want, got))

    swap_cls = classify_pairs(poset, decomp.swap_size2_children())
    for (x, y), cls in base.items():
        if cls.kind == 2 and cls.order == 2 and cls.gate == 1:
            got = swap_cls[(x, y)]
            want = PairClass(2, 1, span=cls.span, gate=cls.gate)
            if got != want:
                report.append(Violation("child-swap", (x, y), want, got))

    classifier = _Classifier(poset, decomp)
    for (x, y) in base:
        meet = decomp.lca(classifier.home[x], classifier.home[y])
        if (classifier.up_span[x] >> meet & 1) and (classifier.down_span[y] >> meet & 1):
            report.append(Violation("terminal-pair-exclusion", (x, y),
                                    "at most one of upset/downset spans an ancestor", "both"))
    return report


# -- realizer JSON -------------------------------------------------------------

def realizer_to_json(realizer):
    return [{"signature": None if cls is None else cls.to_json(),
             "extension": list(ext)} for cls, ext in realizer.extensions]


def dumps_realizer(realizer):
    return json.dumps(realizer_to_json(realizer), indent=2) + "\n"


def loads_realizer(text):
    data = json.loads(text)
    out = []
    for entry in data:
        sig = entry["signature"]
        cls = None if sig is None else PairClass.from_json(sig)
        out.append((cls, tuple(entry["extension"])))
    return Realizer(tuple(out))
