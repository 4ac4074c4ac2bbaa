"""Tree model for abstract branch-and-cut.

A branch-and-cut tree is a rooted binary tree whose nodes carry a *gap*
label: the dual-bound improvement accumulated at that node relative to the
root relaxation.  A node with two children is a *branch* node, improving
its children's gaps by ``ell`` (left) and ``r`` (right).  A node with one
child is a *cut* node, improving its child's gap by the cut strength.  A
node with no children is a leaf.  The tree *proves* bound ``Z`` when every
leaf gap is at least ``Z``.

Cut strength is either a constant ``c`` per cut, or harmonically decaying:
the k-th cut along a root path improves the gap by ``c/k``, so cuts show
diminishing returns.

Node processing cost is modeled by a *time-function* ``w``: a node whose
root path passes through ``z`` cut nodes costs ``w(z)``, where ``w`` is
nondecreasing with ``w(0) = 1``.  This captures relaxations getting slower
as cuts accumulate.  :func:`tree_time` sums node costs over the tree; with
``w = 1`` it is simply the node count.

All quantities are exact rationals (:class:`fractions.Fraction`).  Values
are immutable after construction, every operation here is a deterministic
pure function of its inputs, and objects are safe to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .rational import RationalLike, as_rational, format_rational


class ParameterError(ValueError):
    """A model parameter is outside the range an operation supports."""


class DomainError(ValueError):
    """A value was requested outside a function's declared domain."""


class InfeasibleError(RuntimeError):
    """No tree proving the requested bound exists within the given limits."""


class StateLimitError(RuntimeError):
    """An exact search exceeded its configured state budget."""


class CutDecay(enum.Enum):
    """How cut strength evolves along a root path."""

    CONSTANT = "constant"
    HARMONIC = "harmonic"


@dataclass(frozen=True)
class SvbcParams:
    """Single-variable branch-and-cut parameters.

    Every branch node improves the bound by the same pair ``(ell, r)`` and
    every cut node by ``c`` (or ``c/k`` for the k-th cut on the path, with
    harmonic decay).  Normalized so that ``0 <= ell <= r``.
    """

    ell: Fraction
    r: Fraction
    c: Fraction
    decay: CutDecay = CutDecay.CONSTANT

    def __post_init__(self) -> None:
        object.__setattr__(self, "ell", as_rational(self.ell))
        object.__setattr__(self, "r", as_rational(self.r))
        object.__setattr__(self, "c", as_rational(self.c))
        if not 0 <= self.ell <= self.r:
            raise ParameterError(
                f"branch improvements must satisfy 0 <= ell <= r, got "
                f"ell={format_rational(self.ell)} r={format_rational(self.r)}"
            )
        if self.c < 0:
            raise ParameterError("cut improvement c must be nonnegative")

    def cut_gain(self, z: int) -> Fraction:
        """Bound improvement of a cut node that already has ``z`` cuts above it.

        Such a node is the (z+1)-th cut on its root path.
        """
        if self.c <= 0:
            raise ParameterError("cut nodes require c > 0")
        if self.decay is CutDecay.HARMONIC:
            return self.c / (z + 1)
        return self.c


_TIMEFN_ONE = "one"
_TIMEFN_AFFINE = "affine"
_TIMEFN_POLY = "poly"
_TIMEFN_TABLE = "table"


@dataclass(frozen=True)
class TimeFn:
    """Per-node processing time as a function of cuts on the root path.

    Nondecreasing with ``w(0) = 1``.  Kinds:

    - ``one``:    w(z) = 1 (tree time = node count)
    - ``affine``: w(z) = a*z + 1
    - ``poly``:   w(z) = c0 + c1*z + c2*z**2 + ...   (c0 = 1)
    - ``table``:  explicit values, no extrapolation past the last entry

    Affine and all-nonnegative polynomials are nondecreasing by
    construction; tables are validated up front; polynomials with negative
    coefficients are checked incrementally over every evaluated range.
    """

    kind: str
    coeffs: tuple[Fraction, ...] = ()
    # High-water mark of the monotonicity check for mixed-sign polynomials.
    _checked: list = field(default_factory=lambda: [0], compare=False, repr=False)

    @classmethod
    def one(cls) -> "TimeFn":
        return cls(_TIMEFN_ONE)

    @classmethod
    def affine(cls, a: RationalLike, b: RationalLike = 1) -> "TimeFn":
        a = as_rational(a)
        b = as_rational(b)
        if b != 1:
            raise ParameterError("affine time-function needs w(0) = b = 1")
        if a < 0:
            raise ParameterError("affine slope must be nonnegative")
        return cls(_TIMEFN_AFFINE, (a, b))

    @classmethod
    def polynomial(cls, coeffs) -> "TimeFn":
        cs = tuple(as_rational(c) for c in coeffs)
        if not cs or cs[0] != 1:
            raise ParameterError("polynomial time-function needs constant term 1")
        return cls(_TIMEFN_POLY, cs)

    @classmethod
    def table(cls, values) -> "TimeFn":
        vs = tuple(as_rational(v) for v in values)
        if not vs or vs[0] != 1:
            raise ParameterError("table time-function needs w(0) = 1")
        for z in range(1, len(vs)):
            if vs[z] < vs[z - 1]:
                raise ParameterError(f"table time-function decreases at z={z}")
        return cls(_TIMEFN_TABLE, vs)

    @classmethod
    def parse(cls, text: str) -> "TimeFn":
        """Parse the CLI grammar: ``one``, ``affine:a,b``, ``poly:c0,c1,...``,
        ``table:v0,v1,...`` (all entries rational)."""
        text = text.strip()
        if text == _TIMEFN_ONE:
            return cls.one()
        kind, sep, rest = text.partition(":")
        if not sep or not rest:
            raise ParameterError(f"bad time-function spec: {text!r}")
        parts = [as_rational(p) for p in rest.split(",")]
        if kind == _TIMEFN_AFFINE:
            if len(parts) != 2:
                raise ParameterError("affine spec needs exactly a,b")
            return cls.affine(parts[0], parts[1])
        if kind == _TIMEFN_POLY:
            return cls.polynomial(parts)
        if kind == _TIMEFN_TABLE:
            return cls.table(parts)
        raise ParameterError(f"unknown time-function kind: {kind!r}")

    def spec_string(self) -> str:
        """Inverse of :meth:`parse` (canonical form)."""
        if self.kind == _TIMEFN_ONE:
            return _TIMEFN_ONE
        return f"{self.kind}:" + ",".join(format_rational(c) for c in self.coeffs)

    def __call__(self, z: int) -> Fraction:
        if z < 0:
            raise DomainError("time-function domain is z >= 0")
        if self.kind == _TIMEFN_ONE:
            return Fraction(1)
        if self.kind == _TIMEFN_AFFINE:
            return self.coeffs[0] * z + 1
        if self.kind == _TIMEFN_TABLE:
            if z >= len(self.coeffs):
                raise DomainError(
                    f"table time-function has no value at z={z} "
                    f"(last index {len(self.coeffs) - 1}); no extrapolation"
                )
            return self.coeffs[z]
        # polynomial
        value = self._poly_at(z)
        if any(c < 0 for c in self.coeffs) and z > self._checked[0]:
            prev = self._poly_at(self._checked[0])
            for zz in range(self._checked[0] + 1, z + 1):
                cur = self._poly_at(zz)
                if cur < prev:
                    raise ParameterError(
                        f"polynomial time-function decreases between z={zz - 1} and z={zz}"
                    )
                prev = cur
            self._checked[0] = z
        return value

    def _poly_at(self, z: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def eval_time_fn(w: TimeFn, z: int) -> Fraction:
    """Evaluate ``w(z)``.  Table kinds raise DomainError past their range."""
    return w(z)


BRANCH = "branch"
CUT = "cut"
LEAF = "leaf"

_CHILD_COUNT = {BRANCH: 2, CUT: 1, LEAF: 0}


@dataclass(frozen=True)
class BcNode:
    """One tree node: kind, child ids, gap label, cuts strictly above it."""

    kind: str
    children: tuple[int, ...]
    gap: Fraction
    cuts_on_path: int


class BcTree:
    """Arena-backed branch-and-cut tree with materialized gap labels.

    Node 0 is the root; every parent precedes its children in the arena
    (preorder), and gap labels / path cut counts are computed when the
    tree is built so invariants can be checked and exports stay cheap.
    Instances are immutable by convention once constructed.
    """

    __slots__ = ("nodes",)

    def __init__(self, nodes: list[BcNode]):
        self.nodes = tuple(nodes)

    # -- construction ---------------------------------------------------

    @classmethod
    def single_leaf(cls) -> "BcTree":
        return cls([BcNode(LEAF, (), Fraction(0), 0)])

    @classmethod
    def from_shape(cls, params: SvbcParams, shape) -> "BcTree":
        """Materialize a nested-tuple shape into a labeled tree.

        Shapes are ``("leaf",)``, ``("cut", child)`` or
        ``("branch", left, right)``; gap labels and path cut counts are
        derived from ``params``.
        """
        nodes: list[list] = []  # [kind, child-id list, gap, cuts]
        stack = [(shape, Fraction(0), 0, -1)]
        while stack:
            shp, gap, cuts, parent = stack.pop()
            kind = shp[0]
            if kind not in _CHILD_COUNT or len(shp) != 1 + _CHILD_COUNT[kind]:
                raise ParameterError(f"malformed shape node: {shp!r}")
            node_id = len(nodes)
            nodes.append([kind, [], gap, cuts])
            if parent >= 0:
                nodes[parent][1].append(node_id)
            if kind == CUT:
                stack.append((shp[1], gap + params.cut_gain(cuts), cuts + 1, node_id))
            elif kind == BRANCH:
                # push right first so the left child pops (and numbers) first
                stack.append((shp[2], gap + params.r, cuts, node_id))
                stack.append((shp[1], gap + params.ell, cuts, node_id))
        return cls([BcNode(k, tuple(ch), g, z) for k, ch, g, z in nodes])

    # -- basic queries ---------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_cut_nodes(self) -> int:
        return sum(1 for n in self.nodes if n.kind == CUT)

    @property
    def num_branch_nodes(self) -> int:
        return sum(1 for n in self.nodes if n.kind == BRANCH)

    def leaf_ids(self) -> list[int]:
        return [i for i, n in enumerate(self.nodes) if n.kind == LEAF]

    @property
    def branch_depth(self) -> int:
        """Largest number of branch nodes on any root-to-leaf path."""
        depth = [0] * len(self.nodes)
        best = 0
        for i, node in enumerate(self.nodes):
            d = depth[i] + (1 if node.kind == BRANCH else 0)
            for ch in node.children:
                depth[ch] = d
            if node.kind == LEAF:
                best = max(best, depth[i])
        return best

    @property
    def max_cuts_on_path(self) -> int:
        return max(n.cuts_on_path + (1 if n.kind == CUT else 0) for n in self.nodes)

    def to_shape(self):
        def build(i: int):
            node = self.nodes[i]
            return (node.kind, *(build(ch) for ch in node.children))

        return build(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, BcTree) and self.nodes == other.nodes

    def __hash__(self) -> int:
        return hash(self.nodes)

    def __repr__(self) -> str:
        return (
            f"BcTree(nodes={self.num_nodes}, cuts={self.num_cut_nodes}, "
            f"branch_depth={self.branch_depth})"
        )

    # -- validation -------------------------------------------------------

    def validate(self, params: SvbcParams) -> None:
        """Check all structural invariants; raise ParameterError on violation."""
        if not self.nodes:
            raise ParameterError("empty tree")
        if self.nodes[0].gap != 0 or self.nodes[0].cuts_on_path != 0:
            raise ParameterError("root must have gap 0 and no cuts above it")
        seen_child = [False] * len(self.nodes)
        for i, node in enumerate(self.nodes):
            if len(node.children) != _CHILD_COUNT.get(node.kind, -1):
                raise ParameterError(f"node {i}: {node.kind} has wrong child count")
            for ch in node.children:
                if ch <= i or ch >= len(self.nodes) or seen_child[ch]:
                    raise ParameterError(f"node {i}: bad child id {ch}")
                seen_child[ch] = True
            if node.kind == CUT:
                child = self.nodes[node.children[0]]
                if child.gap != node.gap + params.cut_gain(node.cuts_on_path):
                    raise ParameterError(f"node {i}: cut child gap mismatch")
                if child.cuts_on_path != node.cuts_on_path + 1:
                    raise ParameterError(f"node {i}: cut child path count mismatch")
            elif node.kind == BRANCH:
                left, right = (self.nodes[ch] for ch in node.children)
                if left.gap != node.gap + params.ell or right.gap != node.gap + params.r:
                    raise ParameterError(f"node {i}: branch child gap mismatch")
                if (left.cuts_on_path, right.cuts_on_path) != (node.cuts_on_path,) * 2:
                    raise ParameterError(f"node {i}: branch child path count mismatch")
        if any(not seen_child[j] for j in range(1, len(self.nodes))):
            raise ParameterError("arena contains unreachable nodes")


def proves_bound(tree: BcTree, bound: RationalLike) -> bool:
    """True iff every leaf gap is at least ``bound``."""
    bound = as_rational(bound)
    return all(n.gap >= bound for n in tree.nodes if n.kind == LEAF)


def tree_time(tree: BcTree, w: TimeFn) -> Fraction:
    """Total processing time: sum of ``w(cuts_on_path(v))`` over all nodes."""
    total = Fraction(0)
    for node in tree.nodes:
        total += w(node.cuts_on_path)
    return total


def build_cut_and_branch(params: SvbcParams, k: int, depth: int) -> BcTree:
    """A path of ``k`` cut nodes from the root, then a complete branching
    component of the given depth (gap labels follow the decay mode)."""
    if k < 0 or depth < 0:
        raise ParameterError("k and depth must be nonnegative")
    nodes: list[list] = []
    gap = Fraction(0)
    for z in range(k):
        nodes.append([CUT, [len(nodes) + 1], gap, z])
        gap += params.cut_gain(z)
    # complete branch component, level by level
    frontier = [(len(nodes), gap)]
    nodes.append([None, [], gap, k])
    for _ in range(depth):
        next_frontier = []
        for node_id, node_gap in frontier:
            nodes[node_id][0] = BRANCH
            for improvement in (params.ell, params.r):
                child_id = len(nodes)
                nodes[node_id][1].append(child_id)
                nodes.append([None, [], node_gap + improvement, k])
                next_frontier.append((child_id, node_gap + improvement))
        frontier = next_frontier
    for node_id, _ in frontier:
        nodes[node_id][0] = LEAF
    return BcTree([BcNode(kd, tuple(ch), g, z) for kd, ch, g, z in nodes])


def tree_to_dot(tree: BcTree, name: str = "bctree") -> str:
    """Graphviz DOT export: one node per line, label ``g=<gap> z=<cuts>``;
    cut nodes are boxes, branch nodes circles, leaves doublecircles."""
    shapes = {CUT: "box", BRANCH: "circle", LEAF: "doublecircle"}
    lines = [f"digraph {name} {{"]
    for i, node in enumerate(tree.nodes):
        label = f"g={format_rational(node.gap)} z={node.cuts_on_path}"
        lines.append(f'  n{i} [label="{label}", shape={shapes[node.kind]}];')
    for i, node in enumerate(tree.nodes):
        for ch in node.children:
            lines.append(f"  n{i} -> n{ch};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class OptResult:
    """Answer record shared by the exact searches and closed forms."""

    tau: Fraction
    size: int
    num_cuts: int
    branch_depth: int
    witness: BcTree | None = None

    @classmethod
    def from_witness(cls, tree: BcTree, w: TimeFn) -> "OptResult":
        return cls(
            tau=tree_time(tree, w),
            size=tree.num_nodes,
            num_cuts=tree.num_cut_nodes,
            branch_depth=tree.branch_depth,
            witness=tree,
        )
