"""
Partitions, multipartitions, nodes and rim hooks.

Rows, columns and components are 1-based throughout, so a node (i, j, a)
is in the diagram of a multipartition iff 1 <= j <= lambda^(a)_i.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)


class PartitionError(ValueError):
    """A partition, multipartition or node argument violates its contract."""


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing positive parts; trailing zeros are dropped on construction."""
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for k, part in enumerate(parts):
            if part < 0:
                raise PartitionError(f"negative part {part} in {parts}")
            if k and part > parts[k - 1]:
                raise PartitionError(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def row(self, i: int) -> int:
        """Length of row i (0 past the last part)."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def column(self, j: int) -> int:
        """Length of column j, i.e. the conjugate part."""
        if j < 1:
            return 0
        return sum(1 for part in self.parts if part >= j)

    def contains(self, i: int, j: int) -> bool:
        return i >= 1 and 1 <= j <= self.row(i)

    def cells(self) -> Iterator[Tuple[int, int]]:
        for i, part in enumerate(self.parts, start=1):
            for j in range(1, part + 1):
                yield (i, j)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.parts) + ")"


PartitionLike = Union[Partition, Sequence[int]]


def as_partition(value: PartitionLike) -> Partition:
    return value if isinstance(value, Partition) else Partition(tuple(value))


class Node(NamedTuple):
    row: int
    col: int
    comp: int = 1


@dataclass(frozen=True)
class Multipartition:
    """An ordered r-tuple of partitions (r >= 1, empty components allowed)."""
    components: Tuple[Partition, ...]

    def __post_init__(self):
        comps = tuple(as_partition(c) for c in self.components)
        if not comps:
            raise PartitionError("a multipartition needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *components: PartitionLike) -> "Multipartition":
        return cls(tuple(as_partition(c) for c in components))

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    def component(self, a: int) -> Partition:
        if not 1 <= a <= self.r:
            raise PartitionError(f"component {a} out of range 1..{self.r}")
        return self.components[a - 1]

    def contains(self, node: Node) -> bool:
        return 1 <= node.comp <= self.r and self.components[node.comp - 1].contains(node.row, node.col)

    def __contains__(self, node: object) -> bool:
        return isinstance(node, tuple) and self.contains(Node(*node))

    def nodes(self) -> Iterator[Node]:
        for a, part in enumerate(self.components, start=1):
            for i, j in part.cells():
                yield Node(i, j, a)

    def replace(self, a: int, part: PartitionLike) -> "Multipartition":
        self.component(a)
        comps = list(self.components)
        comps[a - 1] = as_partition(part)
        return Multipartition(tuple(comps))

    def to_lists(self) -> List[List[int]]:
        return [list(c.parts) for c in self.components]

    def literal(self) -> str:
        """Command-line literal: components joined by '|', parts by ','."""
        return "|".join(",".join(str(x) for x in c.parts) for c in self.components)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class RimHook:
    """The rim hook r^lambda_x cut out by the node ``origin``."""
    origin: Node
    cells: FrozenSet[Node]
    foot: Node
    hand: Node
    length: int
    leg: int


class Dominance(str, Enum):
    GREATER = "greater"
    EQUAL = "equal"
    LESS = "less"
    INCOMPARABLE = "incomparable"


def conjugate(sigma: PartitionLike) -> Partition:
    sigma = as_partition(sigma)
    return Partition(tuple(sigma.column(j) for j in range(1, sigma.row(1) + 1)))


def hook_length(sigma: PartitionLike, i: int, j: int) -> int:
    sigma = as_partition(sigma)
    if not sigma.contains(i, j):
        raise PartitionError(f"({i},{j}) is not a node of {sigma}")
    return sigma.row(i) - j + sigma.column(j) - i + 1


def _require_node(lam: Multipartition, x: Node) -> None:
    if not lam.contains(x):
        raise PartitionError(f"node {tuple(x)} is not in the diagram of {lam}")


def rim_hook(lam: Multipartition, x: Node) -> RimHook:
    x = Node(*x)
    _require_node(lam, x)
    part = lam.component(x.comp)
    foot_row = part.column(x.col)
    cells = []
    for k in range(x.row, foot_row + 1):
        # (k+1, l+1) outside the diagram means l >= lambda_{k+1}
        for l in range(max(x.col, part.row(k + 1)), part.row(k) + 1):
            cells.append(Node(k, l, x.comp))
    return RimHook(
        origin=x,
        cells=frozenset(cells),
        foot=Node(foot_row, x.col, x.comp),
        hand=Node(x.row, part.row(x.row), x.comp),
        length=len(cells),
        leg=foot_row - x.row,
    )


def unwrap(lam: Multipartition, x: Node) -> Multipartition:
    """Remove the rim hook r^lambda_x from the diagram."""
    x = Node(*x)
    _require_node(lam, x)
    part = lam.component(x.comp)
    rows = list(part.parts)
    for k in range(x.row, part.column(x.col) + 1):
        rows[k - 1] = max(x.col, part.row(k + 1)) - 1
    return lam.replace(x.comp, Partition(tuple(rows)))


def _wrap_partition(nu: Partition, m: int, h: int) -> Optional[Partition]:
    # the hand ends row `top`; every lower row of the strip reaches one past the row above
    top = nu.column(m) + 1
    added = m - nu.row(top)
    if added > h:
        return None
    rows = list(nu.parts) + [0] * (top + h - len(nu.parts))
    rows[top - 1] = m
    k = top
    while added < h:
        k += 1
        added += nu.row(k - 1) + 1 - nu.row(k)
        if added > h:
            return None
        rows[k - 1] = nu.row(k - 1) + 1
    return Partition(tuple(rows))


def wrap_with_hand_in_column(nu: Multipartition, a: int, m: int, h: int) -> Optional[Multipartition]:
    """
    Wrap an h-rim hook onto component a of nu so that its hand lies in column m.

    Returns None when no such rim hook exists.
    """
    if h < 1 or m < 1:
        raise PartitionError(f"hook length and column must be positive, got h={h}, m={m}")
    wrapped = _wrap_partition(nu.component(a), m, h)
    return None if wrapped is None else nu.replace(a, wrapped)


def wraps(nu: PartitionLike, h: int) -> List[Partition]:
    """Every partition obtained by wrapping an h-rim hook onto nu, by hand column."""
    nu = as_partition(nu)
    found = []
    for m in range(1, nu.row(1) + h + 1):
        wrapped = _wrap_partition(nu, m, h)
        if wrapped is not None:
            found.append(wrapped)
    return found


def removable_nodes(lam: Multipartition) -> List[Node]:
    nodes = []
    for a, part in enumerate(lam.components, start=1):
        for i in range(1, len(part) + 1):
            if part.row(i) > part.row(i + 1):
                nodes.append(Node(i, part.row(i), a))
    return nodes


def addable_nodes(lam: Multipartition) -> List[Node]:
    nodes = []
    for a, part in enumerate(lam.components, start=1):
        for i in range(1, len(part) + 2):
            if i == 1 or part.row(i - 1) > part.row(i):
                nodes.append(Node(i, part.row(i) + 1, a))
    return nodes


def require_same_shape(lam: Multipartition, mu: Multipartition) -> None:
    if lam.r != mu.r:
        raise PartitionError(f"component counts differ: {lam.r} != {mu.r}")
    if lam.size != mu.size:
        raise PartitionError(f"sizes differ: {lam.size} != {mu.size}")


def dominance_compare(lam: Multipartition, mu: Multipartition) -> Dominance:
    require_same_shape(lam, mu)
    if lam == mu:
        return Dominance.EQUAL
    geq = leq = True
    before_l = before_m = 0
    for left, right in zip(lam.components, mu.components):
        run_l, run_m = before_l, before_m
        for i in range(1, max(len(left), len(right), 1) + 1):
            run_l += left.row(i)
            run_m += right.row(i)
            if run_l < run_m:
                geq = False
            elif run_l > run_m:
                leq = False
        before_l += left.size
        before_m += right.size
    if geq:
        return Dominance.GREATER
    if leq:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> Tuple[Partition, ...]:
    """Partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise PartitionError(f"n must be non-negative, got {n}")

    def descend(remaining: int, largest: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in descend(remaining - first, first):
                yield (first,) + rest

    return tuple(Partition(parts) for parts in descend(n, n))


def compositions(n: int, r: int) -> Iterator[Tuple[int, ...]]:
    """Compositions of n into r non-negative parts, (n,0,...,0) first."""
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, r - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_multipartitions(r: int, n: int) -> Tuple[Multipartition, ...]:
    """
    All of Lambda^+_{r,n} in the fixed order used by every downstream report.

    Compositions of n come first-component-largest; inside a composition the
    components vary as an odometer over reverse-lexicographic partitions.
    """
    if r < 1 or n < 0:
        raise PartitionError(f"need r >= 1 and n >= 0, got r={r}, n={n}")
    found = []
    for sizes in compositions(n, r):
        for comps in product(*(enumerate_partitions(k) for k in sizes)):
            found.append(Multipartition(tuple(comps)))
    logger.debug(f"Enumerated {len(found)} multipartitions for r={r}, n={n}")
    return tuple(found)


@lru_cache(maxsize=None)
def multipartition_index(r: int, n: int) -> Dict[Multipartition, int]:
    return {lam: k for k, lam in enumerate(enumerate_multipartitions(r, n))}


def parse_multipartition(text: str, r: Optional[int] = None) -> Multipartition:
    """Parse the literal syntax ``4,1,1|2|3,2,1``; an empty component is the empty string."""
    comps = []
    for piece in str(text).strip().split("|"):
        piece = piece.strip()
        if not piece:
            comps.append(Partition())
            continue
        try:
            parts = tuple(int(token) for token in piece.split(","))
        except ValueError:
            raise PartitionError(f"malformed component {piece!r} in {text!r}") from None
        if any(part <= 0 for part in parts):
            raise PartitionError(f"parts must be positive in {text!r}")
        comps.append(Partition(parts))
    lam = Multipartition(tuple(comps))
    if r is not None and lam.r != r:
        raise PartitionError(f"expected {r} components, got {lam.r} in {text!r}")
    return lam


def multipartitions_from_lists(rows: Iterable[Sequence[Sequence[int]]]) -> List[Multipartition]:
    """Inverse of ``Multipartition.to_lists`` applied elementwise."""
    return [Multipartition(tuple(Partition(tuple(c)) for c in comps)) for comps in rows]
