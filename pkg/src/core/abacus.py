"""
Abacus displays of partitions.

A partition lambda with charge c is stored as (lambda, c, e); its bead set
B = {lambda_i - i + c : i >= 1} is derived on demand. For finite e the
position z sits on runner z mod e in row z // e. For e = inf every position
is its own runner in row 0.

Moving a bead from z to z + h wraps an h-rim hook whose hand has charged
content z + h and whose foot has charged content z + 1.
"""
import logging
from dataclasses import dataclass
from itertools import count
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.orders import INF, Order, format_order, is_finite
from src.core.partition import (
    Multipartition,
    Node,
    Partition,
    PartitionLike,
    as_partition,
    hook_length,
    unwrap,
)

logger = logging.getLogger(__name__)

# positions shown for e = inf, where the rows window does not apply
INFINITE_WINDOW = (-8, 7)


class AbacusError(ValueError):
    """An abacus display or bead move violates its contract."""


def check_e(e: Order) -> None:
    if is_finite(e) and (int(e) != e or e < 2):
        raise AbacusError(f"e must be an integer >= 2 or inf, got {e}")


def beta_numbers(lam: PartitionLike, charge: int = 0, length: Optional[int] = None) -> List[int]:
    """The first ``length`` beta-numbers, largest first."""
    lam = as_partition(lam)
    if length is None:
        length = len(lam)
    if length < len(lam):
        raise AbacusError(f"need at least {len(lam)} beta-numbers for {lam}, asked for {length}")
    return [lam.row(i) - i + charge for i in range(1, length + 1)]


def _partition_from_beads(beads: Sequence[int], charge: int) -> Partition:
    ordered = sorted(beads, reverse=True)
    if len(set(ordered)) != len(ordered):
        raise AbacusError(f"duplicate bead positions in {list(beads)}")
    parts = [b + i - charge for i, b in enumerate(ordered, start=1)]
    if parts and parts[-1] < 0:
        raise AbacusError(f"bead set {ordered} with charge {charge} is not filled below its last bead")
    return Partition(tuple(parts))


@dataclass(frozen=True)
class AbacusDisplay:
    partition: Partition
    charge: int = 0
    e: Order = INF

    def __post_init__(self):
        object.__setattr__(self, "partition", as_partition(self.partition))
        check_e(self.e)

    def beads(self, length: Optional[int] = None) -> List[int]:
        return beta_numbers(self.partition, self.charge, length)

    def bead_set(self, floor: int) -> frozenset:
        """Every bead at a position >= floor (plus possibly a few below)."""
        return frozenset(self.beads(max(len(self.partition), self.charge - floor)))

    def has_bead(self, z: int) -> bool:
        return z in self.bead_set(z)

    def locate(self, z: int) -> Tuple[int, int]:
        """(row, runner) of position z."""
        if not is_finite(self.e):
            return (0, z)
        return divmod(z, int(self.e))


@dataclass(frozen=True)
class MultiAbacus:
    displays: Tuple[AbacusDisplay, ...]

    @classmethod
    def from_multipartition(cls, lam: Multipartition, charges: Sequence[int], e: Order) -> "MultiAbacus":
        if len(charges) != lam.r:
            raise AbacusError(f"need {lam.r} charges, got {len(charges)}")
        return cls(tuple(AbacusDisplay(part, c, e) for part, c in zip(lam.components, charges)))

    @property
    def charges(self) -> Tuple[int, ...]:
        return tuple(d.charge for d in self.displays)

    def to_multipartition(self) -> Multipartition:
        return Multipartition(tuple(d.partition for d in self.displays))


def to_abacus(lam: PartitionLike, charge: int = 0, e: Order = INF) -> AbacusDisplay:
    return AbacusDisplay(as_partition(lam), charge, e)


def from_abacus(display: Union[AbacusDisplay, Sequence[int]], charge: Optional[int] = None) -> Partition:
    """
    Recover the partition of a display.

    A raw bead list is read as the head of the bead set; positions below the
    last listed bead continue c - k, c - k - 1, ... for a head of k beads.
    """
    if isinstance(display, AbacusDisplay):
        return display.partition
    if charge is None:
        raise AbacusError("a raw bead list needs its charge")
    return _partition_from_beads(list(display), charge)


def move_bead(display: AbacusDisplay, source: int, target: int) -> AbacusDisplay:
    length = max(len(display.partition), display.charge - min(source, target) + 1)
    beads = display.beads(length)
    if source not in beads:
        raise AbacusError(f"no bead at position {source}")
    if target in beads:
        raise AbacusError(f"position {target} already has a bead")
    moved = [b for b in beads if b != source] + [target]
    return AbacusDisplay(_partition_from_beads(moved, display.charge), display.charge, display.e)


def e_core(lam: PartitionLike, charge: int = 0, e: Order = INF) -> Partition:
    """Push every bead as high as it goes on its runner."""
    lam = as_partition(lam)
    check_e(e)
    if not is_finite(e):
        return lam
    e = int(e)
    head = np.array(beta_numbers(lam, charge), dtype=np.int64)
    floor = charge - len(lam)
    per_runner = np.bincount(np.mod(head, e), minlength=e) if len(head) else np.zeros(e, dtype=np.int64)
    pushed: List[int] = []
    for runner in range(e):
        first = floor + (runner - floor) % e
        pushed.extend(first + e * k for k in range(int(per_runner[runner])))
    return _partition_from_beads(pushed, charge)


def e_weight(lam: PartitionLike, e: Order) -> int:
    lam = as_partition(lam)
    if not is_finite(e):
        return 0
    return (lam.size - e_core(lam, 0, e).size) // int(e)


def is_core(lam: PartitionLike, e: Order) -> bool:
    return e_weight(lam, e) == 0


def multicore(lam: Multipartition, charges: Sequence[int], e: Order) -> Multipartition:
    if len(charges) != lam.r:
        raise AbacusError(f"need {lam.r} charges, got {len(charges)}")
    return Multipartition(tuple(e_core(part, c, e) for part, c in zip(lam.components, charges)))


def multiweight(lam: Multipartition, e: Order) -> int:
    return sum(e_weight(part, e) for part in lam.components)


def is_multicore(lam: Multipartition, e: Order) -> bool:
    return multiweight(lam, e) == 0


def remove_rim_hooks_randomly(lam: PartitionLike, e: int, rng: np.random.Generator) -> Partition:
    """Unwrap e-rim hooks chosen at random until none is left."""
    current = as_partition(lam)
    while True:
        nodes = [(i, j) for i, j in current.cells() if hook_length(current, i, j) == e]
        if not nodes:
            return current
        i, j = nodes[int(rng.integers(len(nodes)))]
        current = unwrap(Multipartition.of(current), Node(i, j, 1)).component(1)


def _lowest_bead_on_runner(display: AbacusDisplay, runner: int) -> Tuple[int, frozenset, int]:
    e = int(display.e)
    length = len(display.partition) + e + 1
    floor = display.charge - length
    beads = frozenset(display.beads(length))
    return max(b for b in beads if b % e == runner), beads, floor


def _runner_move(display: AbacusDisplay, source: int, target: int) -> AbacusDisplay:
    """Lowest bead of runner ``source`` to the first gap of runner ``target``."""
    e = int(display.e)
    lowest, beads, floor = _lowest_bead_on_runner(display, source)
    gap = next(z for z in count(floor + (target - floor) % e, e) if z not in beads)
    return move_bead(display, lowest, gap)


def _check_runner(runner: int, e: int) -> None:
    if not 0 <= runner < e:
        raise AbacusError(f"runner {runner} out of range 0..{e - 1}")


def s_move(
    lam: Multipartition, a: int, b: int, i: int, j: int, charges: Sequence[int], e: Order
) -> Multipartition:
    """
    The s-move on a multicore: a bead goes from runner i to runner j in
    component a and from runner j to runner i in component b.

    For e = inf runners are positions, so component a needs a bead at i and a
    gap at j, and component b the reverse.
    """
    abacus = MultiAbacus.from_multipartition(lam, charges, e)
    if not is_multicore(lam, e):
        raise AbacusError(f"s-moves act on multicores, {lam} is not an {format_order(e)}-multicore")
    if a == b or i == j:
        raise AbacusError(f"s-move needs distinct components and runners, got a={a}, b={b}, i={i}, j={j}")
    # range checks
    lam.component(a)
    lam.component(b)
    first, second = abacus.displays[a - 1], abacus.displays[b - 1]
    if is_finite(e):
        _check_runner(i, int(e))
        _check_runner(j, int(e))
        first, second = _runner_move(first, i, j), _runner_move(second, j, i)
    else:
        if not (first.has_bead(i) and not first.has_bead(j)):
            raise AbacusError(f"component {a} needs a bead at {i} and a gap at {j}")
        if not (second.has_bead(j) and not second.has_bead(i)):
            raise AbacusError(f"component {b} needs a bead at {j} and a gap at {i}")
        first, second = move_bead(first, i, j), move_bead(second, j, i)
    moved = lam.replace(a, first.partition).replace(b, second.partition)
    assert is_multicore(moved, e), f"s-move left the multicores: {moved}"
    return moved


def t_move(lam: Multipartition, a: int, i: int, w: int, charges: Sequence[int], e: Order) -> Multipartition:
    """
    Move the lowest bead of runner i in component a down w rows (w e-hooks wrapped).

    With beads at lambda_j - j + c, a bead leaving runner i adds a node of
    charged content i + 1, so every wrapped hook has its foot on residue
    i + 1 and its hand on residue i.
    """
    if not is_finite(e):
        raise AbacusError("t-moves need a finite e")
    if w < 0:
        raise AbacusError(f"w must be non-negative, got {w}")
    _check_runner(i, int(e))
    lam.component(a)
    display = MultiAbacus.from_multipartition(lam, charges, e).displays[a - 1]
    if w == 0:
        return lam
    lowest, _, _ = _lowest_bead_on_runner(display, i)
    moved = move_bead(display, lowest, lowest + w * int(e))
    return lam.replace(a, moved.partition)


def _render_display(a: int, display: AbacusDisplay, rows: int, top_row: int) -> str:
    if is_finite(display.e):
        e = int(display.e)
        runners = list(range(e))
        row_labels = list(range(top_row, top_row - rows, -1))
        positions = np.array([[x * e + y for y in runners] for x in row_labels], dtype=np.int64)
    else:
        runners = list(range(INFINITE_WINDOW[0], INFINITE_WINDOW[1] + 1))
        row_labels = [0]
        positions = np.array([runners], dtype=np.int64)
    beads = display.bead_set(int(positions.min()))
    grid = np.isin(positions, np.fromiter(beads, dtype=np.int64, count=len(beads)))
    width = max(len(str(y)) for y in runners)

    lines = [f"component {a} (charge {display.charge}, e={format_order(display.e)})"]
    lines.append("    | " + " ".join(str(y).rjust(width) for y in runners))
    for k, x in enumerate(row_labels):
        cells = " ".join(("-" if grid[k, col] else ".").rjust(width) for col in range(len(runners)))
        lines.append(f"{x:>3} | {cells}")
    return "\n".join(lines)


def render_ascii(abacus: MultiAbacus, rows: int = 7, top_row: int = 2) -> str:
    """
    Fixed-width picture of every component, '-' for a bead and '.' for a gap.

    Rows run from ``top_row`` down to ``top_row - rows + 1``; runners are columns.
    """
    if rows < 1:
        raise AbacusError(f"rows must be >= 1, got {rows}")
    blocks = [_render_display(a, d, rows, top_row) for a, d in enumerate(abacus.displays, start=1)]
    return "\n\n".join(blocks) + "\n"
