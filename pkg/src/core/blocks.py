"""
Block partitions of Lambda^+_{r,n}.

Two independent routes: equality of content vectors, and connectivity under
nonzero Jantzen coefficients. ``verify_theorem`` compares them cell by cell
and ``theorem_grid`` lays out the acceptance sweep.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple, Union

from src.core.abacus import e_core
from src.core.orders import INF, Order, is_finite
from src.core.partition import Multipartition, enumerate_multipartitions, enumerate_partitions, multipartition_index
from src.core.jantzen import jantzen_matrix
from src.core.residue import Regime, RegimeError, content_vector

logger = logging.getLogger(__name__)

DEFAULT_E_LIST: Tuple[Order, ...] = (2, 3, 4, INF)
DEFAULT_P_LIST: Tuple[Order, ...] = (2, 3, INF)
INFINITE_CHARGE_WINDOW = range(-2, 3)


class UnionFind:
    """Disjoint sets over 0..size-1; the root of every set is its smallest member."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        i, j = self.find(i), self.find(j)
        if i != j:
            self.parent[max(i, j)] = min(i, j)

    def partition(self) -> "BlockPartition":
        return BlockPartition.from_labels([self.find(i) for i in range(len(self.parent))])


@dataclass(frozen=True)
class BlockPartition:
    """Classes of indices, each sorted, ordered by their smallest member."""
    classes: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "BlockPartition":
        grouped: Dict[Hashable, List[int]] = {}
        for index, label in enumerate(labels):
            grouped.setdefault(label, []).append(index)
        return cls(tuple(tuple(members) for members in grouped.values()))

    @property
    def representatives(self) -> Tuple[int, ...]:
        return tuple(members[0] for members in self.classes)

    def labels(self) -> List[int]:
        size = sum(len(members) for members in self.classes)
        labels = [0] * size
        for k, members in enumerate(self.classes):
            for index in members:
                labels[index] = k
        return labels

    def same_block(self, i: int, j: int) -> bool:
        labels = self.labels()
        return labels[i] == labels[j]

    def __len__(self) -> int:
        return len(self.classes)


def blocks_by_residue(regime: Regime, n: int) -> BlockPartition:
    return BlockPartition.from_labels([content_vector(lam, regime) for lam in enumerate_multipartitions(regime.r, n)])


def blocks_by_jantzen(regime: Regime, n: int, audit: bool = True, seed: int = 0) -> BlockPartition:
    matrix = jantzen_matrix(regime, n, audit=audit, seed=seed)
    sets = UnionFind(len(matrix.multipartitions))
    for i, j in matrix.entries:
        sets.union(i, j)
    return sets.partition()


def first_witness(left: BlockPartition, right: BlockPartition) -> Optional[Tuple[int, int]]:
    """First pair (i < j) in enumeration order that one partition joins and the other separates."""
    a, b = left.labels(), right.labels()
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if (a[i] == a[j]) != (b[i] == b[j]):
                return (i, j)
    return None


@dataclass(frozen=True)
class TheoremReport:
    regime: Regime
    n: int
    by_residue: BlockPartition
    by_jantzen: BlockPartition
    witness: Optional[Tuple[int, int]] = None

    @property
    def equal(self) -> bool:
        return self.by_residue == self.by_jantzen

    def witness_pair(self) -> Optional[Tuple[Multipartition, Multipartition]]:
        if self.witness is None:
            return None
        multis = enumerate_multipartitions(self.regime.r, self.n)
        return multis[self.witness[0]], multis[self.witness[1]]


def verify_theorem(regime: Regime, n: int, audit: bool = True, seed: int = 0) -> TheoremReport:
    by_residue = blocks_by_residue(regime, n)
    by_jantzen = blocks_by_jantzen(regime, n, audit=audit, seed=seed)
    witness = None if by_residue == by_jantzen else first_witness(by_residue, by_jantzen)
    report = TheoremReport(regime, n, by_residue, by_jantzen, witness)
    if report.equal:
        logger.info(f"Verified {regime.describe()} n={n}: {len(by_residue)} blocks")
    else:
        logger.warning(f"Block mismatch at {regime.describe()} n={n}, witness {report.witness_pair()}")
    return report


def _charge_vectors(e: Order, r: int) -> Iterator[Tuple[int, ...]]:
    window = range(int(e)) if is_finite(e) else INFINITE_CHARGE_WINDOW
    return product(window, repeat=r)


def _valid(case: int, e: Order, p: Order, r: int, charges: Tuple[int, ...] = ()) -> Optional[Regime]:
    try:
        return Regime(case, e, p, r, charges)
    except RegimeError:
        return None


def theorem_grid(
    r_max: int = 3,
    n_max: int = 6,
    e_list: Sequence[Order] = DEFAULT_E_LIST,
    p_list: Sequence[Order] = DEFAULT_P_LIST,
    cases: Sequence[int] = (1, 2, 3, 4, 5),
) -> List[Tuple[Regime, int]]:
    """
    Acceptance cells in a fixed order: case, r, e, p, charges, n.

    Cases 2-4 need q = 1, so they run at e = p for every p that also appears
    in e_list. Charges range over [0, e), or over [-2, 2] when e = inf.
    """
    regimes: List[Regime] = []
    for case in cases:
        ranks = [1] if case == 2 else range(2, r_max + 1) if case in (3, 4, 5) else range(1, r_max + 1)
        for r in ranks:
            if case in (2, 3, 4):
                regimes.extend(
                    regime for regime in (_valid(case, p, p, r) for p in p_list if p in e_list) if regime
                )
                continue
            for e in e_list:
                for p in p_list:
                    if case == 5:
                        regime = _valid(5, e, p, r)
                        if regime:
                            regimes.append(regime)
                        continue
                    if _valid(1, e, p, r, (0,) * r) is None:
                        continue
                    regimes.extend(Regime(1, e, p, r, charges) for charges in _charge_vectors(e, r))
    return [(regime, n) for regime in regimes for n in range(1, n_max + 1)]


def _verify_cell(args: Tuple[Regime, int, bool, int]) -> TheoremReport:
    regime, n, audit, seed = args
    return verify_theorem(regime, n, audit=audit, seed=seed)


def verify_sweep(
    cells: Sequence[Tuple[Regime, int]], workers: int = 1, audit: bool = True, seed: int = 0
) -> List[TheoremReport]:
    """Reports in grid order; with workers > 1 cells run in a process pool."""
    jobs = [(regime, n, audit, seed) for regime, n in cells]
    if workers <= 1:
        return [_verify_cell(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_cell, jobs, chunksize=max(1, len(jobs) // (workers * 8))))


def cross_check_isomorphic_cases(p: Order, r: int, n: int) -> bool:
    """Cases 3 and 4 at the same (p, r, n) give identical block partitions."""
    three, four = Regime(3, p, p, r), Regime(4, p, p, r)
    return (blocks_by_residue(three, n) == blocks_by_residue(four, n)
            and blocks_by_jantzen(three, n, audit=False) == blocks_by_jantzen(four, n, audit=False))


def single_component_class(lam: Multipartition, a: int, e: Order) -> List[Multipartition]:
    """Multipartitions equal to lambda off component a, with the same e-core in component a."""
    core = e_core(lam.component(a), 0, e)
    return [
        lam.replace(a, part)
        for part in enumerate_partitions(lam.component(a).size)
        if e_core(part, 0, e) == core
    ]


@dataclass(frozen=True)
class ZeroParameter:
    def describe(self) -> str:
        return "0"


@dataclass(frozen=True)
class OrbitParameter:
    """Q = label * q^exponent; distinct labels lie in distinct q-orbits."""
    label: str
    exponent: int = 0

    def describe(self) -> str:
        return f"{self.label}:{self.exponent}"


Parameter = Union[ZeroParameter, OrbitParameter]


@dataclass(frozen=True)
class ParameterSystem:
    parameters: Tuple[Parameter, ...]

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(self.parameters))
        if not self.parameters:
            raise RegimeError("a parameter system needs at least one parameter")

    @classmethod
    def parse(cls, text: str) -> "ParameterSystem":
        """``A:0,B:0,A:1,0``: label:exponent pairs, ``0`` for a zero parameter."""
        params: List[Parameter] = []
        for token in text.split(","):
            token = token.strip()
            if token == "0":
                params.append(ZeroParameter())
                continue
            label, _, exponent = token.partition(":")
            if not label:
                raise RegimeError(f"malformed parameter {token!r}")
            try:
                params.append(OrbitParameter(label, int(exponent or 0)))
            except ValueError:
                raise RegimeError(f"malformed exponent in {token!r}") from None
        return cls(tuple(params))

    @property
    def r(self) -> int:
        return len(self.parameters)

    def groups(self) -> List[Tuple[int, ...]]:
        """1-based components grouped by q-orbit, in order of first appearance."""
        grouped: Dict[Hashable, List[int]] = {}
        for a, param in enumerate(self.parameters, start=1):
            key = ("zero",) if isinstance(param, ZeroParameter) else ("orbit", param.label)
            grouped.setdefault(key, []).append(a)
        return [tuple(members) for members in grouped.values()]

    def restrict(self, group: Sequence[int]) -> "ParameterSystem":
        return ParameterSystem(tuple(self.parameters[a - 1] for a in group))

    def describe(self) -> str:
        return ",".join(param.describe() for param in self.parameters)


def morita_components(system: ParameterSystem, lam: Multipartition) -> List[Tuple[ParameterSystem, Multipartition]]:
    if lam.r != system.r:
        raise RegimeError(f"multipartition has {lam.r} components, parameter system has {system.r}")
    return [
        (system.restrict(group), Multipartition(tuple(lam.component(a) for a in group)))
        for group in system.groups()
    ]


def sub_regime(system: ParameterSystem, e: Order, p: Order) -> Regime:
    """
    The regime of one q-orbit group. A group of a single parameter is the
    r = 1 algebra, which does not see the parameter's value.
    """
    params = system.parameters
    zero = isinstance(params[0], ZeroParameter)
    if system.r == 1:
        return Regime.derive(e, p, 1)
    if zero:
        return Regime.derive(e, p, system.r, zero=True)
    return Regime.derive(e, p, system.r, charges=[param.exponent for param in params])


def blocks_by_morita(
    system: ParameterSystem, e: Order, p: Order, n: int, method: str = "residue"
) -> BlockPartition:
    """
    Blocks of the full system from its orbit groups: lambda and mu share a
    block iff every group carries the same size and the group pieces share
    a block of that group's regime.
    """
    if method not in ("residue", "jantzen"):
        raise ValueError(f"method must be 'residue' or 'jantzen', got {method!r}")
    regimes = [sub_regime(system.restrict(group), e, p) for group in system.groups()]
    cache: Dict[Tuple[int, int], List[int]] = {}

    def block_of(k: int, piece: Multipartition) -> int:
        key = (k, piece.size)
        if key not in cache:
            regime = regimes[k]
            if method == "residue":
                cache[key] = blocks_by_residue(regime, piece.size).labels()
            else:
                cache[key] = blocks_by_jantzen(regime, piece.size, audit=False).labels()
        return cache[key][multipartition_index(regimes[k].r, piece.size)[piece]]

    labels = []
    for lam in enumerate_multipartitions(system.r, n):
        pieces = morita_components(system, lam)
        labels.append(tuple((piece.size, block_of(k, piece)) for k, (_, piece) in enumerate(pieces)))
    return BlockPartition.from_labels(labels)
