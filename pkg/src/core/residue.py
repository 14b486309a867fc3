"""
Parameter regimes and residue combinatorics.

Five regimes cover every block question once the parameters have been
split into q-orbits:

    case 1  q != 1, Q_a = q^{c_a}        residue (j - i + c_a) mod e
    case 2  r = 1, q = 1                  residue (j - i) mod p
    case 3  r > 1, q = 1, Q_a = 1         constant residue
    case 4  r > 1, q = 1, Q_a = 0         constant residue
    case 5  r > 1, q != 1, Q_a = 0        constant residue

q = 1 exactly when e = p is finite; e = p = inf is read as q generic.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.abacus import is_multicore, multiweight
from src.core.orders import Order, divides, format_order, is_finite, is_prime, order_to_json, p_adic_exponent
from src.core.partition import (
    Multipartition,
    Node,
    PartitionLike,
    addable_nodes,
    as_partition,
    enumerate_multipartitions,
    hook_length,
    removable_nodes,
    require_same_shape,
)

logger = logging.getLogger(__name__)

BULLET = "•"

Residue = Union[int, str]

CASES = {
    1: "q != 1 and Q_a = q^c_a",
    2: "r = 1 and q = 1",
    3: "r > 1, q = 1 and every Q_a = 1",
    4: "r > 1, q = 1 and every Q_a = 0",
    5: "r > 1, q != 1 and every Q_a = 0",
}


class RegimeError(ValueError):
    """A regime is inconsistent, or an operation was asked of the wrong regime."""


@dataclass(frozen=True)
class Regime:
    case: int
    e: Order
    p: Order
    r: int = 1
    charges: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "charges", tuple(int(c) for c in self.charges))
        if self.case not in CASES:
            raise RegimeError(f"case must be one of 1..5, got {self.case}")
        if self.r < 1:
            raise RegimeError(f"r must be >= 1, got {self.r}")
        if is_finite(self.e) and (int(self.e) != self.e or self.e < 2):
            raise RegimeError(f"e must be an integer >= 2 or inf, got {self.e}")
        if is_finite(self.p) and not (int(self.p) == self.p and is_prime(int(self.p))):
            raise RegimeError(f"p must be a prime or inf, got {self.p}")

        if self.case == 1:
            if len(self.charges) != self.r:
                raise RegimeError(f"case 1 requires {self.r} charges, got {len(self.charges)}")
        elif self.charges:
            raise RegimeError(f"charges only apply to case 1, got case {self.case}")

        if self.case == 2 and self.r != 1:
            raise RegimeError("case 2 requires r=1")
        if self.case in (3, 4, 5) and self.r == 1:
            raise RegimeError(f"case {self.case} requires r>1")
        if self.case in (2, 3, 4) and self.e != self.p:
            raise RegimeError(f"case {self.case} requires e=p")
        if self.case in (1, 5) and is_finite(self.e) and is_finite(self.p):
            if self.e == self.p:
                raise RegimeError(f"case {self.case} requires e!=p (e=p means q=1)")
            if int(self.e) % int(self.p) == 0:
                raise RegimeError(f"case {self.case} requires p not dividing e")

    @classmethod
    def derive(
        cls, e: Order, p: Order, r: int, charges: Optional[Sequence[int]] = None, zero: bool = False
    ) -> "Regime":
        """Pick the case from (e, p, r) and whether the parameters are all zero."""
        q_is_one = is_finite(e) and e == p
        if r == 1:
            if q_is_one:
                return cls(2, e, p, 1)
            return cls(1, e, p, 1, tuple(charges) if charges else (0,))
        if zero:
            return cls(4 if q_is_one else 5, e, p, r)
        if q_is_one:
            return cls(3, e, p, r)
        return cls(1, e, p, r, tuple(charges) if charges else (0,) * r)

    @property
    def epsilon(self) -> int:
        return 1 if self.case in (4, 5) else 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "case": self.case,
            "e": order_to_json(self.e),
            "p": order_to_json(self.p),
            "r": self.r,
            "charges": list(self.charges),
        }

    def describe(self) -> str:
        text = f"case={self.case} e={format_order(self.e)} p={format_order(self.p)} r={self.r}"
        if self.charges:
            text += " charges=" + ",".join(str(c) for c in self.charges)
        return text


def residue(x: Node, regime: Regime) -> Residue:
    x = Node(*x)
    if not 1 <= x.comp <= regime.r:
        raise RegimeError(f"component {x.comp} out of range 1..{regime.r}")
    if regime.case == 1:
        value = x.col - x.row + regime.charges[x.comp - 1]
        return value % int(regime.e) if is_finite(regime.e) else value
    if regime.case == 2:
        value = x.col - x.row
        return value % int(regime.p) if is_finite(regime.p) else value
    return BULLET


@dataclass(frozen=True)
class ContentVector:
    """Sparse residue counts, keys sorted."""
    counts: Tuple[Tuple[Residue, int], ...] = ()

    @classmethod
    def from_counter(cls, counter: Counter) -> "ContentVector":
        return cls(tuple(sorted((f, c) for f, c in counter.items() if c)))

    def __getitem__(self, f: Residue) -> int:
        for key, value in self.counts:
            if key == f:
                return value
        return 0

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_dict(self) -> Dict[Residue, int]:
        return dict(self.counts)


def content_vector(lam: Multipartition, regime: Regime) -> ContentVector:
    if lam.r != regime.r:
        raise RegimeError(f"multipartition has {lam.r} components, regime has r={regime.r}")
    return ContentVector.from_counter(Counter(residue(x, regime) for x in lam.nodes()))


def residue_equivalent(lam: Multipartition, mu: Multipartition, regime: Regime) -> bool:
    require_same_shape(lam, mu)
    return content_vector(lam, regime) == content_vector(mu, regime)


@lru_cache(maxsize=256)
def residue_classes(regime: Regime, n: int) -> Dict[ContentVector, Tuple[Multipartition, ...]]:
    """Members of Lambda^+_{r,n} grouped by content vector, in enumeration order."""
    groups: Dict[ContentVector, List[Multipartition]] = {}
    for lam in enumerate_multipartitions(regime.r, n):
        groups.setdefault(content_vector(lam, regime), []).append(lam)
    logger.debug(f"{len(groups)} residue classes for {regime.describe()}, n={n}")
    return {key: tuple(members) for key, members in groups.items()}


def _require_fayers_regime(regime: Regime) -> int:
    if regime.case != 1:
        raise RegimeError(f"needs case 1, got case {regime.case}")
    if not is_finite(regime.e):
        raise RegimeError("needs a finite e")
    return int(regime.e)


@dataclass(frozen=True)
class Hub:
    deltas: Tuple[int, ...]

    def __getitem__(self, f: int) -> int:
        return self.deltas[f]


def hub(lam: Multipartition, regime: Regime) -> Hub:
    """delta_f = #removable f-nodes - #addable f-nodes, summed over components."""
    e = _require_fayers_regime(regime)
    if lam.r != regime.r:
        raise RegimeError(f"expected {regime.r} components, got {lam.r}")
    deltas = np.zeros(e, dtype=np.int64)
    for x in removable_nodes(lam):
        deltas[residue(x, regime)] += 1
    for x in addable_nodes(lam):
        deltas[residue(x, regime)] -= 1
    return Hub(tuple(int(d) for d in deltas))


def fayers_weight(lam: Multipartition, regime: Regime) -> int:
    e = _require_fayers_regime(regime)
    vector = content_vector(lam, regime)
    counts = np.array([vector[f] for f in range(e)], dtype=np.int64)
    charge_term = int(sum(counts[c % e] for c in regime.charges))
    squares = int(((counts - np.roll(counts, -1)) ** 2).sum())
    assert squares % 2 == 0, f"odd square sum {squares} for {lam}"
    return charge_term - squares // 2


def _residue_class(lam: Multipartition, regime: Regime, n: Optional[int]) -> Tuple[Multipartition, ...]:
    if n is not None and n != lam.size:
        raise RegimeError(f"n={n} does not match |lambda|={lam.size}")
    return residue_classes(regime, lam.size)[content_vector(lam, regime)]


def big_weight(lam: Multipartition, regime: Regime, n: Optional[int] = None) -> int:
    """W_e: the largest multiweight in the residue class of lambda (exhaustive scan)."""
    _require_fayers_regime(regime)
    return max(multiweight(mu, regime.e) for mu in _residue_class(lam, regime, n))


def is_reduced_multicore(lam: Multipartition, regime: Regime, n: Optional[int] = None) -> bool:
    _require_fayers_regime(regime)
    if not is_multicore(lam, regime.e):
        raise RegimeError(f"{lam} is not a multicore")
    return all(is_multicore(mu, regime.e) for mu in _residue_class(lam, regime, n))


def nu_ep(h: int, e: Order, p: Order) -> int:
    """0 when e does not divide h, else 1 + the p-adic exponent of h/e."""
    if h == 0:
        raise RegimeError("nu_{e,p}(0) is undefined")
    if not divides(e, h):
        return 0
    return 1 + p_adic_exponent(h // int(e), p)


def row_valuations(lam: PartitionLike, e: Order, p: Order) -> Iterator[List[int]]:
    lam = as_partition(lam)
    for i in range(1, len(lam) + 1):
        yield [nu_ep(hook_length(lam, i, j), e, p) for j in range(1, lam.row(i) + 1)]


def is_carter_partition(lam: PartitionLike, e: Order, p: Order) -> bool:
    """Hook valuations nu_{e,p} are constant along every row."""
    return all(len(set(values)) <= 1 for values in row_valuations(lam, e, p))


