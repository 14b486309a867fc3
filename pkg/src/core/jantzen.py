"""
Jantzen coefficients J_{lambda mu}.

``jantzen_bruteforce`` is the defining double sum: for every node x of
lambda and y of mu whose rim hooks leave the same diagram, add
(-1)^{leg x + leg y} times the valuation of the difference of the deformed
foot residues. ``jantzen_fast`` reads the same terms off the abacus, where
lambda and mu differ by at most two bead moves, so at most two hook swaps
contribute.

Valuation of one term, with h = n(a - b) + c(foot x) - c(foot y) and c the
uncharged content j - i:

    epsilon + nu'_p(h)   if the leading coefficients of the two deformed residues agree
    epsilon              otherwise

where the leading coefficients agree when the foot residues match (case 1),
when e divides the content difference (case 5), and always when q = 1.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.core.abacus import beta_numbers
from src.core.orders import divides, is_finite, p_adic_exponent
from src.core.partition import (
    Dominance,
    Multipartition,
    Node,
    RimHook,
    dominance_compare,
    enumerate_multipartitions,
    multipartition_index,
    require_same_shape,
    rim_hook,
    unwrap,
    wraps,
)
from src.core.residue import Regime, RegimeError, residue

logger = logging.getLogger(__name__)


class JantzenError(ValueError):
    """Invalid arguments to a valuation or coefficient computation."""


class JantzenMismatchError(AssertionError):
    """The abacus computation disagrees with the defining sum."""


def nu_p_prime(h: int, p) -> int:
    """Largest power of p dividing h (1 for p = inf). Not the p-adic exponent."""
    if h == 0:
        raise JantzenError("nu'_p(0) is undefined")
    if not is_finite(p):
        return 1
    return int(p) ** p_adic_exponent(h, p)


def _leading_terms_agree(regime: Regime, a: int, foot_x: int, b: int, foot_y: int) -> bool:
    if regime.case == 1:
        return divides(regime.e, foot_x + regime.charges[a - 1] - foot_y - regime.charges[b - 1])
    if regime.case == 5:
        return divides(regime.e, foot_x - foot_y)
    return True


def foot_valuation(regime: Regime, n: int, a: int, foot_x: int, b: int, foot_y: int) -> int:
    """nu_pi of res_O(f_x) - res_O(f_y) from the feet's components and contents."""
    h = n * (a - b) + foot_x - foot_y
    if h == 0:
        raise JantzenError(f"deformed residues coincide for feet {foot_x} in {a} and {foot_y} in {b}")
    if not _leading_terms_agree(regime, a, foot_x, b, foot_y):
        return regime.epsilon
    return nu_p_prime(h, regime.p) + regime.epsilon


def _foot_content(hook: RimHook) -> int:
    return hook.foot.col - hook.foot.row


def _check_pair(lam: Multipartition, mu: Multipartition, regime: Regime, n: Optional[int]) -> int:
    require_same_shape(lam, mu)
    if lam.r != regime.r:
        raise RegimeError(f"multipartitions have {lam.r} components, regime has r={regime.r}")
    if n is not None and n != lam.size:
        raise JantzenError(f"n={n} does not match |lambda|={lam.size}")
    return lam.size


def nu_pi_difference(lam: Multipartition, x: Node, mu: Multipartition, y: Node, regime: Regime) -> int:
    x, y = Node(*x), Node(*y)
    if unwrap(lam, x) != unwrap(mu, y):
        raise JantzenError(f"rim hooks at {tuple(x)} and {tuple(y)} leave different diagrams")
    hook_x, hook_y = rim_hook(lam, x), rim_hook(mu, y)
    return foot_valuation(regime, lam.size, x.comp, _foot_content(hook_x), y.comp, _foot_content(hook_y))


@dataclass(frozen=True)
class JantzenTerm:
    x: Node
    y: Node
    sign: int
    valuation: int
    feet_residues_match: bool

    @property
    def value(self) -> int:
        return self.sign * self.valuation


@lru_cache(maxsize=4096)
def _hooks_by_complement(lam: Multipartition) -> Dict[Multipartition, Tuple[RimHook, ...]]:
    grouped: Dict[Multipartition, List[RimHook]] = {}
    for x in lam.nodes():
        grouped.setdefault(unwrap(lam, x), []).append(rim_hook(lam, x))
    return {rest: tuple(hooks) for rest, hooks in grouped.items()}


def jantzen_terms(lam: Multipartition, mu: Multipartition, regime: Regime) -> Iterator[JantzenTerm]:
    """Every (x, y) term of the defining sum, regardless of dominance."""
    n = _check_pair(lam, mu, regime, None)
    targets = _hooks_by_complement(mu)
    for rest, hooks_x in _hooks_by_complement(lam).items():
        for hook_x in hooks_x:
            for hook_y in targets.get(rest, ()):
                foot_x, foot_y = _foot_content(hook_x), _foot_content(hook_y)
                a, b = hook_x.origin.comp, hook_y.origin.comp
                yield JantzenTerm(
                    x=hook_x.origin,
                    y=hook_y.origin,
                    sign=-1 if (hook_x.leg + hook_y.leg) % 2 else 1,
                    valuation=foot_valuation(regime, n, a, foot_x, b, foot_y),
                    feet_residues_match=residue(hook_x.foot, regime) == residue(hook_y.foot, regime),
                )


def jantzen_bruteforce(lam: Multipartition, mu: Multipartition, regime: Regime, n: Optional[int] = None) -> int:
    _check_pair(lam, mu, regime, n)
    if dominance_compare(lam, mu) is not Dominance.GREATER:
        return 0
    return sum(term.value for term in jantzen_terms(lam, mu, regime))


@dataclass(frozen=True)
class HookSwap:
    """
    One way of reaching mu from lambda: unwrap a hook of lambda in component
    ``comp_x`` and wrap one of the same length onto component ``comp_y``.
    Feet are recorded by uncharged content.
    """
    comp_x: int
    comp_y: int
    foot_x: int
    foot_y: int
    legs: int

    @property
    def sign(self) -> int:
        return -1 if self.legs % 2 else 1


def _between(beads: frozenset, low: int, high: int) -> int:
    return sum(1 for z in beads if low < z < high)


def _bead_sets(lam_part, mu_part) -> Tuple[frozenset, frozenset]:
    length = max(len(lam_part), len(mu_part))
    return frozenset(beta_numbers(lam_part, 0, length)), frozenset(beta_numbers(mu_part, 0, length))


@lru_cache(maxsize=4096)
def hook_swaps(lam: Multipartition, mu: Multipartition) -> Tuple[HookSwap, ...]:
    """
    The hook swaps turning lambda into mu, read from charge-0 bead sets.

    A bead sliding down from s to t unwraps a hook whose foot has content
    t + 1 and whose leg counts the beads strictly between t and s.
    """
    require_same_shape(lam, mu)
    differing = [a for a in range(1, lam.r + 1) if lam.component(a) != mu.component(a)]

    if len(differing) == 1:
        a = differing[0]
        before, after = _bead_sets(lam.component(a), mu.component(a))
        gone, new = sorted(before - after), sorted(after - before)
        if len(gone) != 2:
            return ()
        swaps = []
        for first, second in (((gone[0], new[0]), (gone[1], new[1])), ((gone[0], new[1]), (gone[1], new[0]))):
            down, up = (first, second) if first[0] > first[1] else (second, first)
            s_down, t_down = down
            s_up, t_up = up
            if s_down <= t_down or t_up <= s_up or s_down - t_down != t_up - s_up:
                continue
            legs = _between(before, t_down, s_down) + _between(after, s_up, t_up)
            swaps.append(HookSwap(a, a, t_down + 1, s_up + 1, legs))
        return tuple(swaps)

    if len(differing) == 2:
        a, b = differing
        if lam.component(a).size > mu.component(a).size:
            comp_x, comp_y = a, b
        elif lam.component(a).size < mu.component(a).size:
            comp_x, comp_y = b, a
        else:
            return ()
        before_x, after_x = _bead_sets(lam.component(comp_x), mu.component(comp_x))
        before_y, after_y = _bead_sets(lam.component(comp_y), mu.component(comp_y))
        gone_x, new_x = before_x - after_x, after_x - before_x
        gone_y, new_y = before_y - after_y, after_y - before_y
        if not (len(gone_x) == len(new_x) == len(gone_y) == len(new_y) == 1):
            return ()
        (s,), (t,) = gone_x, new_x
        (u,), (u_top,) = gone_y, new_y
        if s <= t or s - t != u_top - u:
            return ()
        legs = _between(before_x, t, s) + _between(after_y, u, u_top)
        return (HookSwap(comp_x, comp_y, t + 1, u + 1, legs),)

    return ()


def swap_value(regime: Regime, n: int, swap: HookSwap) -> int:
    return swap.sign * foot_valuation(regime, n, swap.comp_x, swap.foot_x, swap.comp_y, swap.foot_y)


def jantzen_fast(lam: Multipartition, mu: Multipartition, regime: Regime, n: Optional[int] = None) -> int:
    n = _check_pair(lam, mu, regime, n)
    if dominance_compare(lam, mu) is not Dominance.GREATER:
        return 0
    differing = sum(1 for left, right in zip(lam.components, mu.components) if left != right)
    if differing > 2:
        return 0
    if regime.case == 1 and differing == 1 and not is_finite(regime.e):
        return 0
    return sum(swap_value(regime, n, swap) for swap in hook_swaps(lam, mu))


@lru_cache(maxsize=None)
def hook_move_candidates(r: int, n: int) -> Tuple[Tuple[int, int, Tuple[HookSwap, ...]], ...]:
    """
    Pairs (i, j) with lambda_i strictly dominating mu_j that are one hook swap
    apart, with their swaps. Only these can carry a nonzero coefficient, and
    none of it depends on the regime.
    """
    multis = enumerate_multipartitions(r, n)
    index = multipartition_index(r, n)
    pairs = set()
    for i, lam in enumerate(multis):
        for x in lam.nodes():
            rest = unwrap(lam, x)
            length = lam.size - rest.size
            for b in range(1, r + 1):
                for wrapped in wraps(rest.component(b), length):
                    j = index[rest.replace(b, wrapped)]
                    if j != i:
                        pairs.add((i, j))
    found = []
    for i, j in sorted(pairs):
        if dominance_compare(multis[i], multis[j]) is not Dominance.GREATER:
            continue
        swaps = hook_swaps(multis[i], multis[j])
        if swaps:
            found.append((i, j, swaps))
    logger.debug(f"{len(found)} hook-move pairs for r={r}, n={n}")
    return tuple(found)


@dataclass(frozen=True)
class JantzenMatrix:
    """Sparse J over the fixed enumeration of Lambda^+_{r,n}; absent entries are 0."""
    regime: Regime
    n: int
    multipartitions: Tuple[Multipartition, ...]
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict, hash=False)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def nonzero(self) -> List[Tuple[int, int, int]]:
        return [(i, j, v) for (i, j), v in sorted(self.entries.items())]

    def row_is_zero(self, i: int) -> bool:
        return not any(key[0] == i for key in self.entries)

    def to_dense(self) -> np.ndarray:
        size = len(self.multipartitions)
        dense = np.zeros((size, size), dtype=np.int64)
        for (i, j), value in self.entries.items():
            dense[i, j] = value
        return dense


def audit_matrix(
    matrix: JantzenMatrix, fraction: float = 0.01, seed: int = 0, exhaustive_up_to: int = 5
) -> int:
    """
    Check entries against the defining sum: every ordered pair when
    n <= exhaustive_up_to, otherwise a seeded sample of the given fraction.
    Returns the number of pairs checked.
    """
    multis = matrix.multipartitions
    size = len(multis)
    if matrix.n <= exhaustive_up_to:
        pairs: Sequence[Tuple[int, int]] = [(i, j) for i in range(size) for j in range(size)]
    else:
        rng = np.random.default_rng(seed)
        picks = rng.choice(size * size, size=max(1, int(round(fraction * size * size))), replace=False)
        pairs = sorted(divmod(int(k), size) for k in picks)
    for i, j in pairs:
        expected = jantzen_bruteforce(multis[i], multis[j], matrix.regime, matrix.n)
        if matrix[i, j] != expected:
            logger.warning(
                f"Audit mismatch for {matrix.regime.describe()}: J[{multis[i]}, {multis[j]}] "
                f"= {matrix[i, j]}, defining sum gives {expected}"
            )
            raise JantzenMismatchError(
                f"J[{multis[i]}, {multis[j]}] = {matrix[i, j]} but the defining sum gives {expected}"
            )
    return len(pairs)


def jantzen_matrix(regime: Regime, n: int, audit: bool = True, seed: int = 0) -> JantzenMatrix:
    multis = enumerate_multipartitions(regime.r, n)
    entries: Dict[Tuple[int, int], int] = {}
    for i, j, swaps in hook_move_candidates(regime.r, n):
        value = sum(swap_value(regime, n, swap) for swap in swaps)
        if value:
            entries[(i, j)] = value
    matrix = JantzenMatrix(regime, n, multis, entries)
    if audit:
        checked = audit_matrix(matrix, seed=seed)
        logger.debug(f"Audited {checked} pairs for {regime.describe()}, n={n}")
    logger.info(f"Jantzen matrix {regime.describe()} n={n}: {len(multis)} rows, {len(entries)} nonzero")
    return matrix


def carter_row_is_zero(lam: Multipartition, regime: Regime) -> bool:
    """For r = 1: every J_{lambda mu} vanishes."""
    if regime.r != 1:
        raise RegimeError("the row criterion is stated for r=1")
    return all(jantzen_fast(lam, mu, regime) == 0 for mu in enumerate_multipartitions(1, lam.size))
