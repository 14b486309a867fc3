import numpy as np
import pytest

from src.core.blocks import theorem_grid
from src.core.orders import INF
from src.core.partition import (
    Dominance,
    Multipartition,
    Node,
    dominance_compare,
    enumerate_multipartitions,
    enumerate_partitions,
)
from src.core.jantzen import (
    JantzenError,
    JantzenMatrix,
    JantzenMismatchError,
    audit_matrix,
    carter_row_is_zero,
    hook_swaps,
    jantzen_bruteforce,
    jantzen_fast,
    jantzen_matrix,
    jantzen_terms,
    nu_p_prime,
    nu_pi_difference,
)
from src.core.residue import Regime, RegimeError, content_vector, is_carter_partition

DOMINO = Multipartition.of((2,))
COLUMN = Multipartition.of((1, 1))


def grid_regimes(r_max, n_max=1, cases=(1, 2, 3, 4, 5)):
    """Distinct regimes of the acceptance grid up to rank r_max."""
    return list(dict.fromkeys(regime for regime, _ in theorem_grid(r_max, n_max, cases=cases)))


def assert_fast_matches_oracle(regime, n):
    multis = enumerate_multipartitions(regime.r, n)
    for lam in multis:
        for mu in multis:
            fast = jantzen_fast(lam, mu, regime, n)
            oracle = jantzen_bruteforce(lam, mu, regime, n)
            assert fast == oracle, f"{regime.describe()}: J[{lam}, {mu}] fast={fast} oracle={oracle}"


class TestValuations:
    def test_nu_p_prime(self):
        assert nu_p_prime(12, 2) == 4
        assert nu_p_prime(5, INF) == 1
        assert nu_p_prime(-9, 3) == 9
        with pytest.raises(JantzenError):
            nu_p_prime(0, 2)

    def test_nu_p_prime_is_multiplicative_in_p(self):
        for p in (2, 3, 5):
            for h in range(-30, 31):
                if h:
                    assert nu_p_prime(p * h, p) == p * nu_p_prime(h, p)

    def test_matching_feet(self):
        """Feet (1,2) and (2,1) have residue 1 mod 2 and content difference 2."""
        regime = Regime(1, 2, INF, 1, (0,))
        assert nu_pi_difference(DOMINO, Node(1, 2, 1), COLUMN, Node(2, 1, 1), regime) == 1

    def test_mismatched_feet(self):
        regime = Regime(1, 3, INF, 1, (0,))
        assert nu_pi_difference(DOMINO, Node(1, 2, 1), COLUMN, Node(2, 1, 1), regime) == 0

    def test_zero_parameters_add_one(self):
        lam, mu = Multipartition.of((2,), ()), Multipartition.of((1, 1), ())
        assert nu_pi_difference(lam, Node(1, 2, 1), mu, Node(2, 1, 1), Regime(5, 2, INF, 2)) == 2
        assert nu_pi_difference(lam, Node(1, 2, 1), mu, Node(2, 1, 1), Regime(5, 3, INF, 2)) == 1

    def test_complements_must_agree(self):
        with pytest.raises(JantzenError, match="different diagrams"):
            nu_pi_difference(DOMINO, Node(1, 1, 1), COLUMN, Node(2, 1, 1), Regime(1, 2, INF, 1, (0,)))


class TestDefiningSum:
    def test_domino_against_column(self):
        assert jantzen_bruteforce(DOMINO, COLUMN, Regime(1, 2, INF, 1, (0,))) == 1
        assert jantzen_bruteforce(DOMINO, COLUMN, Regime(1, 3, INF, 1, (0,))) == 0

    def test_domino_at_q_equal_one(self):
        """2 * [h=2] - 1 * [h=1] at p = 2."""
        assert jantzen_bruteforce(DOMINO, COLUMN, Regime(2, 2, 2)) == 1

    def test_mismatched_feet_do_not_cancel_for_a_domino(self):
        terms = list(jantzen_terms(DOMINO, COLUMN, Regime(2, 2, 2)))
        assert len(terms) == 2
        assert sum(t.value for t in terms if not t.feet_residues_match) == -1
        assert sum(t.value for t in terms if t.feet_residues_match) == 2

    def test_diagonal_and_reverse_vanish(self):
        regime = Regime(1, 2, INF, 1, (0,))
        assert jantzen_bruteforce(DOMINO, DOMINO, regime) == 0
        assert jantzen_bruteforce(COLUMN, DOMINO, regime) == 0

    @pytest.mark.parametrize("regime", [Regime(3, 2, 2, 2), Regime(4, 2, 2, 2), Regime(5, 2, INF, 2), Regime(5, 3, 2, 2)])
    def test_box_moving_to_later_component(self, regime):
        lam, mu = Multipartition.of((1,), ()), Multipartition.of((), (1,))
        assert jantzen_bruteforce(lam, mu, regime) == 1 + regime.epsilon
        assert jantzen_fast(lam, mu, regime) == 1 + regime.epsilon

    def test_shape_errors(self):
        regime = Regime(1, 2, INF, 1, (0,))
        with pytest.raises(JantzenError, match="does not match"):
            jantzen_bruteforce(DOMINO, COLUMN, regime, n=3)
        with pytest.raises(RegimeError, match="regime has r=2"):
            jantzen_fast(DOMINO, COLUMN, Regime(1, 2, INF, 2, (0, 0)))


class TestHookSwaps:
    def test_domino_has_two_swaps(self):
        swaps = hook_swaps(DOMINO, COLUMN)
        assert sorted((s.foot_x, s.foot_y, s.sign) for s in swaps) == [(0, -1, -1), (1, -1, 1)]

    def test_box_between_components(self):
        (swap,) = hook_swaps(Multipartition.of((1,), ()), Multipartition.of((), (1,)))
        assert (swap.comp_x, swap.comp_y, swap.foot_x, swap.foot_y, swap.sign) == (1, 2, 0, 0, 1)

    def test_three_components_never_swap(self):
        lam, mu = Multipartition.of((1,), (1,), ()), Multipartition.of((), (), (2,))
        assert hook_swaps(lam, mu) == ()
        assert jantzen_fast(lam, mu, Regime(3, 2, 2, 3)) == 0
        assert jantzen_bruteforce(lam, mu, Regime(3, 2, 2, 3)) == 0

    def test_generic_q_single_component_vanishes(self):
        assert jantzen_fast(DOMINO, COLUMN, Regime(1, INF, INF, 1, (0,))) == 0
        assert jantzen_bruteforce(DOMINO, COLUMN, Regime(1, INF, INF, 1, (0,))) == 0

    def test_cache_is_bounded(self):
        """Pairs arrive from long-lived server requests."""
        hook_swaps(DOMINO, COLUMN)
        info = hook_swaps.cache_info()
        assert info.maxsize is not None and info.currsize <= info.maxsize


class TestFastMatchesOracle:
    def test_single_partitions(self):
        for regime in grid_regimes(1, cases=(1, 2)):
            for n in range(1, 7):
                assert_fast_matches_oracle(regime, n)

    def test_two_components(self):
        for regime in grid_regimes(2):
            if regime.r != 2:
                continue
            for n in range(1, 4):
                assert_fast_matches_oracle(regime, n)

    @pytest.mark.slow
    def test_full_grid(self):
        for regime in grid_regimes(3):
            for n in range(1, 7):
                assert_fast_matches_oracle(regime, n)

    @pytest.mark.slow
    def test_single_partitions_to_eight(self):
        for regime in grid_regimes(1, cases=(1, 2)):
            if regime.e == INF:
                continue
            for n in (7, 8):
                assert_fast_matches_oracle(regime, n)


class TestConsequences:
    def test_nonzero_coefficients_respect_dominance_and_residues(self):
        for regime in grid_regimes(2, cases=(1, 2)):
            for n in range(1, 5):
                multis = enumerate_multipartitions(regime.r, n)
                for lam in multis:
                    for mu in multis:
                        if jantzen_fast(lam, mu, regime, n):
                            assert dominance_compare(lam, mu) is Dominance.GREATER
                            assert content_vector(lam, regime) == content_vector(mu, regime), (regime, lam, mu)

    @pytest.mark.parametrize("e", [2, 3])
    def test_carter_partitions_have_zero_rows(self, e):
        """In characteristic 0 a row vanishes exactly for the e-Carter partitions."""
        regime = Regime(1, e, INF, 1, (0,))
        for n in range(1, 7):
            for part in enumerate_partitions(n):
                lam = Multipartition.of(part)
                assert carter_row_is_zero(lam, regime) == is_carter_partition(part, e, INF), part

    def test_row_criterion_needs_one_component(self):
        with pytest.raises(RegimeError):
            carter_row_is_zero(Multipartition.of((1,), ()), Regime(3, 2, 2, 2))


class TestMatrix:
    def test_two_boxes(self):
        matrix = jantzen_matrix(Regime(1, 2, INF, 1, (0,)), 2)
        assert matrix.nonzero() == [(0, 1, 1)]
        assert matrix[0, 1] == 1 and matrix[1, 0] == 0
        assert not matrix.row_is_zero(0) and matrix.row_is_zero(1)

    def test_one_box_single_component(self):
        assert jantzen_matrix(Regime(1, 2, INF, 1, (0,)), 1).entries == {}

    def test_dense_view_is_strictly_upper_triangular(self):
        matrix = jantzen_matrix(Regime(1, 3, 2, 2, (0, 1)), 4)
        dense = matrix.to_dense()
        assert dense.shape == (len(matrix.multipartitions),) * 2
        assert dense.dtype == np.int64
        for i, j, _ in matrix.nonzero():
            assert dominance_compare(matrix.multipartitions[i], matrix.multipartitions[j]) is Dominance.GREATER
        # the enumeration order extends dominance
        assert np.all(np.tril(dense) == 0)

    def test_audit_counts(self):
        regime = Regime(2, 3, 3)
        assert audit_matrix(jantzen_matrix(regime, 4, audit=False)) == 25
        assert audit_matrix(jantzen_matrix(regime, 6, audit=False)) == 1

    def test_audit_detects_corruption(self):
        regime = Regime(1, 2, INF, 1, (0,))
        bogus = JantzenMatrix(regime, 2, enumerate_multipartitions(1, 2), {(0, 1): 5})
        with pytest.raises(JantzenMismatchError, match="defining sum gives 1"):
            audit_matrix(bogus)
