import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.partition import (
    Dominance,
    Multipartition,
    Node,
    Partition,
    PartitionError,
    addable_nodes,
    conjugate,
    dominance_compare,
    enumerate_multipartitions,
    enumerate_partitions,
    hook_length,
    multipartition_index,
    parse_multipartition,
    removable_nodes,
    rim_hook,
    unwrap,
    wrap_with_hand_in_column,
    wraps,
)


def partitions_up_to(n_max):
    return st.integers(min_value=0, max_value=n_max).flatmap(lambda n: st.sampled_from(enumerate_partitions(n)))


class TestPartition:
    def test_trailing_zeros_dropped(self):
        """Zero parts at the end are not part of the partition."""
        assert Partition((3, 1, 0, 0)) == Partition((3, 1))
        assert len(Partition((3, 1, 0))) == 2

    def test_rejects_increasing_parts(self):
        with pytest.raises(PartitionError, match="weakly decreasing"):
            Partition((1, 2))

    def test_rejects_negative_parts(self):
        with pytest.raises(PartitionError):
            Partition((2, -1))

    def test_rows_and_columns(self):
        lam = Partition((4, 1, 1))
        assert lam.size == 6
        assert lam.row(1) == 4 and lam.row(4) == 0
        assert lam.column(1) == 3 and lam.column(2) == 1 and lam.column(5) == 0
        assert conjugate(lam) == Partition((3, 1, 1, 1))

    def test_hook_length(self):
        assert hook_length((4, 1, 1), 1, 1) == 6
        assert hook_length((4, 1, 1), 1, 2) == 3
        assert hook_length((3, 2, 1), 2, 1) == 3
        with pytest.raises(PartitionError):
            hook_length((2,), 2, 1)


class TestMultipartition:
    def test_component_access_is_one_based(self, mixed_charge_example):
        assert mixed_charge_example.r == 3
        assert mixed_charge_example.size == 14
        assert mixed_charge_example.component(2) == Partition((2,))
        with pytest.raises(PartitionError, match="out of range"):
            mixed_charge_example.component(4)

    def test_contains(self, mixed_charge_example):
        assert Node(1, 4, 1) in mixed_charge_example
        assert Node(3, 1, 3) in mixed_charge_example
        assert Node(2, 1, 2) not in mixed_charge_example
        assert (1, 1, 4) not in mixed_charge_example

    def test_literal_round_trip(self, mixed_charge_example):
        assert mixed_charge_example.literal() == "4,1,1|2|3,2,1"
        assert parse_multipartition("4,1,1|2|3,2,1") == mixed_charge_example

    def test_parse_empty_components(self):
        assert parse_multipartition("") == Multipartition.of(())
        assert parse_multipartition("|") == Multipartition.of((), ())
        assert parse_multipartition("1|") == Multipartition.of((1,), ())

    def test_parse_errors(self):
        with pytest.raises(PartitionError, match="malformed"):
            parse_multipartition("a,b")
        with pytest.raises(PartitionError, match="positive"):
            parse_multipartition("2,0")
        with pytest.raises(PartitionError, match="expected 2 components"):
            parse_multipartition("2,1", r=2)


class TestRimHooks:
    def test_first_column_hook_of_example(self, mixed_charge_example):
        """The hook at (1,1,1) has arm 3, leg 2 and six cells."""
        hook = rim_hook(mixed_charge_example, Node(1, 1, 1))
        assert hook.length == 6
        assert hook.length == hook_length((4, 1, 1), 1, 1)
        assert hook.foot == Node(3, 1, 1)
        assert hook.hand == Node(1, 4, 1)
        assert hook.leg == 2

    def test_unwrap_square(self):
        """The rim hook of (2,2) at (1,1) has three cells and leaves (1)."""
        lam = Multipartition.of((2, 2))
        assert rim_hook(lam, Node(1, 1, 1)).length == 3
        assert unwrap(lam, Node(1, 1, 1)) == Multipartition.of((1,))

    def test_unwrap_single_node(self):
        lam = Multipartition.of((2, 1), (1,))
        assert unwrap(lam, Node(1, 2, 1)) == Multipartition.of((1, 1), (1,))
        assert unwrap(lam, Node(1, 1, 2)) == Multipartition.of((2, 1), ())

    def test_unwrap_outside_diagram(self):
        with pytest.raises(PartitionError, match="not in the diagram"):
            unwrap(Multipartition.of((1,)), Node(1, 2, 1))

    def test_wraps_of_single_box(self):
        """A domino goes on (1) vertically or horizontally, never as two detached cells."""
        assert wraps((1,), 2) == [Partition((1, 1, 1)), Partition((3,))]

    def test_wrap_with_hand_in_column(self):
        nu = Multipartition.of((1,), ())
        assert wrap_with_hand_in_column(nu, 1, 3, 2) == Multipartition.of((3,), ())
        assert wrap_with_hand_in_column(nu, 1, 2, 2) is None
        with pytest.raises(PartitionError):
            wrap_with_hand_in_column(nu, 1, 0, 2)

    @pytest.mark.property_based
    @given(partitions_up_to(8))
    @settings(max_examples=60, deadline=None)
    def test_unwrap_then_wrap_recovers(self, lam):
        """Every hook removed from lambda can be wrapped back to give lambda."""
        multi = Multipartition.of(lam)
        for x in multi.nodes():
            rest = unwrap(multi, x)
            h = hook_length(lam, x.row, x.col)
            assert rest.size == lam.size - h
            assert lam in wraps(rest.component(1), h), f"{lam} not among wraps of {rest} by {h}"

    @pytest.mark.property_based
    @given(partitions_up_to(6), st.integers(min_value=1, max_value=5))
    @settings(max_examples=60, deadline=None)
    def test_wraps_are_distinct_and_grow_by_h(self, nu, h):
        found = wraps(nu, h)
        assert len(found) == len(set(found))
        for lam in found:
            assert lam.size == nu.size + h
            assert all(lam.row(i) >= nu.row(i) for i in range(1, len(lam) + 1))


class TestNodes:
    def test_removable_and_addable(self):
        lam = Multipartition.of((2, 1))
        assert removable_nodes(lam) == [Node(1, 2, 1), Node(2, 1, 1)]
        assert addable_nodes(lam) == [Node(1, 3, 1), Node(2, 2, 1), Node(3, 1, 1)]

    def test_empty_component_has_one_addable_node(self):
        assert addable_nodes(Multipartition.of((), ())) == [Node(1, 1, 1), Node(1, 1, 2)]
        assert removable_nodes(Multipartition.of(())) == []


class TestDominance:
    def test_partitions(self):
        assert dominance_compare(Multipartition.of((2,)), Multipartition.of((1, 1))) is Dominance.GREATER
        assert dominance_compare(Multipartition.of((1, 1)), Multipartition.of((2,))) is Dominance.LESS
        assert dominance_compare(Multipartition.of((3, 1, 1, 1)), Multipartition.of((2, 2, 2))) is Dominance.INCOMPARABLE

    def test_earlier_components_dominate(self):
        assert dominance_compare(Multipartition.of((1,), ()), Multipartition.of((), (1,))) is Dominance.GREATER
        assert dominance_compare(Multipartition.of((2,), ()), Multipartition.of((1,), (1,))) is Dominance.GREATER

    def test_equal(self):
        lam = Multipartition.of((1,), (1,))
        assert dominance_compare(lam, lam) is Dominance.EQUAL

    def test_shape_mismatch(self):
        with pytest.raises(PartitionError, match="sizes differ"):
            dominance_compare(Multipartition.of((2,)), Multipartition.of((1,)))
        with pytest.raises(PartitionError, match="component counts differ"):
            dominance_compare(Multipartition.of((1,)), Multipartition.of((1,), ()))


class TestEnumeration:
    def test_partition_counts(self):
        assert [len(enumerate_partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]

    def test_reverse_lexicographic(self):
        assert enumerate_partitions(4) == tuple(
            Partition(p) for p in [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
        )

    def test_three_component_counts(self):
        assert [len(enumerate_multipartitions(3, n)) for n in range(7)] == [1, 3, 9, 22, 51, 108, 221]

    def test_fixed_order_two_components(self):
        expected = [
            Multipartition.of((2,), ()),
            Multipartition.of((1, 1), ()),
            Multipartition.of((1,), (1,)),
            Multipartition.of((), (2,)),
            Multipartition.of((), (1, 1)),
        ]
        assert list(enumerate_multipartitions(2, 2)) == expected

    def test_index_matches_order(self):
        multis = enumerate_multipartitions(2, 3)
        index = multipartition_index(2, 3)
        assert all(index[lam] == k for k, lam in enumerate(multis))

    def test_invalid_arguments(self):
        with pytest.raises(PartitionError):
            enumerate_multipartitions(0, 2)
        with pytest.raises(PartitionError):
            enumerate_partitions(-1)
