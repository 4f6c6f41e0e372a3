import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftdim.cover import build_cover_graph
from shiftdim.systems import (
    FiniteSymbolicSystem,
    aperiodicity_window_check,
    disjoint_family_check,
)
from shiftdim.words import fibonacci_spec, full_shift_spec, golden_mean_spec


def det_system(successors):
    return FiniteSymbolicSystem(
        labels=tuple(f"s{i}" for i in range(len(successors))),
        succ=tuple((t,) for t in successors),
    )


@pytest.fixture(scope="module")
def full2_graph():
    return build_cover_graph(full_shift_spec(2), 2, 2)


def test_preimage_image_on_cylinder_graph(full2_graph):
    # states are the four 2-cylinders in canonical order 00,01,10,11
    sys = full2_graph.system
    labels = [full2_graph.pi(s) for s in range(sys.num_states)]
    assert sorted(labels) == ["00", "01", "10", "11"]
    zero_prefixed = frozenset(s for s in range(4) if full2_graph.pi(s)[0] == "0")
    pre = sys.preimage(zero_prefixed, 1)
    # predecessors of [0*] are exactly [00] and [10]
    assert {full2_graph.pi(s) for s in pre} == {"00", "10"}
    img = sys.image(frozenset({labels.index("00")}), 1)
    assert {full2_graph.pi(s) for s in img} == {"00", "01"}


def test_preimage_trivial_cases(full2_graph):
    sys = full2_graph.system
    assert sys.preimage(sys.all_states(), 3) == sys.all_states()
    assert sys.preimage(frozenset(), 2) == frozenset()
    assert sys.image(frozenset(), 5) == frozenset()


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 15), st.integers(0, 15))
@settings(max_examples=40, deadline=None)
def test_preimage_composition_relational(m, n, mask, mask2):
    graph = build_cover_graph(full_shift_spec(2), 2, 2)
    sys = graph.system
    clopen = frozenset(s for s in range(sys.num_states) if mask & (1 << s))
    other = frozenset(s for s in range(sys.num_states) if mask2 & (1 << s))
    lhs = sys.preimage(sys.preimage(clopen, m), n)
    assert lhs == sys.preimage(clopen, m + n)
    assert sys.image(sys.image(clopen, m), n) == sys.image(clopen, m + n)
    # union distribution holds for the relational operators as well
    assert sys.preimage(clopen | other, m) == sys.preimage(clopen, m) | sys.preimage(other, m)


@given(st.integers(0, 3), st.integers(0, 3), st.sets(st.integers(0, 5), max_size=6))
@settings(max_examples=60, deadline=None)
def test_deterministic_surjective_identities(m, n, members):
    # 6-cycle: deterministic and onto, so the map identities hold exactly
    sys = det_system([(i + 1) % 6 for i in range(6)])
    assert sys.deterministic and sys.surjective_flag
    clopen = frozenset(members)
    got = sys.image(sys.preimage(clopen, n), m)
    expected = sys.image(clopen, m - n) if m >= n else sys.preimage(clopen, n - m)
    assert got == expected
    # preimage distributes over intersection and complement
    other = frozenset(range(0, 6, 2))
    assert sys.preimage(clopen & other, m) == sys.preimage(clopen, m) & sys.preimage(other, m)
    assert sys.preimage(sys.all_states() - clopen, m) == sys.all_states() - sys.preimage(clopen, m)


def test_relational_counterexample_documented():
    # with a genuine branch the image/preimage identity of surjective maps
    # fails: this is why deterministic carriers matter
    sys = FiniteSymbolicSystem(
        labels=("a", "b", "c"),
        succ=((1, 2), (0,), (0,)),
    )
    assert sys.surjective_flag and not sys.deterministic
    clopen = frozenset({1})
    assert sys.image(sys.preimage(clopen, 1), 1) != clopen


def test_disjoint_family_check():
    assert disjoint_family_check([frozenset(), frozenset({1, 2})])
    assert disjoint_family_check([frozenset({1}), frozenset({2})])
    assert not disjoint_family_check([frozenset({1, 2}), frozenset({2, 3})])


def test_aperiodicity_fibonacci():
    assert aperiodicity_window_check(fibonacci_spec(), 10)


def test_aperiodicity_full_shift_and_sft():
    assert not aperiodicity_window_check(full_shift_spec(2), 1)  # 0^inf
    assert not aperiodicity_window_check(golden_mean_spec(), 1)  # 0^inf


def test_cycle_lengths_reported():
    sys = det_system([1, 2, 0, 4, 3])  # a 3-cycle and a 2-cycle
    assert sys.cycle_lengths_report(10) == [2, 3]
    assert sys.min_cycle_length(10) == 2
    assert sys.min_cycle_length(1) is None


def test_cycle_through_branch_state():
    sys = FiniteSymbolicSystem(
        labels=("a", "b", "c"),
        succ=((1, 2), (0,), (2,)),
    )
    # shortest cycle through the branch state a: a -> b -> a
    assert sys.min_cycle_length(10) == 1  # c self-loop
    assert 2 in sys.cycle_lengths_report(10)


def test_adjacency_export(full2_graph):
    text = full2_graph.to_adjacency_text()
    assert "states: 4" in text
    assert len(text.splitlines()) == 5


def test_entry_free_restriction():
    sys = FiniteSymbolicSystem(
        labels=("m", "o", "c"),
        succ=((1, 2), (2,), (0,)),
    )
    restricted = sys.without_entries_into({1})
    assert restricted.succ[0] == (2,)
    assert restricted.succ[1] == (2,)  # exits survive
    # a state whose successors all sit in the window keeps its edges
    forced = sys.without_entries_into({1, 2})
    assert forced.succ[0] == (1, 2)
