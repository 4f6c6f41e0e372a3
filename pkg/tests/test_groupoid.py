from fractions import Fraction

import pytest

from shiftdim.amenability import EquivariantMap, check_equivariance
from shiftdim.errors import MissingEquivarianceCertificate
from shiftdim.groupoid import (
    DadCover,
    bound_chain,
    build_dad_cover,
    build_window,
    difference_set,
    verify_dad_cover,
)
from shiftdim.simplex import SimplexPoint
from shiftdim.systems import FiniteSymbolicSystem


def merge_system():
    """Three states: a -> c, b -> c, c -> c (one merge, genuine fibers)."""
    return FiniteSymbolicSystem(labels=("a", "b", "c"), succ=((2,), (2,), (2, 0, 1)))


def cycle_system(n):
    return FiniteSymbolicSystem(
        labels=tuple(f"s{i}" for i in range(n)),
        succ=tuple(((i + 1) % n,) for i in range(n)),
    )


def test_difference_set_interval():
    assert difference_set(range(5)) == tuple(range(-4, 5))


def test_difference_set_general():
    assert difference_set({0, 3}) == (-3, 0, 3)


def test_window_units_only():
    sys = cycle_system(5)
    win = build_window(sys, [0], 0)
    assert set(win.triples()) == {(x, 0, x) for x in range(5)}
    assert win.check_unit_inclusion()


def test_window_bruteforce_count():
    sys = cycle_system(6)
    win = build_window(sys, [-1, 0, 1], 2)
    # brute force: common images within the exponent bound
    expected = set()
    for x in range(6):
        for y in range(6):
            for a in range(3):
                for b in range(3):
                    if a - b in (-1, 0, 1) and (x + a) % 6 == (y + b) % 6:
                        expected.add((x, a - b, y))
    assert set(win.triples()) == expected


def test_window_inversion_closure():
    sys = merge_system()
    win = build_window(sys, [-1, 0, 1], 2)
    assert win.check_inversion_closure()
    assert win.check_unit_inclusion()


def _constant_map(sys, atom=0):
    return EquivariantMap(
        assignment=tuple(SimplexPoint.dirac(atom) for _ in range(sys.num_states)),
        window_set=(0,),
        resolution=1,
        d=0,
        epsilon_achieved=Fraction(0),
        support_window=(atom,),
    )


def test_dad_micro_genuine_epsilon():
    """d = 0 forces the genuine radius 1/3; with the window {0} a constant
    point-mass map is exactly equivariant and the cover certificate passes
    with both proof cases populated."""
    sys = merge_system()
    emap = _constant_map(sys)
    eps = Fraction(1, 3)  # 1/(3 * 10^0)
    cert = check_equivariance(sys, emap, [0], eps)
    assert cert.passed
    win = build_window(sys, [0], 1)
    # the window holds non-unit merge pairs (a,0,b) with a common image
    assert (0, 0, 1) in win.triples()
    orbit = {0, 1, 2}
    cover = build_dad_cover(win, emap, [2], 0, orbit, cert)
    dcert = verify_dad_cover(win, cover)
    assert dcert.passed, dcert.first_failure()
    counts = next(
        c for c in dcert.clauses if c.name == "restricted-elements-two-cases"
    )
    assert "orbit-bucket" in counts.witness


def test_dad_micro_negative_window_fails_at_genuine_epsilon():
    # with 1 in the window a point-mass map must move mass: deviation 2
    sys = cycle_system(3)
    emap = _constant_map(sys)
    cert = check_equivariance(sys, emap, [-1, 0, 1], Fraction(1, 3))
    assert not cert.passed


def test_dad_requires_certificate():
    sys = merge_system()
    emap = _constant_map(sys)
    win = build_window(sys, [0], 1)
    with pytest.raises(MissingEquivarianceCertificate):
        build_dad_cover(win, emap, [2], 0, {0, 1, 2}, None)


def test_dad_cover_coverage_failure_detected():
    sys = merge_system()
    emap = _constant_map(sys)
    cert = check_equivariance(sys, emap, [0], Fraction(1, 3))
    win = build_window(sys, [0], 1)
    cover = build_dad_cover(win, emap, [2], 0, {0, 1, 2}, cert)
    broken = DadCover(
        pieces=(cover.pieces[0] - {1},),
        F=cover.F,
        support=cover.support,
        orbit_states=cover.orbit_states,
        d=0,
    )
    dcert = verify_dad_cover(win, broken)
    assert not dcert.passed
    assert any(c.name == "unit-space-covering" and not c.passed for c in dcert.clauses)


def test_dad_f_symmetry_checked():
    sys = merge_system()
    emap = _constant_map(sys)
    cert = check_equivariance(sys, emap, [0], Fraction(1, 3))
    win = build_window(sys, [0], 1)
    cover = build_dad_cover(win, emap, [2], 0, {0, 1, 2}, cert)
    assert set(cover.F) == {-n for n in cover.F}


def test_bound_chain_examples():
    assert bound_chain(1, 0).as_tuple() == (3, 7, 7, 7, 6)
    assert bound_chain(0, 0).as_tuple() == (1, 3, 3, 3, 6)
    assert bound_chain(0, 2).as_tuple() == (1, 3, 3, 3, 54)
    assert bound_chain(2, 0).as_tuple() == (5, 11, 11, 11, 6)


def test_bound_chain_monotone_in_q():
    prev = bound_chain(0, 0).as_tuple()
    for q in range(1, 8):
        cur = bound_chain(q, 0).as_tuple()
        assert all(a <= b for a, b in zip(prev, cur))
        prev = cur
