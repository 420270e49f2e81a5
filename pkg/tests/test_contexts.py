import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from substrate.contexts import (
    CLOSURE_LIMIT,
    GeneratorKind,
    Mode,
    Renaming,
    compose,
    count_renamings,
    enumerate_renamings,
    generated_closure,
    generator,
    identity,
    parse_renaming,
    print_renaming,
)
from substrate.errors import CapabilityError, LimitExceeded, ModeViolation, ScopeError

ALL_MODES = list(Mode)


def test_capability_table():
    assert Mode.CARTESIAN.allows_weakening and Mode.CARTESIAN.allows_contraction
    assert not Mode.LINEAR.allows_weakening and not Mode.LINEAR.allows_contraction
    assert Mode.AFFINE.allows_weakening and not Mode.AFFINE.allows_contraction
    assert not Mode.RELEVANT.allows_weakening and Mode.RELEVANT.allows_contraction


def test_mode_from_string():
    assert Mode.from_string("Linear") is Mode.LINEAR
    with pytest.raises(ValueError):
        Mode.from_string("bogus")


def test_identity_examples():
    assert identity(3, Mode.LINEAR).mapping == (1, 2, 3)
    # empty map is surjective onto the empty codomain
    assert identity(0, Mode.RELEVANT).mapping == ()
    rho = Renaming(2, 2, (2, 1), Mode.CARTESIAN)
    assert compose(identity(2, Mode.CARTESIAN), rho) == rho


def test_swap_is_involution():
    s = generator(GeneratorKind.SWAP, 1, 2, Mode.LINEAR)
    assert compose(s, s) == identity(2, Mode.LINEAR)


def test_compose_pointwise():
    swap = Renaming(2, 2, (2, 1), Mode.CARTESIAN)
    merge = Renaming(2, 1, (1, 1), Mode.CARTESIAN)
    assert compose(merge, swap).mapping == (1, 1)


def test_compose_mismatches():
    with pytest.raises(ValueError):
        compose(identity(2, Mode.CARTESIAN), identity(3, Mode.CARTESIAN))
    with pytest.raises(ValueError):
        compose(identity(2, Mode.CARTESIAN), identity(2, Mode.LINEAR))


def test_mode_invariants_checked_on_construction():
    with pytest.raises(ModeViolation):
        Renaming(2, 2, (1, 1), Mode.LINEAR)
    with pytest.raises(ModeViolation):
        Renaming(2, 2, (1, 1), Mode.AFFINE)
    with pytest.raises(ModeViolation):
        Renaming(1, 2, (1,), Mode.RELEVANT)
    with pytest.raises(ScopeError):
        Renaming(1, 1, (2,), Mode.CARTESIAN)


def test_generator_examples():
    assert generator(GeneratorKind.SWAP, 1, 2, Mode.LINEAR).mapping == (2, 1)
    w = generator(GeneratorKind.WEAKEN, 3, 2, Mode.AFFINE)
    assert (w.mapping, w.cod) == ((1, 2), 3)
    c = generator(GeneratorKind.CONTRACT, 1, 2, Mode.RELEVANT)
    assert (c.mapping, c.cod) == ((1, 1), 1)


def test_generator_capability_violations():
    with pytest.raises(CapabilityError):
        generator(GeneratorKind.WEAKEN, 1, 1, Mode.LINEAR)
    with pytest.raises(CapabilityError):
        generator(GeneratorKind.CONTRACT, 1, 2, Mode.AFFINE)
    with pytest.raises(ScopeError):
        generator(GeneratorKind.SWAP, 2, 2, Mode.LINEAR)


def test_enumerate_examples():
    assert len(enumerate_renamings(2, 2, Mode.LINEAR)) == 2
    assert len(enumerate_renamings(2, 3, Mode.AFFINE)) == 6
    assert len(enumerate_renamings(3, 2, Mode.RELEVANT)) == 6


@pytest.mark.parametrize("mode", ALL_MODES)
def test_enumerate_matches_closed_forms(mode):
    for m in range(5):
        for n in range(5):
            assert len(enumerate_renamings(m, n, mode)) == count_renamings(m, n, mode)


def test_enumerate_limit():
    with pytest.raises(LimitExceeded):
        enumerate_renamings(7, 1, Mode.CARTESIAN)


@pytest.mark.parametrize("mode", ALL_MODES)
def test_compose_preserves_mode(mode):
    for m, n, k in itertools.product(range(4), repeat=3):
        for f in enumerate_renamings(m, n, mode):
            for g in enumerate_renamings(n, k, mode):
                compose(g, f)  # constructor re-validates the invariant


@pytest.mark.parametrize("mode", [Mode.LINEAR, Mode.AFFINE, Mode.RELEVANT])
def test_associativity_exhaustive(mode):
    sizes = range(5)
    for a, b, c, d in itertools.product(sizes, repeat=4):
        for f in enumerate_renamings(a, b, mode):
            for g in enumerate_renamings(b, c, mode):
                for h in enumerate_renamings(c, d, mode):
                    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_associativity_cartesian_small():
    for a, b, c, d in itertools.product(range(4), repeat=4):
        for f in enumerate_renamings(a, b, Mode.CARTESIAN):
            for g in enumerate_renamings(b, c, Mode.CARTESIAN):
                for h in enumerate_renamings(c, d, Mode.CARTESIAN):
                    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@st.composite
def cartesian_triples(draw):
    a = draw(st.integers(0, 4))
    b = draw(st.integers(0, 4))
    c = draw(st.integers(0, 4))
    d = draw(st.integers(0, 4))
    # a nonempty domain needs a nonempty codomain, fixed from the end
    if d == 0:
        c = 0
    if c == 0:
        b = 0
    if b == 0:
        a = 0
    f = Renaming(a, b, tuple(draw(st.integers(1, max(b, 1))) for _ in range(a)), Mode.CARTESIAN)
    g = Renaming(b, c, tuple(draw(st.integers(1, max(c, 1))) for _ in range(b)), Mode.CARTESIAN)
    h = Renaming(c, d, tuple(draw(st.integers(1, max(d, 1))) for _ in range(c)), Mode.CARTESIAN)
    return f, g, h


@settings(max_examples=300, deadline=None)
@given(cartesian_triples())
def test_associativity_cartesian_sampled_size4(triple):
    f, g, h = triple
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@pytest.mark.parametrize("mode", ALL_MODES)
def test_units(mode):
    for m in range(4):
        for n in range(4):
            for f in enumerate_renamings(m, n, mode):
                assert compose(f, identity(m, mode)) == f
                assert compose(identity(n, mode), f) == f


@pytest.mark.parametrize("mode", ALL_MODES)
def test_closure_equals_enumeration_small(mode):
    closure = generated_closure(mode, 3)
    expected = set()
    for m in range(4):
        for n in range(4):
            expected.update(enumerate_renamings(m, n, mode))
    assert closure == expected


def test_closure_affine_is_injective_only():
    for rho in generated_closure(Mode.AFFINE, 2):
        assert len(set(rho.mapping)) == rho.dom


def test_closure_limit():
    with pytest.raises(LimitExceeded):
        generated_closure(Mode.LINEAR, CLOSURE_LIMIT + 1)


def test_renaming_text_round_trip():
    rho = parse_renaming("[2 1 3]", Mode.LINEAR)
    assert rho.mapping == (2, 1, 3)
    assert print_renaming(rho) == "[2 1 3]"
    weak = parse_renaming("[1 2]", Mode.AFFINE, cod=3)
    assert weak.cod == 3
    assert parse_renaming("[]", Mode.RELEVANT).dom == 0
    with pytest.raises(ValueError):
        parse_renaming("2 1", Mode.LINEAR)
