import pytest

from substrate.contexts import Mode, enumerate_renamings
from substrate.enumeration import (
    EnumerationBounds,
    count_table,
    count_table_csv,
    count_table_text,
    enumerate_pairs,
    enumerate_terms,
    raw_terms,
    reference_enumerate_pairs,
    reference_enumerate_terms,
    terms_with_op_count,
)
from substrate.errors import LimitExceeded
from substrate.signatures import signature_of
from substrate.terms import parse_term, rename

SIG = signature_of(("lam", (1,)), ("app", (0, 0)))
ALL_MODES = list(Mode)


def t(text):
    return parse_term(SIG, text)


def exact(mode, ctx, ops):
    return terms_with_op_count(SIG, mode, ctx, ops)


def test_single_variable_any_mode():
    for mode in ALL_MODES:
        assert exact(mode, 1, 0) == [t("(var 1)")]


def test_linear_two_positions_one_op():
    assert exact(Mode.LINEAR, 2, 1) == [
        t("(app (var 1) (var 2))"),
        t("(app (var 2) (var 1))"),
    ]


def test_mode_counts_n1_s1():
    assert sorted(map(str, exact(Mode.CARTESIAN, 1, 1))) is not None
    assert len(exact(Mode.CARTESIAN, 1, 1)) == 3
    assert len(exact(Mode.AFFINE, 1, 1)) == 2
    assert len(exact(Mode.RELEVANT, 1, 1)) == 1
    assert len(exact(Mode.LINEAR, 1, 1)) == 0
    assert set(exact(Mode.CARTESIAN, 1, 1)) == {
        t("(lam (var 1))"), t("(lam (var 2))"), t("(app (var 1) (var 1))"),
    }
    assert exact(Mode.RELEVANT, 1, 1) == [t("(app (var 1) (var 1))")]


def test_closed_one_op():
    for mode in ALL_MODES:
        assert exact(mode, 0, 1) == [t("(lam (var 1))")]


def test_enumerate_terms_ordering_and_uniqueness():
    for mode in ALL_MODES:
        out = enumerate_terms(SIG, EnumerationBounds(3, 2, mode))
        assert len(set(out)) == len(out)
        from substrate.terms import op_count
        sizes = [op_count(term) for term in out]
        assert sizes == sorted(sizes)


@pytest.mark.parametrize("mode", ALL_MODES)
def test_generator_agrees_with_filter_oracle(mode):
    for ctx in range(4):
        bounds = EnumerationBounds(3, ctx, mode)
        assert enumerate_terms(SIG, bounds) == reference_enumerate_terms(SIG, bounds)


@pytest.mark.parametrize("mode", ALL_MODES)
def test_generator_agrees_on_second_signature(mode):
    sig = signature_of(("mu", (1, 0)), ("c", ()), ("pair", (0, 0)))
    for ctx in range(3):
        bounds = EnumerationBounds(2, ctx, mode)
        assert enumerate_terms(sig, bounds) == reference_enumerate_terms(sig, bounds)


def test_mode_monotonicity():
    for ctx in range(4):
        for ops in range(4):
            linear = set(exact(Mode.LINEAR, ctx, ops))
            affine = set(exact(Mode.AFFINE, ctx, ops))
            relevant = set(exact(Mode.RELEVANT, ctx, ops))
            cartesian = set(exact(Mode.CARTESIAN, ctx, ops))
            assert linear <= affine <= cartesian
            assert linear <= relevant <= cartesian


def test_linear_counts_permutation_invariant():
    for ctx in (2, 3):
        for ops in (1, 2):
            terms = set(exact(Mode.LINEAR, ctx, ops))
            for rho in enumerate_renamings(ctx, ctx, Mode.LINEAR):
                assert {rename(SIG, Mode.LINEAR, x, rho) for x in terms} == terms


def test_pairs_examples():
    assert enumerate_pairs(SIG, EnumerationBounds(0, 1, Mode.LINEAR)) == []
    assert enumerate_pairs(SIG, EnumerationBounds(0, 1, Mode.CARTESIAN)) == [
        (t("(var 1)"), t("(var 1)"))
    ]
    affine = enumerate_pairs(SIG, EnumerationBounds(0, 2, Mode.AFFINE))
    assert set(affine) == {
        (t("(var 1)"), t("(var 2)")),
        (t("(var 2)"), t("(var 1)")),
    }


@pytest.mark.parametrize("mode", ALL_MODES)
def test_pairs_agree_with_filter_oracle(mode):
    for ctx in range(3):
        bounds = EnumerationBounds(1, ctx, mode)
        assert sorted(map(repr, enumerate_pairs(SIG, bounds))) == sorted(
            map(repr, reference_enumerate_pairs(SIG, bounds))
        )


def test_count_table_fixtures():
    expected = {
        Mode.CARTESIAN: 3,
        Mode.AFFINE: 2,
        Mode.RELEVANT: 1,
        Mode.LINEAR: 0,
    }
    for mode, count in expected.items():
        table = count_table(SIG, mode, 2, 1)
        assert table[1][1] == count
        assert table[1][0] == 1
        assert table[0][1] == 1
    assert count_table(SIG, Mode.LINEAR, 2, 1)[2][1] == 2


def test_count_table_renderings():
    table = count_table(SIG, Mode.LINEAR, 1, 1)
    assert count_table_csv(table) == "0,0,0\n0,1,1\n1,0,1\n1,1,0"
    text = count_table_text(table)
    assert text.splitlines()[0].startswith("n\\s")


def test_raw_terms_counts():
    assert len(raw_terms(SIG, 1, 0)) == 1
    # one op at context 1: lam over 2 bodies, app over 1x1 leaves
    assert len(raw_terms(SIG, 1, 1)) == 3


def test_ceilings():
    with pytest.raises(LimitExceeded):
        enumerate_terms(SIG, EnumerationBounds(99, 1, Mode.LINEAR))
    with pytest.raises(LimitExceeded):
        enumerate_terms(SIG, EnumerationBounds(1, 7, Mode.LINEAR))
    with pytest.raises(LimitExceeded):
        count_table(SIG, Mode.LINEAR, 7, 1)


def test_ops_ceiling_env_override(monkeypatch):
    monkeypatch.setenv("SUBSTRATE_MAX_OPS", "6")
    EnumerationBounds(6, 1, Mode.LINEAR).validate()
    monkeypatch.setenv("SUBSTRATE_MAX_OPS", "2")
    with pytest.raises(LimitExceeded):
        EnumerationBounds(3, 1, Mode.LINEAR).validate()
