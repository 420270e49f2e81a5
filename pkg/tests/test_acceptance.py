"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
print.  Criteria cover the axiom suites (fixture signature plus five seeded
random signatures), oracle equivalence, the product-rule bijections, the
extended-lemma equivalence, freeness of the renaming categories, the
counting fixtures, the initiality shadow, and CLI determinism.
"""

import math
import random
import subprocess
import sys
import time

import pytest

from substrate.contexts import Mode, count_renamings, enumerate_renamings, generated_closure
from substrate.enumeration import (
    EnumerationBounds,
    count_table,
    reference_enumerate_terms,
    terms_with_op_count,
)
from substrate.laws import (
    APPLICABILITY,
    LawBounds,
    check_axiom,
    run_suite,
    suite_passed,
)
from substrate.signatures import parse_signature, signature_of

BOUNDS = LawBounds(max_ctx=3, max_ops=3)
LAM_APP = signature_of(("lam", (1,)), ("app", (0, 0)))
ALL_MODES = list(Mode)

RANDOM_SEED = 0x5EED
RANDOM_SIGNATURE_COUNT = 5
# keeps each generated signature's axiom suites within the runtime budget
INSTANCE_ESTIMATE_CAP = 80_000

_SUITE_CACHE = {}


def lam_app_suite(mode):
    if mode not in _SUITE_CACHE:
        started = time.monotonic()
        reports = run_suite(LAM_APP, mode, BOUNDS)
        _SUITE_CACHE[mode] = (reports, time.monotonic() - started)
    return _SUITE_CACHE[mode]


def _verdict(number, name, ok):
    print(f"ACCEPTANCE {number} ({name}): {'PASS' if ok else 'FAIL'}")
    return ok


# ---------------------------------------------------------------------------
# random signature generation for criterion 1
#
# Arbitrary binding signatures with k <= 3 and n_i <= 2, drawn from a pool
# weighted towards the shapes real signatures use.  A draw is kept only if
# (i) every applicable (mode, axiom) pair will see at least one
# non-degenerate instance within bounds, and (ii) the estimated instance
# total stays within the desk-scale runtime budget.  Both screens are
# structural; law outcomes are never consulted.

ARITY_POOL = [
    ((), 2),
    ((0,), 3),
    ((1,), 4),
    ((2,), 2),
    ((0, 0), 4),
    ((1, 0), 3),
    ((0, 1), 3),
    ((1, 1), 2),
    ((2, 0), 1),
    ((0, 2), 1),
    ((2, 1), 1),
    ((2, 2), 1),
    ((0, 0, 0), 1),
    ((1, 0, 0), 1),
]


def _draw_candidate(rng):
    count = rng.randint(2, 3)
    arities = [a for a, w in ARITY_POOL for _ in range(w)]
    names = ["f", "g", "h"]
    return signature_of(
        *((names[i], rng.choice(arities)) for i in range(count))
    )


def _raw_count_table(sig, max_ctx, max_ops):
    """Scope-only term counts, computed arithmetically.  These bound the
    per-mode counts from above (they equal the cartesian counts), so they
    make a cheap size screen that never materialises terms."""
    memo = {}

    def raw(ctx, ops):
        key = (ctx, ops)
        if key in memo:
            return memo[key]
        if ops == 0:
            memo[key] = ctx
            return ctx
        total = 0
        for op in sig.operators:
            k = len(op.arity)
            if k == 0:
                total += 1 if ops == 1 else 0
                continue
            for shares in _ctx_splits(ops - 1, k):
                if sum(shares) != ops - 1:
                    continue
                product = 1
                for width, s in zip(op.arity, shares):
                    product *= raw(ctx + width, s)
                total += product
        memo[key] = total
        return total

    return {
        (ctx, ops): raw(ctx, ops)
        for ctx in range(max_ctx + 2)
        for ops in range(max_ops + 1)
    }


def _term_counts(sig, mode, max_ctx, max_ops):
    table = {}
    for ctx in range(max_ctx + 2):
        for ops in range(max_ops + 1):
            table[(ctx, ops)] = len(terms_with_op_count(sig, mode, ctx, ops))
    return table


def _ctx_splits(total, k):
    if k == 0:
        return [()] if total >= 0 else []
    out = []
    for head in range(total + 1):
        for tail in _ctx_splits(total - head, k - 1):
            out.append((head,) + tail)
    return out


def _law_instance_sums(sig, mode, law_id, table, bounds):
    """(instances, nondegenerate) for one axiom, from the term-count table;
    mirrors the iteration ranges of the law checks."""
    mc, mo = bounds.max_ctx, bounds.max_ops
    total = nondeg = 0

    def add(cells, weight=1):
        nonlocal total, nondeg
        for shares in _ctx_splits(mo, len(cells)):
            product = weight
            for ctx, s in zip(cells, shares):
                product *= table[(ctx, s)]
            total += product
            if sum(shares) > 0:
                nondeg += product

    if law_id == "a":
        for q in range(mc + 1):
            add((q,))
    elif law_id == "b":
        for m in range(1, mc + 1):
            add((m,))
    elif law_id == "c":
        for p, q, r in _ctx_splits(mc, 3):
            add((p + 1, q + 1, r))
    elif law_id == "d":
        for n in range(2, mc + 1):
            for q, r in _ctx_splits(mc, 2):
                add((n, q, r), weight=math.comb(n, 2))
    elif law_id == "e" and mode is Mode.CARTESIAN:
        for n in range(mc + 1):
            add((n, n))
    elif law_id == "e":
        for p, q in _ctx_splits(mc, 2):
            add((p, q))
    elif law_id == "f":
        for n in range(max(0, mc - 2) + 1):
            add((n + 2, n + 1, n))
    return total, nondeg


def _screen(sig, bounds):
    """(admissible, estimated instance total) for a candidate signature.

    The raw-count pre-screen rejects oversized candidates before any term
    is materialised; survivors get the exact per-mode check that every
    applicable (mode, axiom) pair will see a non-degenerate instance.
    """
    # the raw bound over-counts (it charges every mode at cartesian size),
    # so it only rules out monsters; the exact cap is applied below
    raw = _raw_count_table(sig, bounds.max_ctx, bounds.max_ops)
    if max(raw.values()) > INSTANCE_ESTIMATE_CAP:
        return False, -1
    raw_axioms = sum(
        _law_instance_sums(sig, Mode.CARTESIAN, law_id, raw, bounds)[0]
        for law_id in "abcdef"
    )
    if raw_axioms > 8 * INSTANCE_ESTIMATE_CAP:
        return False, -1
    grand = 0
    for mode in ALL_MODES:
        table = _term_counts(sig, mode, bounds.max_ctx, bounds.max_ops)
        for law_id in APPLICABILITY[mode]:
            total, nondeg = _law_instance_sums(sig, mode, law_id, table, bounds)
            if total == 0 or nondeg == 0:
                return False, grand
            grand += total
        if grand > INSTANCE_ESTIMATE_CAP:
            return False, grand
    return True, grand


def random_signatures(seed=RANDOM_SEED, count=RANDOM_SIGNATURE_COUNT):
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        candidate = _draw_candidate(rng)
        if candidate in seen:
            continue
        admissible, _ = _screen(candidate, BOUNDS)
        seen.add(candidate)
        if admissible:
            out.append(candidate)
    return out


# ---------------------------------------------------------------------------
# criterion 1: axiom suites


def test_criterion_1_axiom_suites():
    ok = True
    for mode in ALL_MODES:
        reports, elapsed = lam_app_suite(mode)
        by_law = {r.law: r for r in reports}
        for law_id in APPLICABILITY[mode]:
            report = by_law[law_id]
            ok = ok and report.passed and report.nondegenerate >= 1
    lam_app_total = sum(lam_app_suite(mode)[1] for mode in ALL_MODES)
    ok = ok and lam_app_total < 60.0

    for sig in random_signatures():
        started = time.monotonic()
        for mode in ALL_MODES:
            for law_id in APPLICABILITY[mode]:
                report = check_axiom(sig, mode, law_id, BOUNDS)
                ok = ok and report.passed and report.nondegenerate >= 1
        elapsed = time.monotonic() - started
        ok = ok and elapsed < 60.0
    assert _verdict(1, "axiom suites", ok)


# ---------------------------------------------------------------------------
# criterion 2: oracle equivalence


def test_criterion_2_oracle_equivalence():
    total = 0
    ok = True
    for mode in ALL_MODES:
        reports, _ = lam_app_suite(mode)
        oracle = next(r for r in reports if r.law == "oracle")
        ok = ok and oracle.passed
        total += oracle.instances
    ok = ok and total >= 1000
    assert _verdict(2, f"oracle equivalence, {total} instances", ok)


# ---------------------------------------------------------------------------
# criterion 3: product-rule bijections


def test_criterion_3_product_rule_bijections():
    from substrate.enumeration import enumerate_pairs
    from substrate.substitution import ALLOWED_CASES, product_rule_case

    ok = True
    for mode in ALL_MODES:
        reports, _ = lam_app_suite(mode)
        leibniz = next(r for r in reports if r.law == "leibniz")
        ok = ok and leibniz.passed
        for n in (1, 2, 3):
            pairs = enumerate_pairs(LAM_APP, EnumerationBounds(2, n, mode))
            tags = {}
            for left, right in pairs:
                tag = product_rule_case(LAM_APP, mode, left, right, n)
                ok = ok and tag in ALLOWED_CASES[mode]
                # decomposition keeps the pair intact: reconstruction is exact
                tags[(left, right)] = tag
            ok = ok and sum(
                1 for pair in pairs if tags[pair] is not None
            ) == len(pairs)
    assert _verdict(3, "product-rule bijections", ok)


# ---------------------------------------------------------------------------
# criterion 4: extended-substitution-lemma equivalence


def test_criterion_4_extended_lemma_equivalence():
    ok = True
    for mode in (Mode.LINEAR, Mode.AFFINE, Mode.RELEVANT):
        reports, _ = lam_app_suite(mode)
        extended = next(r for r in reports if r.law == "extended")
        ok = ok and extended.passed and extended.instances > 0
    assert _verdict(4, "extended-lemma equivalence", ok)


# ---------------------------------------------------------------------------
# criterion 5: freeness of the renaming categories


def test_criterion_5_freeness():
    ok = True
    for mode in ALL_MODES:
        closure = generated_closure(mode, 4)
        expected = set()
        for m in range(5):
            for n in range(5):
                expected.update(enumerate_renamings(m, n, mode))
        ok = ok and closure == expected
    ok = ok and count_renamings(4, 4, Mode.CARTESIAN) == 256
    ok = ok and len(enumerate_renamings(4, 4, Mode.CARTESIAN)) == 256
    assert _verdict(5, "freeness of context categories", ok)


# ---------------------------------------------------------------------------
# criterion 6: counting fixtures


GOLDEN_COUNTS = {
    # (mode, ctx, ops) -> count
    (Mode.CARTESIAN, 1, 1): 3,
    (Mode.AFFINE, 1, 1): 2,
    (Mode.RELEVANT, 1, 1): 1,
    (Mode.LINEAR, 1, 1): 0,
    (Mode.LINEAR, 2, 1): 2,
    (Mode.CARTESIAN, 0, 1): 1,
    (Mode.LINEAR, 0, 1): 1,
    (Mode.AFFINE, 0, 1): 1,
    (Mode.RELEVANT, 0, 1): 1,
}


def test_criterion_6_counting_fixtures():
    ok = True
    for (mode, ctx, ops), golden in GOLDEN_COUNTS.items():
        table = count_table(LAM_APP, mode, ctx, ops)
        generated = table[ctx][ops]
        filtered = [
            t
            for t in reference_enumerate_terms(
                LAM_APP, EnumerationBounds(ops, ctx, mode)
            )
        ]
        from substrate.terms import op_count

        reference = sum(1 for t in filtered if op_count(t) == ops)
        ok = ok and generated == reference == golden
    assert _verdict(6, "mode counting fixtures", ok)


# ---------------------------------------------------------------------------
# criterion 7: initiality shadow


def test_criterion_7_initiality_shadow():
    ok = True
    for mode in ALL_MODES:
        reports, _ = lam_app_suite(mode)
        hom = next(r for r in reports if r.law == "homomorphism")
        ok = ok and hom.passed and hom.instances > 0
    assert _verdict(7, "initiality shadow", ok)


# ---------------------------------------------------------------------------
# criterion 8: CLI determinism


def _cli_suite_output(sig_path):
    commands = [
        ["check-laws", sig_path, "--mode", "linear", "--json",
         "--max-ctx", "2", "--max-ops", "2"],
        ["check-laws", sig_path, "--mode", "relevant",
         "--max-ctx", "2", "--max-ops", "2"],
        ["enumerate", sig_path, "--mode", "cartesian", "--ctx", "2", "--ops", "2"],
        ["enumerate", sig_path, "--mode", "linear", "--ctx", "2", "--ops", "2",
         "--count-table"],
        ["subst", sig_path, "(app (var 1) (var 2))", "(app (var 1) (var 2))",
         "--mode", "linear", "--ctx", "2", "--payload-ctx", "2"],
        ["subst", sig_path, "(app (var 1) (var 2))", "(var 1)",
         "--mode", "relevant", "--ctx", "2", "--shared"],
        ["product-rule", sig_path, "(var 1)", "(var 1)",
         "--mode", "cartesian", "--ctx", "1", "--json"],
        ["rename", sig_path, "(app (var 1) (var 2))",
         "--mode", "linear", "--ctx", "2", "--map", "[2 1]"],
        ["parse", sig_path],
    ]
    chunks = []
    for argv in commands:
        result = subprocess.run(
            [sys.executable, "-m", "substrate", *argv],
            capture_output=True,
        )
        chunks.append(
            b"$ " + " ".join(argv).encode() + b"\n"
            + result.stdout + result.stderr
            + f"exit {result.returncode}\n".encode()
        )
    return b"".join(chunks)


def test_criterion_8_cli_determinism(tmp_path):
    sig_path = tmp_path / "lam.sig"
    sig_path.write_text("lam: (1)\napp: (0,0)\n", encoding="utf-8")
    first = _cli_suite_output(str(sig_path))
    second = _cli_suite_output(str(sig_path))
    ok = first == second and b"exit 0" in first
    assert _verdict(8, "CLI determinism", ok)
