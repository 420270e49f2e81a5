"""The law-verification engine.

Each check exhaustively instantiates one equation over enumerated terms,
pairings or triples within desk-scale bounds and compares both sides
structurally.  Results are LawReports: law id, mode, instance count and a
list of counterexamples (empty iff the law passed).

The per-mode axiom sets are fixed:

    cartesian  a b e f
    linear     a b c d
    affine     a b c d e
    relevant   a b c d f

with (a) and (b) the unit laws, (c) and (d) sequential and parallel
composition, (e) the weakening law and (f) the shared-context substitution
lemma.  Linear, affine and relevant modes additionally satisfy a single
routed equation (the extended substitution lemma) equivalent to their
axiom set beyond the units; the equivalence itself is checked at desk scale
by also evaluating both sides under deliberately broken substitution
engines and demanding the verdicts agree.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Optional

from .contexts import Mode, Renaming, enumerate_renamings
from .errors import SubstrateError
from .enumeration import EnumerationBounds, enumerate_pairs, pair_components, terms_with_op_count
from .oracle import (
    NBind,
    NOp,
    NVar,
    alpha_equal,
    oracle_substitute,
    rename_free,
    substitute_named,
)
from .substitution import (
    ALLOWED_CASES,
    ProductRuleCase,
    SubstitutionProblem,
    _substitute_last,
    check_sigma_homomorphism,
    compose_at,
    product_rule_case,
    replace_shared,
    replace_split,
)
from .terms import (
    Algebra,
    Op,
    Var,
    apply_position_map,
    component_profile,
    count_occurrences,
    fold,
    fold_by_table,
    op_count,
    print_term,
    rename,
    swap_last,
    weaken,
)

APPLICABILITY = {
    Mode.CARTESIAN: ("a", "b", "e", "f"),
    Mode.LINEAR: ("a", "b", "c", "d"),
    Mode.AFFINE: ("a", "b", "c", "d", "e"),
    Mode.RELEVANT: ("a", "b", "c", "d", "f"),
}

MAX_RECORDED_FAILURES = 25


@dataclass(frozen=True, slots=True)
class LawBounds:
    """Instance ceilings: joint context budget and joint operator budget
    across the components of each instance."""

    max_ctx: int = 3
    max_ops: int = 3


@dataclass
class LawReport:
    law: str
    mode: Mode
    instances: int = 0
    failures: list = field(default_factory=list)
    nondegenerate: int = 0

    @property
    def passed(self):
        return not self.failures

    def record(self, nondegenerate, failure=None):
        self.instances += 1
        if nondegenerate:
            self.nondegenerate += 1
        if failure is not None and len(self.failures) < MAX_RECORDED_FAILURES:
            self.failures.append(failure)

    def to_dict(self):
        return {
            "law": self.law,
            "mode": str(self.mode),
            "instances": self.instances,
            "failures": self.failures,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


# ---------------------------------------------------------------------------
# engines: the real substitution operations and deliberately broken ones


@dataclass(frozen=True)
class Engine:
    """The substitution operations a law instance is evaluated against.

    The real engine drives the public, validating operations.  Mutant
    engines wrap a broken core and skip validation so that their wrong
    answers surface as inequalities rather than precondition errors.
    """

    name: str
    core: Callable
    validating: bool

    def split(self, sig, mode, body, body_ctx, payload, payload_ctx):
        if self.validating:
            return replace_split(sig, mode, body, body_ctx, payload, payload_ctx)
        return self.core(sig, mode, body, body_ctx - 1, payload, payload_ctx)

    def merged(self, sig, mode, body, n, payload):
        wide = self.core(sig, mode, body, n, payload, n)
        codiagonal = tuple(range(1, n + 1)) + tuple(range(1, n + 1))
        return apply_position_map(wide, codiagonal, n)

    def shared(self, sig, mode, body, payload, n):
        if self.validating:
            return replace_shared(sig, mode, body, payload, n)
        return self.merged(sig, mode, body, n, payload)

    def compose(self, sig, mode, t, n, i, u, u_ctx):
        if self.validating:
            return compose_at(sig, mode, t, n, i, u, u_ctx)
        q = u_ctx
        move = tuple(
            k if k < i else (n if k == i else k - 1) for k in range(1, n + 1)
        )
        moved = apply_position_map(t, move, n)
        wide = self.core(sig, mode, moved, n - 1, u, q)
        renumber = (
            tuple(range(1, i))
            + tuple(range(i + q, n + q))
            + tuple(range(i, i + q))
        )
        return apply_position_map(wide, renumber, n - 1 + q)


REAL_ENGINE = Engine("real", _substitute_last, validating=True)


def _core_skip_rotation(sig, mode, body, p, payload, q):
    return _substitute_last(sig, mode, body, p, payload, q, rotate=False)


def _core_skip_exchange(sig, mode, body, p, payload, q):
    return _substitute_last(sig, mode, body, p, payload, q, exchange=False)


MUTANT_ENGINES = (
    Engine("skip-binder-rotation", _core_skip_rotation, validating=False),
    Engine("skip-block-exchange", _core_skip_exchange, validating=False),
)

# Evaluates nothing: both sides of every equation become None, so a check
# run against it counts instances without paying for substitutions.
NULL_ENGINE = Engine(
    "instance-probe", lambda sig, mode, body, p, payload, q: None,
    validating=False,
)


def probe_axiom_instances(sig, mode, law_id, bounds=None):
    """Instance and non-degenerate-instance counts for one axiom, without
    evaluating the equation.  Used to screen generated signatures for
    admissibility before running the real suite."""
    bounds = bounds or LawBounds()
    if law_id not in APPLICABILITY[mode]:
        raise ValueError(f"axiom {law_id!r} is inapplicable in {mode} mode")
    report = LawReport(law_id, mode)
    _AXIOM_CHECKS[law_id](sig, mode, bounds, NULL_ENGINE, report)
    return report.instances, report.nondegenerate


def _eval(thunk):
    """Evaluate one side of an equation; errors become comparable values so
    broken or probing engines register as failures instead of crashes."""
    try:
        return thunk()
    except (SubstrateError, AssertionError, AttributeError, TypeError) as exc:
        return ("error", exc.__class__.__name__, str(exc))


def _sides_equal(lhs, rhs):
    return lhs == rhs


def _show(value):
    if isinstance(value, (Var, Op)):
        return print_term(value)
    return repr(value)


# ---------------------------------------------------------------------------
# instance spaces


class _Space:
    """Cached enumerations of wellformed terms and pairing components."""

    def __init__(self, sig, mode):
        self.sig = sig
        self.mode = mode
        self._terms = {}
        self._components = {}

    def terms(self, ctx, ops):
        key = (ctx, ops)
        if key not in self._terms:
            self._terms[key] = terms_with_op_count(self.sig, self.mode, ctx, ops)
        return self._terms[key]

    def components(self, ctx, ops):
        key = (ctx, ops)
        if key not in self._components:
            exact = [
                t
                for t in pair_components(self.sig, self.mode, ctx, ops)
                if op_count(t) == ops
            ]
            self._components[key] = exact
        return self._components[key]

    def terms_split(self, ctxs, total_ops):
        """All tuples of wellformed terms at the given contexts whose
        operator counts sum to at most total_ops."""
        for shares in _bounded_shares(total_ops, len(ctxs)):
            pools = [self.terms(c, s) for c, s in zip(ctxs, shares)]
            if any(not pool for pool in pools):
                continue
            yield from itertools.product(*pools)

    def components_split(self, ctxs, total_ops):
        for shares in _bounded_shares(total_ops, len(ctxs)):
            pools = [self.components(c, s) for c, s in zip(ctxs, shares)]
            if any(not pool for pool in pools):
                continue
            yield from itertools.product(*pools)


def _bounded_shares(total, k):
    """All k-tuples of naturals with sum <= total."""
    if k == 0:
        yield ()
        return
    for head in range(total + 1):
        for tail in _bounded_shares(total - head, k - 1):
            yield (head,) + tail


_SPACES = {}


def _space(sig, mode):
    key = (sig, mode)
    if key not in _SPACES:
        _SPACES[key] = _Space(sig, mode)
    return _SPACES[key]


def _ctx_splits(total, k):
    """All k-tuples of naturals with sum <= total."""
    return list(_bounded_shares(total, k))


def enumerate_substitution_problems(sig, mode, bounds):
    """The substitution problems checked by the oracle-agreement and
    commutation laws: body at contexts up to max_ctx, payload likewise,
    operator counts jointly bounded."""
    space = _space(sig, mode)
    problems = []
    for body_ctx in range(1, bounds.max_ctx + 1):
        for payload_ctx in range(0, bounds.max_ctx + 1):
            for body, payload in space.terms_split(
                (body_ctx, payload_ctx), bounds.max_ops
            ):
                problems.append(
                    SubstitutionProblem(mode, body, body_ctx, payload, payload_ctx)
                )
    return problems


# ---------------------------------------------------------------------------
# the axiom checks


def _check_a(sig, mode, bounds, engine, report):
    space = _space(sig, mode)
    for q in range(0, bounds.max_ctx + 1):
        for (u,) in space.terms_split((q,), bounds.max_ops):
            lhs = _eval(lambda: engine.split(sig, mode, Var(1), 1, u, q))
            if not _sides_equal(lhs, u):
                report.record(
                    op_count(u) > 0,
                    {"payload": print_term(u), "ctx": q, "lhs": _show(lhs), "rhs": print_term(u)},
                )
            else:
                report.record(op_count(u) > 0)


def _check_b(sig, mode, bounds, engine, report):
    space = _space(sig, mode)
    for m in range(1, bounds.max_ctx + 1):
        for (t,) in space.terms_split((m,), bounds.max_ops):
            lhs = _eval(lambda: engine.split(sig, mode, t, m, Var(1), 1))
            if not _sides_equal(lhs, t):
                report.record(
                    op_count(t) > 0,
                    {"body": print_term(t), "ctx": m, "lhs": _show(lhs), "rhs": print_term(t)},
                )
            else:
                report.record(op_count(t) > 0)


def _check_c(sig, mode, bounds, engine, report):
    space = _space(sig, mode)
    for p, q, r in _ctx_splits(bounds.max_ctx, 3):
        for t, u, v in space.terms_split((p + 1, q + 1, r), bounds.max_ops):
            lhs = _eval(
                lambda: engine.split(
                    sig, mode,
                    engine.split(sig, mode, t, p + 1, u, q + 1),
                    p + q + 1, v, r,
                )
            )
            rhs = _eval(
                lambda: engine.split(
                    sig, mode, t, p + 1,
                    engine.split(sig, mode, u, q + 1, v, r),
                    q + r,
                )
            )
            degenerate = op_count(t) + op_count(u) + op_count(v) == 0
            if _sides_equal(lhs, rhs):
                report.record(not degenerate)
            else:
                report.record(
                    not degenerate,
                    {
                        "t": print_term(t), "t_ctx": p + 1,
                        "u": print_term(u), "u_ctx": q + 1,
                        "v": print_term(v), "v_ctx": r,
                        "lhs": _show(lhs), "rhs": _show(rhs),
                    },
                )


def _check_d(sig, mode, bounds, engine, report):
    space = _space(sig, mode)
    for n in range(2, bounds.max_ctx + 1):
        for q, r in _ctx_splits(bounds.max_ctx, 2):
            for t, u, v in space.terms_split((n, q, r), bounds.max_ops):
                for i, j in itertools.combinations(range(1, n + 1), 2):
                    lhs = _eval(
                        lambda: engine.compose(
                            sig, mode,
                            engine.compose(sig, mode, t, n, i, u, q),
                            n - 1 + q, j + q - 1, v, r,
                        )
                    )
                    rhs = _eval(
                        lambda: engine.compose(
                            sig, mode,
                            engine.compose(sig, mode, t, n, j, v, r),
                            n - 1 + r, i, u, q,
                        )
                    )
                    degenerate = op_count(t) + op_count(u) + op_count(v) == 0
                    if _sides_equal(lhs, rhs):
                        report.record(not degenerate)
                    else:
                        report.record(
                            not degenerate,
                            {
                                "t": print_term(t), "ctx": n, "i": i, "j": j,
                                "u": print_term(u), "u_ctx": q,
                                "v": print_term(v), "v_ctx": r,
                                "lhs": _show(lhs), "rhs": _show(rhs),
                            },
                        )


def _check_e(sig, mode, bounds, engine, report):
    space = _space(sig, mode)
    if mode is Mode.CARTESIAN:
        for n in range(0, bounds.max_ctx + 1):
            for t, u in space.terms_split((n, n), bounds.max_ops):
                lhs = _eval(
                    lambda: engine.shared(sig, mode, weaken(sig, mode, t, n), u, n)
                )
                degenerate = op_count(t) + op_count(u) == 0
                if _sides_equal(lhs, t):
                    report.record(not degenerate)
                else:
                    report.record(
                        not degenerate,
                        {"t": print_term(t), "ctx": n, "u": print_term(u),
                         "lhs": _show(lhs), "rhs": print_term(t)},
                    )
        return
    # affine: a weakened body discards the payload; the result is t over
    # the widened context, so binder positions reindex accordingly
    for p, q in _ctx_splits(bounds.max_ctx, 2):
        for t, u in space.terms_split((p, q), bounds.max_ops):
            lhs = _eval(
                lambda: engine.split(sig, mode, weaken(sig, mode, t, p), p + 1, u, q)
            )
            rhs = _embed(t, p, p + q)
            degenerate = op_count(t) + op_count(u) == 0
            if _sides_equal(lhs, rhs):
                report.record(not degenerate)
            else:
                report.record(
                    not degenerate,
                    {"t": print_term(t), "ctx": p, "u": print_term(u), "u_ctx": q,
                     "lhs": _show(lhs), "rhs": _show(rhs)},
                )


def _check_f(sig, mode, bounds, engine, report):
    space = _space(sig, mode)
    for n in range(0, max(0, bounds.max_ctx - 2) + 1):
        for t, u, v in space.terms_split((n + 2, n + 1, n), bounds.max_ops):
            lhs = _eval(
                lambda: engine.shared(
                    sig, mode, engine.shared(sig, mode, t, u, n + 1), v, n
                )
            )
            rhs = _eval(
                lambda: engine.shared(
                    sig, mode,
                    engine.shared(
                        sig, mode, swap_last(sig, mode, t, n + 2),
                        _embed(v, n, n + 1), n + 1,
                    ),
                    engine.shared(sig, mode, u, v, n),
                    n,
                )
            )
            degenerate = op_count(t) + op_count(u) + op_count(v) == 0
            if _sides_equal(lhs, rhs):
                report.record(not degenerate)
            else:
                report.record(
                    not degenerate,
                    {
                        "t": print_term(t), "ctx": n + 2,
                        "u": print_term(u), "v": print_term(v),
                        "lhs": _show(lhs), "rhs": _show(rhs),
                    },
                )


def _embed(t, n, m):
    """View a term at context n over the larger context m >= n: free
    indices are unchanged, binder blocks reindex to the new top.  This is
    the raw top-embedding; no mode capability is consulted."""
    return apply_position_map(t, tuple(range(1, n + 1)), m)


def _drop_top(t, n):
    """View a term at context n + 1 that does not use the top position as a
    term at context n."""
    return apply_position_map(t, tuple(range(1, n + 1)) + (0,), n)


_AXIOM_CHECKS = {
    "a": _check_a,
    "b": _check_b,
    "c": _check_c,
    "d": _check_d,
    "e": _check_e,
    "f": _check_f,
}


def check_axiom(sig, mode, law_id, bounds=None, engine=REAL_ENGINE):
    """Exhaustively check one substitution-algebra axiom for a mode.

    Raises ValueError when the axiom is inapplicable to the mode.
    """
    bounds = bounds or LawBounds()
    if law_id not in APPLICABILITY[mode]:
        raise ValueError(f"axiom {law_id!r} is inapplicable in {mode} mode")
    report = LawReport(law_id, mode)
    _AXIOM_CHECKS[law_id](sig, mode, bounds, engine, report)
    _flag_degenerate(sig, report)
    return report


def _flag_degenerate(sig, report):
    """An instance set that never exercises an operator is a suite failure,
    except over the empty signature where variable-only instances are all
    there is."""
    if not sig.operators:
        return
    if report.instances == 0 or report.nondegenerate == 0:
        report.failures.append(
            {"reason": "no non-degenerate instances within bounds"}
        )


# ---------------------------------------------------------------------------
# extended substitution lemma


def _extended_instances(sig, mode, bounds):
    """Triples (t, u, v) over a shared ambient context n: t at n + 2 with
    the routed position at n + 1 and its own target last, u at n + 1, v at
    n.  Validity is the joint pairing condition of the mode."""
    space = _space(sig, mode)
    out = []
    for n in range(0, max(0, bounds.max_ctx - 2) + 1):
        for t, u, v in space.components_split((n + 2, n + 1, n), bounds.max_ops):
            ct = component_profile(sig, mode, t, n + 2).counts
            cu = component_profile(sig, mode, u, n + 1).counts
            cv = component_profile(sig, mode, v, n).counts
            inner = ct[n + 1]
            routed = ct[n] + cu[n]
            ambient = [ct[i] + cu[i] + cv[i] for i in range(n)]
            if mode is Mode.LINEAR:
                ok = inner == 1 and routed == 1 and all(c == 1 for c in ambient)
            elif mode is Mode.AFFINE:
                ok = inner <= 1 and routed <= 1 and all(c <= 1 for c in ambient)
            else:
                ok = inner >= 1 and routed >= 1 and all(c >= 1 for c in ambient)
            if ok:
                out.append((n, t, u, v, ct[n] > 0, cu[n] > 0))
    return out


def _extended_sides(sig, mode, engine, instance):
    """LEFT: substitute u for t's target, then v for the routed position.
    RIGHT: route v into whichever of t, u uses the routed position first,
    then perform the outer substitution.  Terms that skip the routed
    position are reindexed into the narrower context; v is raised into the
    wider one when it lands inside t."""
    n, t, u, v, in_t, in_u = instance

    def left():
        s1 = engine.merged(sig, mode, t, n + 1, u)
        return engine.merged(sig, mode, s1, n, v)

    def right():
        if in_t:
            t2 = engine.merged(
                sig, mode, swap_last(sig, mode, t, n + 2), n + 1,
                _embed(v, n, n + 1),
            )
        else:
            drop = tuple(range(1, n + 1)) + (0, n + 1)
            t2 = apply_position_map(t, drop, n + 1)
        u2 = engine.merged(sig, mode, u, n, v) if in_u else _drop_top(u, n)
        return engine.merged(sig, mode, t2, n, u2)

    return _eval(left), _eval(right)


def _axiom_set_passes(sig, mode, bounds, engine):
    ids = [i for i in APPLICABILITY[mode] if i not in ("a", "b")]
    for law_id in ids:
        report = LawReport(law_id, mode)
        _AXIOM_CHECKS[law_id](sig, mode, bounds, engine, report)
        if report.failures:
            return False
    return True


def check_extended_substitution_lemma(sig, mode, bounds=None):
    """Check the routed equation on enumerated instances, and check the
    desk-scale equivalence: under every engine (the real one and each
    broken one), the mode's axiom set beyond the units passes exactly when
    the routed equation passes.

    Both sides of the equivalence quantify over instance sets generated at
    the same bounds; those bounds are raised to at least the defaults so
    that both sets contain binder-crossing instances whenever the
    signature provides any (at tiny bounds one quantifier can be
    vacuously richer than the other)."""
    bounds = bounds or LawBounds()
    if mode is Mode.CARTESIAN:
        raise ValueError("the extended substitution lemma is stated for "
                         "linear, affine and relevant modes")
    report = LawReport("extended", mode)
    instances = _extended_instances(sig, mode, bounds)
    for instance in instances:
        lhs, rhs = _extended_sides(sig, mode, REAL_ENGINE, instance)
        n, t, u, v, _, _ = instance
        degenerate = op_count(t) + op_count(u) + op_count(v) == 0
        if _sides_equal(lhs, rhs):
            report.record(not degenerate)
        else:
            report.record(
                not degenerate,
                {
                    "t": print_term(t), "ctx": n + 2,
                    "u": print_term(u), "v": print_term(v),
                    "lhs": _show(lhs), "rhs": _show(rhs),
                },
            )
    defaults = LawBounds()
    eq_bounds = LawBounds(
        max(bounds.max_ctx, defaults.max_ctx),
        max(bounds.max_ops, defaults.max_ops),
    )
    eq_instances = (
        instances
        if eq_bounds == bounds
        else _extended_instances(sig, mode, eq_bounds)
    )
    for engine in (REAL_ENGINE,) + MUTANT_ENGINES:
        axioms_ok = _axiom_set_passes(sig, mode, eq_bounds, engine)
        extended_ok = all(
            _sides_equal(*_extended_sides(sig, mode, engine, inst))
            for inst in eq_instances
        )
        if axioms_ok != extended_ok:
            report.failures.append(
                {
                    "reason": "axiom set and extended lemma disagree",
                    "engine": engine.name,
                    "axioms_pass": axioms_ok,
                    "extended_pass": extended_ok,
                }
            )
    _flag_degenerate(sig, report)
    return report


# ---------------------------------------------------------------------------
# naturality, product-rule bijection, homomorphism, oracle agreement


def _block_sum(rho_body, rho_payload, mode):
    mapping = rho_body.mapping + tuple(
        rho_body.cod + j for j in rho_payload.mapping
    )
    return Renaming(
        rho_body.dom + rho_payload.dom,
        rho_body.cod + rho_payload.cod,
        mapping,
        mode,
    )


def _extend_top(rho, mode):
    return Renaming(
        rho.dom + 1, rho.cod + 1, rho.mapping + (rho.cod + 1,), mode
    )


def check_naturality(sig, mode, bounds=None):
    """Renaming the two blocks of a substitution result equals substituting
    the renamed inputs."""
    bounds = bounds or LawBounds()
    inner = LawBounds(max(0, bounds.max_ctx - 1), max(0, bounds.max_ops - 1))
    report = LawReport("naturality", mode)
    for problem in enumerate_substitution_problems(sig, mode, inner):
        p = problem.body_ctx - 1
        q = problem.payload_ctx
        for p2 in range(0, inner.max_ctx + 1):
            for rho_b in enumerate_renamings(p, p2, mode):
                for q2 in range(0, inner.max_ctx + 1):
                    for rho_p in enumerate_renamings(q, q2, mode):
                        lhs = _eval(
                            lambda: rename(
                                sig, mode,
                                replace_split(
                                    sig, mode, problem.body, p + 1,
                                    problem.payload, q,
                                ),
                                _block_sum(rho_b, rho_p, mode),
                            )
                        )
                        rhs = _eval(
                            lambda: replace_split(
                                sig, mode,
                                rename(sig, mode, problem.body, _extend_top(rho_b, mode)),
                                p2 + 1,
                                rename(sig, mode, problem.payload, rho_p),
                                q2,
                            )
                        )
                        degenerate = (
                            op_count(problem.body) + op_count(problem.payload) == 0
                        )
                        if _sides_equal(lhs, rhs):
                            report.record(not degenerate)
                        else:
                            report.record(
                                not degenerate,
                                {
                                    "body": print_term(problem.body),
                                    "body_ctx": p + 1,
                                    "payload": print_term(problem.payload),
                                    "payload_ctx": q,
                                    "rho_body": list(rho_b.mapping),
                                    "rho_payload": list(rho_p.mapping),
                                    "lhs": _show(lhs), "rhs": _show(rhs),
                                },
                            )
    _flag_degenerate(sig, report)
    return report


def _forced_budget(mode):
    return (1, 1) if mode in (Mode.LINEAR, Mode.AFFINE) else (1, None)


def _tagged_pair_count(sig, mode, n, max_ops, tag):
    """Independent count of the pairings carrying a tag, built from forced
    occurrence budgets rather than profile classification."""
    from .enumeration import _Generator, _component_budget, _joint_ok

    if mode is Mode.CARTESIAN:
        if tag is not ProductRuleCase.BOTH:
            return 0
        bounds = EnumerationBounds(max_ops, n, mode)
        return len(enumerate_pairs(sig, bounds))

    amb = _component_budget(mode)
    use, drop = _forced_budget(mode), (0, 0)
    if tag is ProductRuleCase.LEFT_HAS_IT:
        left_last, right_last = use, drop
    elif tag is ProductRuleCase.RIGHT_HAS_IT:
        left_last, right_last = drop, use
    elif tag is ProductRuleCase.NEITHER:
        left_last, right_last = drop, drop
    else:
        left_last, right_last = use, use
    gen = _Generator(sig, mode)
    lefts, rights = [], []
    for ops in range(max_ops + 1):
        lefts.extend(gen.terms((amb,) * (n - 1) + (left_last,), ops))
        rights.extend(gen.terms((amb,) * (n - 1) + (right_last,), ops))
    count = 0
    for left in lefts:
        pl = component_profile(sig, mode, left, n).counts
        for right in rights:
            pr = component_profile(sig, mode, right, n).counts
            if all(_joint_ok(mode, a + b) for a, b in zip(pl[:-1], pr[:-1])):
                count += 1
    return count


def check_leibniz(sig, mode, bounds=None):
    """The product-rule bijection: classifying every pairing over an
    extended context by its tag partitions the pairings, tags stay within
    the mode's allowed set, and the per-tag counts agree with independent
    budget-forced enumeration."""
    bounds = bounds or LawBounds()
    report = LawReport("leibniz", mode)
    pair_ops = min(bounds.max_ops, 2)
    for n in range(1, bounds.max_ctx + 1):
        pairs = enumerate_pairs(sig, EnumerationBounds(pair_ops, n, mode))
        tag_counts = {tag: 0 for tag in ProductRuleCase}
        for left, right in pairs:
            failure = None
            tag = _eval(lambda: product_rule_case(sig, mode, left, right, n))
            if isinstance(tag, ProductRuleCase):
                tag_counts[tag] += 1
                if tag not in ALLOWED_CASES[mode]:
                    failure = {
                        "left": print_term(left), "right": print_term(right),
                        "ctx": n, "tag": tag.value,
                        "reason": "tag outside the mode's allowed set",
                    }
            else:
                failure = {
                    "left": print_term(left), "right": print_term(right),
                    "ctx": n, "error": _show(tag),
                }
            degenerate = op_count(left) + op_count(right) == 0
            report.record(not degenerate, failure)
        total = sum(tag_counts.values())
        if total != len(pairs):
            report.failures.append(
                {"ctx": n, "reason": "classification is not total"}
            )
        for tag in ALLOWED_CASES[mode]:
            independent = _tagged_pair_count(sig, mode, n, pair_ops, tag)
            if independent != tag_counts[tag]:
                report.failures.append(
                    {
                        "ctx": n,
                        "tag": tag.value,
                        "classified": tag_counts[tag],
                        "summand": independent,
                        "reason": "summand cardinality mismatch",
                    }
                )
    _flag_degenerate(sig, report)
    return report


def check_oracle_agreement(sig, mode, bounds=None):
    """replace_split and the name-based oracle agree on every enumerated
    substitution problem."""
    bounds = bounds or LawBounds()
    report = LawReport("oracle", mode)
    for problem in enumerate_substitution_problems(sig, mode, bounds):
        lhs = _eval(
            lambda: replace_split(
                sig, mode, problem.body, problem.body_ctx,
                problem.payload, problem.payload_ctx,
            )
        )
        rhs = _eval(lambda: oracle_substitute(sig, mode, problem))
        degenerate = op_count(problem.body) + op_count(problem.payload) == 0
        if _sides_equal(lhs, rhs):
            report.record(not degenerate)
        else:
            report.record(
                not degenerate,
                {
                    "body": print_term(problem.body),
                    "body_ctx": problem.body_ctx,
                    "payload": print_term(problem.payload),
                    "payload_ctx": problem.payload_ctx,
                    "lhs": _show(lhs), "rhs": _show(rhs),
                },
            )
    _flag_degenerate(sig, report)
    return report


# ---------------------------------------------------------------------------
# initiality: fold is the unique structure- and substitution-respecting map


@dataclass(frozen=True)
class TestAlgebra:
    """A law fixture: an algebra together with a substitution operation on
    its carrier and an equality for carrier values."""

    name: str
    algebra: Algebra
    subst: Optional[Callable] = None
    equal: Callable = lambda a, b: a == b


def _one_point_algebra():
    return TestAlgebra(
        name="one-point",
        algebra=Algebra(
            var_case=lambda i, n: "*",
            op_case=lambda op, values, n: "*",
            rename_case=lambda value, rho: "*",
        ),
        subst=lambda vb, p, vp, q: "*",
    )


def _size_decorated_algebra(sig, mode):
    def subst(vb, p, vp, q):
        body, body_size = vb
        payload, payload_size = vp
        term = _substitute_last(sig, mode, body, p, payload, q)
        copies = count_occurrences(body, p + 1)
        return (term, body_size + copies * payload_size)

    return TestAlgebra(
        name="size-decorated",
        algebra=Algebra(
            var_case=lambda i, n: (Var(i), 0),
            op_case=lambda op, values, n: (
                Op(op, tuple(v[0] for v in values)),
                1 + sum(v[1] for v in values),
            ),
            rename_case=lambda value, rho: (
                apply_position_map(value[0], rho.mapping, rho.cod),
                value[1],
            ),
        ),
        subst=subst,
    )


def _named_algebra(sig):
    """Carrier: named terms with canonical free names x1..xn.  Substitution
    goes through the textbook named algorithm, so commutation with fold
    restates oracle agreement."""
    counter = itertools.count(1)

    def fresh():
        return (f"g{next(counter)}" for _ in itertools.count())

    def freshen(t, gen):
        if isinstance(t, NVar):
            return t
        args = []
        for binder in t.args:
            table = {nm: next(gen) for nm in binder.names}
            body = rename_free(freshen(binder.body, gen), table)
            args.append(NBind(tuple(table[nm] for nm in binder.names), body))
        return NOp(t.op, tuple(args))

    def op_case(op, values, n):
        args = []
        for width, value in zip(op.arity, values):
            names = tuple(f"x{n + k}" for k in range(1, width + 1))
            args.append(NBind(names, value))
        return NOp(op, tuple(args))

    def subst(vb, p, vp, q):
        gen = fresh()
        body = freshen(vb, gen)
        payload = freshen(vp, gen)
        payload = rename_free(
            payload, {f"x{j}": f"x{p + j}" for j in range(1, q + 1)}
        )
        return substitute_named(body, f"x{p + 1}", payload, gen)

    return TestAlgebra(
        name="named-terms",
        algebra=Algebra(
            var_case=lambda i, n: NVar(f"x{i}"),
            op_case=op_case,
        ),
        subst=subst,
        equal=alpha_equal,
    )


def fixture_algebras(sig, mode):
    return (
        _one_point_algebra(),
        _size_decorated_algebra(sig, mode),
        _named_algebra(sig),
    )


def check_initiality(sig, mode, bounds=None, test_algebras=None):
    """fold into each test algebra satisfies the structure equations
    (checked by independent table recomputation, which doubles as the
    desk-scale uniqueness check), commutes with substitution, and commutes
    with renaming where the algebra carries a renaming action.  The same
    report covers the node-routing law: substitution into an operator node
    equals rebuilding it from routed per-argument substitutions."""
    bounds = bounds or LawBounds()
    algebras = test_algebras or fixture_algebras(sig, mode)
    report = LawReport("homomorphism", mode)
    space = _space(sig, mode)
    for problem in enumerate_substitution_problems(sig, mode, bounds):
        if not isinstance(problem.body, Op):
            continue
        ok = _eval(
            lambda: check_sigma_homomorphism(
                sig, mode, problem.body.op, problem.body.args,
                problem.body_ctx, problem.payload, problem.payload_ctx,
            )
        )
        if ok is True:
            report.record(True)
        else:
            report.record(
                True,
                {
                    "body": print_term(problem.body),
                    "body_ctx": problem.body_ctx,
                    "payload": print_term(problem.payload),
                    "payload_ctx": problem.payload_ctx,
                    "result": _show(ok),
                },
            )
    for ta in algebras:
        for ctx in range(0, bounds.max_ctx + 1):
            for (t,) in space.terms_split((ctx,), bounds.max_ops):
                recursive = _eval(lambda: fold(sig, ta.algebra, t, ctx))
                tabled = _eval(lambda: fold_by_table(sig, ta.algebra, t, ctx))
                if ta.equal(recursive, tabled):
                    report.record(op_count(t) > 0)
                else:
                    report.record(
                        op_count(t) > 0,
                        {
                            "algebra": ta.name, "term": print_term(t),
                            "ctx": ctx, "fold": _show(recursive),
                            "table": _show(tabled),
                        },
                    )
        if ta.subst is None:
            continue
        inner = LawBounds(bounds.max_ctx, max(0, bounds.max_ops - 1))
        for problem in enumerate_substitution_problems(sig, mode, inner):
            p, q = problem.body_ctx - 1, problem.payload_ctx
            lhs = _eval(
                lambda: fold(
                    sig, ta.algebra,
                    replace_split(sig, mode, problem.body, p + 1, problem.payload, q),
                    p + q,
                )
            )
            rhs = _eval(
                lambda: ta.subst(
                    fold(sig, ta.algebra, problem.body, p + 1), p,
                    fold(sig, ta.algebra, problem.payload, q), q,
                )
            )
            equal = ta.equal(lhs, rhs) or lhs == rhs
            degenerate = op_count(problem.body) + op_count(problem.payload) == 0
            if equal:
                report.record(not degenerate)
            else:
                report.record(
                    not degenerate,
                    {
                        "algebra": ta.name,
                        "body": print_term(problem.body),
                        "body_ctx": p + 1,
                        "payload": print_term(problem.payload),
                        "payload_ctx": q,
                        "lhs": _show(lhs), "rhs": _show(rhs),
                    },
                )
        if ta.algebra.rename_case is None:
            continue
        for ctx in range(0, min(2, bounds.max_ctx) + 1):
            for (t,) in space.terms_split((ctx,), max(0, bounds.max_ops - 1)):
                for cod in range(0, min(2, bounds.max_ctx) + 1):
                    for rho in enumerate_renamings(ctx, cod, mode):
                        lhs = _eval(
                            lambda: fold(
                                sig, ta.algebra, rename(sig, mode, t, rho), cod
                            )
                        )
                        rhs = _eval(
                            lambda: ta.algebra.rename_case(
                                fold(sig, ta.algebra, t, ctx), rho
                            )
                        )
                        if ta.equal(lhs, rhs):
                            report.record(op_count(t) > 0)
                        else:
                            report.record(
                                op_count(t) > 0,
                                {
                                    "algebra": ta.name, "term": print_term(t),
                                    "ctx": ctx, "rho": list(rho.mapping),
                                    "lhs": _show(lhs), "rhs": _show(rhs),
                                },
                            )
    _flag_degenerate(sig, report)
    return report


# ---------------------------------------------------------------------------
# the suite


def run_suite(sig, mode, bounds=None):
    """Every applicable axiom, the extended lemma where stated, naturality,
    the product-rule bijection, the node-routing law, initiality and oracle
    agreement, in a fixed report order."""
    bounds = bounds or LawBounds()
    reports = []
    for law_id in APPLICABILITY[mode]:
        reports.append(check_axiom(sig, mode, law_id, bounds))
    if mode is not Mode.CARTESIAN:
        reports.append(check_extended_substitution_lemma(sig, mode, bounds))
    reports.append(check_naturality(sig, mode, bounds))
    reports.append(check_leibniz(sig, mode, bounds))
    reports.append(check_initiality(sig, mode, bounds))
    reports.append(check_oracle_agreement(sig, mode, bounds))
    return reports


def suite_passed(reports):
    return all(r.passed for r in reports)
