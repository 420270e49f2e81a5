"""Exhaustive generation and counting of mode-wellformed terms and pairings.

Term size is the operator-node count: variables are free.  The main
generator works top-down, giving every context position a remaining-use
budget (a lower and upper bound on its occurrence count) and splitting the
budgets over the arguments of each operator node:

    exactly-one    goes to exactly one argument
    at-most-one    goes to at most one argument (forced there)
    at-least-one   goes to a nonempty subset of arguments
    unbounded      unconstrained

A naive generate-all-then-filter implementation doubles as the oracle for
the generator itself; the two must agree term for term.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .contexts import Mode
from .errors import LimitExceeded, ModeViolation, ScopeError
from .terms import Op, Term, Var, component_profile, is_wellformed, term_key

DEFAULT_OPS_CEILING = 5
CTX_CEILING = 6


def ops_ceiling():
    """The operator-node budget ceiling; SUBSTRATE_MAX_OPS overrides it."""
    raw = os.environ.get("SUBSTRATE_MAX_OPS")
    if raw is None:
        return DEFAULT_OPS_CEILING
    try:
        return int(raw)
    except ValueError:
        raise LimitExceeded(f"bad SUBSTRATE_MAX_OPS value: {raw!r}") from None


@dataclass(frozen=True, slots=True)
class EnumerationBounds:
    max_ops: int
    ctx: int
    mode: Mode

    def validate(self):
        ceiling = ops_ceiling()
        if self.max_ops > ceiling:
            raise LimitExceeded(
                f"operator budget {self.max_ops} exceeds the ceiling {ceiling}"
            )
        if self.ctx > CTX_CEILING:
            raise LimitExceeded(
                f"context size {self.ctx} exceeds the ceiling {CTX_CEILING}"
            )
        if self.max_ops < 0 or self.ctx < 0:
            raise LimitExceeded("bounds must be non-negative")


# Budgets are (lo, hi) pairs with hi = None for unbounded.
_ZERO = (0, 0)


def _root_budget(mode):
    if mode is Mode.LINEAR:
        return (1, 1)
    if mode is Mode.AFFINE:
        return (0, 1)
    if mode is Mode.RELEVANT:
        return (1, None)
    return (0, None)


def _component_budget(mode):
    """Budget for a term standing inside a pairing: the ambient condition
    is relaxed to whatever the partner may pick up."""
    if mode in (Mode.LINEAR, Mode.AFFINE):
        return (0, 1)
    return (0, None)


def _split_options(budget, k):
    """Ways to split one position's budget over k arguments, each option a
    tuple of per-argument budgets.  Options are mutually exclusive on the
    produced terms, so the generator never yields duplicates."""
    lo, hi = budget
    if hi == 0:
        return [(_ZERO,) * k]
    if (lo, hi) == (0, None):
        return [((0, None),) * k]
    if (lo, hi) == (1, 1):
        return [
            tuple((1, 1) if j == i else _ZERO for j in range(k))
            for i in range(k)
        ]
    if (lo, hi) == (0, 1):
        options = [(_ZERO,) * k]
        options.extend(
            tuple((1, 1) if j == i else _ZERO for j in range(k))
            for i in range(k)
        )
        return options
    if (lo, hi) == (1, None):
        options = []
        for mask in range(1, 1 << k):
            options.append(
                tuple((1, None) if mask & (1 << j) else _ZERO for j in range(k))
            )
        return options
    raise AssertionError(f"unexpected budget {budget}")


def _compositions(total, k):
    """All k-tuples of naturals summing to total."""
    if k == 0:
        return [()] if total == 0 else []
    out = []
    for head in range(total + 1):
        for tail in _compositions(total - head, k - 1):
            out.append((head,) + tail)
    return out


class _Generator:
    def __init__(self, sig, mode):
        self.sig = sig
        self.mode = mode
        self.cache = {}

    def terms(self, budgets, ops):
        """All terms with exactly `ops` operator nodes whose occurrence
        counts meet `budgets` positionwise."""
        key = (budgets, ops)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        out = []
        if ops == 0:
            for i, (lo, hi) in enumerate(budgets, start=1):
                if lo <= 1 and (hi is None or hi >= 1):
                    if all(
                        b[0] == 0 for j, b in enumerate(budgets, start=1) if j != i
                    ):
                        out.append(Var(i))
        else:
            binder_budget = _root_budget(self.mode)
            for ref in self.sig.refs():
                arity = ref.arity
                k = len(arity)
                if k == 0:
                    if ops == 1 and all(lo == 0 for lo, _ in budgets):
                        out.append(Op(ref, ()))
                    continue
                per_position = [_split_options(b, k) for b in budgets]
                for split in itertools.product(*per_position):
                    arg_ambient = [
                        tuple(split[pos][j] for pos in range(len(budgets)))
                        for j in range(k)
                    ]
                    for shares in _compositions(ops - 1, k):
                        choices = []
                        for j in range(k):
                            arg_budgets = arg_ambient[j] + (binder_budget,) * arity[j]
                            choices.append(self.terms(arg_budgets, shares[j]))
                            if not choices[-1]:
                                break
                        else:
                            for combo in itertools.product(*choices):
                                out.append(Op(ref, combo))
                            continue
        out.sort(key=term_key)
        self.cache[key] = out
        return out


def terms_with_op_count(sig, mode, ctx, ops):
    """Mode-wellformed terms at context ctx with exactly `ops` operator
    nodes, in canonical order."""
    gen = _Generator(sig, mode)
    return gen.terms((_root_budget(mode),) * ctx, ops)


def enumerate_terms(sig, bounds):
    """All mode-wellformed terms at bounds.ctx with at most bounds.max_ops
    operator nodes, ordered by size and then canonically."""
    bounds.validate()
    out = []
    gen = _Generator(sig, bounds.mode)
    budgets = (_root_budget(bounds.mode),) * bounds.ctx
    for ops in range(bounds.max_ops + 1):
        out.extend(gen.terms(budgets, ops))
    return out


def pair_components(sig, mode, ctx, max_ops):
    """Candidate pairing components: binder conditions enforced, ambient
    usage relaxed.  Ordered by size then canonically."""
    gen = _Generator(sig, mode)
    budgets = (_component_budget(mode),) * ctx
    out = []
    for ops in range(max_ops + 1):
        out.extend(gen.terms(budgets, ops))
    return out


def _joint_ok(mode, total):
    if mode is Mode.LINEAR:
        return total == 1
    if mode is Mode.AFFINE:
        return total <= 1
    if mode is Mode.RELEVANT:
        return total >= 1
    return True


def enumerate_pairs(sig, bounds):
    """All mode-valid pairings over bounds.ctx, each component within the
    operator budget: partitions of the positions for linear, disjoint usage
    for affine, joint coverage for relevant, unrestricted for cartesian."""
    bounds.validate()
    mode, ctx = bounds.mode, bounds.ctx
    components = pair_components(sig, mode, ctx, bounds.max_ops)
    profiles = [
        component_profile(sig, mode, t, ctx).counts for t in components
    ]
    out = []
    for (t, pt) in zip(components, profiles):
        for (u, pu) in zip(components, profiles):
            if all(_joint_ok(mode, a + b) for a, b in zip(pt, pu)):
                out.append((t, u))
    return out


def count_table(sig, mode, max_n, max_ops):
    """counts[n][s] = number of mode-wellformed terms at context n with
    exactly s operator nodes, for n <= max_n and s <= max_ops."""
    if max_n > CTX_CEILING:
        raise LimitExceeded(f"context size {max_n} exceeds the ceiling {CTX_CEILING}")
    if max_ops > ops_ceiling():
        raise LimitExceeded(
            f"operator budget {max_ops} exceeds the ceiling {ops_ceiling()}"
        )
    return [
        [len(terms_with_op_count(sig, mode, n, s)) for s in range(max_ops + 1)]
        for n in range(max_n + 1)
    ]


def count_table_csv(table):
    lines = []
    for n, row in enumerate(table):
        for s, count in enumerate(row):
            lines.append(f"{n},{s},{count}")
    return "\n".join(lines)


def count_table_text(table):
    if not table:
        return ""
    width = max(5, max(len(str(c)) for row in table for c in row) + 1)
    header = "n\\s".ljust(5) + "".join(
        str(s).rjust(width) for s in range(len(table[0]))
    )
    lines = [header]
    for n, row in enumerate(table):
        lines.append(str(n).ljust(5) + "".join(str(c).rjust(width) for c in row))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# the generate-and-filter reference (oracle for the generator)


def raw_terms(sig, ctx, ops):
    """All scope-correct trees at context ctx with exactly `ops` operator
    nodes, mode-blind."""
    if ops == 0:
        return [Var(i) for i in range(1, ctx + 1)]
    out = []
    for ref in sig.refs():
        arity = ref.arity
        k = len(arity)
        if k == 0:
            if ops == 1:
                out.append(Op(ref, ()))
            continue
        for shares in _compositions(ops - 1, k):
            pools = [
                raw_terms(sig, ctx + arity[j], shares[j]) for j in range(k)
            ]
            for combo in itertools.product(*pools):
                out.append(Op(ref, combo))
    return out


def reference_enumerate_terms(sig, bounds):
    """Generate-and-filter oracle for enumerate_terms: same output
    contract, built by filtering the raw term space."""
    bounds.validate()
    out = []
    for ops in range(bounds.max_ops + 1):
        chunk = [
            t
            for t in raw_terms(sig, bounds.ctx, ops)
            if is_wellformed(sig, bounds.mode, t, bounds.ctx)
        ]
        chunk.sort(key=term_key)
        out.extend(chunk)
    return out


def reference_enumerate_pairs(sig, bounds):
    """Generate-and-filter oracle for enumerate_pairs."""
    bounds.validate()
    mode, ctx = bounds.mode, bounds.ctx

    def components():
        for ops in range(bounds.max_ops + 1):
            chunk = []
            for t in raw_terms(sig, ctx, ops):
                try:
                    profile = component_profile(sig, mode, t, ctx)
                except (ScopeError, ModeViolation):
                    continue
                chunk.append((t, profile.counts))
            chunk.sort(key=lambda pair: term_key(pair[0]))
            yield from chunk

    comps = list(components())
    out = []
    for (t, pt) in comps:
        for (u, pu) in comps:
            if all(_joint_ok(mode, a + b) for a, b in zip(pt, pu)):
                out.append((t, u))
    return out
