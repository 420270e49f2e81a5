"""Single-variable capture-avoiding substitution in all four modes.

The primitive operation is `replace_split`: the body lives at context p + 1
with the substitution target as the last position, the payload at context q,
and the result at p + q with the payload's positions relocated to the block
p+1..p+q.  The recursion is structural: at an operator node the target is
routed into the argument(s) that use it (every argument in cartesian mode),
crossing each binder by literally rotating the target past the bound block
with adjacent swaps, recursing, and then applying the block exchange that
puts the payload block back under the binder block.

`replace_shared` (cartesian and relevant modes) substitutes over a shared
context by following `replace_split` with the context-merging renaming, and
`compose_at` substitutes at an arbitrary position by conjugating with the
exchange that relocates it to the top.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .contexts import Mode
from .errors import CapabilityError, ModeViolation, ScopeError
from .terms import (
    Op,
    Term,
    Var,
    apply_position_map,
    check_pairing,
    check_wellformed,
    component_profile,
    count_occurrences,
    occurrence_profile,
)


class ProductRuleCase(Enum):
    """Which side(s) of a pairing over an extended context use the extra
    position."""

    LEFT_HAS_IT = "left"
    RIGHT_HAS_IT = "right"
    NEITHER = "neither"
    BOTH = "both"


ALLOWED_CASES = {
    Mode.LINEAR: frozenset({ProductRuleCase.LEFT_HAS_IT, ProductRuleCase.RIGHT_HAS_IT}),
    Mode.AFFINE: frozenset(
        {ProductRuleCase.LEFT_HAS_IT, ProductRuleCase.RIGHT_HAS_IT, ProductRuleCase.NEITHER}
    ),
    Mode.RELEVANT: frozenset(
        {ProductRuleCase.LEFT_HAS_IT, ProductRuleCase.RIGHT_HAS_IT, ProductRuleCase.BOTH}
    ),
    Mode.CARTESIAN: frozenset({ProductRuleCase.BOTH}),
}


@dataclass(frozen=True, slots=True)
class SubstitutionProblem:
    """A body at context body_ctx = p + 1 (target = last position) and a
    payload at context payload_ctx = q."""

    mode: Mode
    body: Term
    body_ctx: int
    payload: Term
    payload_ctx: int


def product_rule_case(sig, mode, left, right, n):
    """Classify a mode-valid pairing over context n (n >= 1) by which
    component uses the last position.

    Cartesian pairings always classify as BOTH: over a shared context both
    components live in the extended context regardless of occurrence.  The
    returned tag always lies in the mode's allowed set, making the
    classification a bijection between pairings and the mode's summands.
    """
    if n < 1:
        raise ScopeError(n, 1)
    pl, pr = check_pairing(sig, mode, left, right, n)
    if mode is Mode.CARTESIAN:
        return ProductRuleCase.BOTH
    in_left = pl.count(n) > 0
    in_right = pr.count(n) > 0
    if in_left and in_right:
        tag = ProductRuleCase.BOTH
    elif in_left:
        tag = ProductRuleCase.LEFT_HAS_IT
    elif in_right:
        tag = ProductRuleCase.RIGHT_HAS_IT
    else:
        tag = ProductRuleCase.NEITHER
    if tag not in ALLOWED_CASES[mode]:
        raise AssertionError(f"tag {tag} impossible in {mode} mode")
    return tag


def _substitute_last(sig, mode, body, p, payload, q, *, rotate=True, exchange=True):
    """Core recursion: body at p + 1 (target last), payload at q, result at
    p + q.  No wellformedness checks: intermediate trees may transiently
    sit outside the per-term mode predicate.

    The keyword flags exist only so the law suite can run deliberately
    broken variants; production callers leave them alone.
    """
    if isinstance(body, Var):
        if body.index == p + 1:
            block = tuple(range(p + 1, p + q + 1))
            return apply_position_map(payload, block, p + q)
        if body.index > p + 1:
            raise ScopeError(body.index, p + 1)
        return body
    new_args = []
    for width, arg in zip(body.op.arity, body.args):
        occ = count_occurrences(arg, p + 1)
        if mode is Mode.CARTESIAN or occ > 0:
            m = p + 1 + width
            current = arg
            if rotate:
                for at in range(p + 1, p + width + 1):
                    swap_map = (
                        tuple(range(1, at))
                        + (at + 1, at)
                        + tuple(range(at + 2, m + 1))
                    )
                    current = apply_position_map(current, swap_map, m)
            sub = _substitute_last(
                sig, mode, current, p + width, payload, q,
                rotate=rotate, exchange=exchange,
            )
            if exchange and width:
                ex = (
                    tuple(range(1, p + 1))
                    + tuple(range(p + q + 1, p + q + width + 1))
                    + tuple(range(p + 1, p + q + 1))
                )
                sub = apply_position_map(sub, ex, p + q + width)
            new_args.append(sub)
        else:
            drop = (
                tuple(range(1, p + 1))
                + (0,)
                + tuple(range(p + q + 1, p + q + width + 1))
            )
            new_args.append(apply_position_map(arg, drop, p + q + width))
    return Op(body.op, tuple(new_args))


def replace_split(sig, mode, body, body_ctx, payload, payload_ctx):
    """Substitute payload (at payload_ctx = q) for the last position of body
    (at body_ctx = p + 1).  The result lives at p + q: body's positions
    1..p are unchanged and the payload block occupies p+1..p+q.

    Both inputs must be mode-wellformed; in particular the target position
    occurs exactly once in linear mode, at most once in affine mode and at
    least once in relevant mode.  The number of payload copies in the
    result equals that occurrence count.
    """
    if body_ctx < 1:
        raise ScopeError(body_ctx, 1)
    p, q = body_ctx - 1, payload_ctx
    check_wellformed(sig, mode, body, body_ctx)
    check_wellformed(sig, mode, payload, payload_ctx)
    result = _substitute_last(sig, mode, body, p, payload, q)
    check_wellformed(sig, mode, result, p + q)
    return result


def solve(sig, problem):
    """replace_split on a packaged SubstitutionProblem."""
    return replace_split(
        sig,
        problem.mode,
        problem.body,
        problem.body_ctx,
        problem.payload,
        problem.payload_ctx,
    )


def shared_substitute(sig, mode, body, n, payload):
    """Merged-context substitution without mode gating or validation: body
    at n + 1, payload at n, result at n.  Internal building block for
    replace_shared and the law suite; the two context blocks of the split
    result are identified by the merging renaming."""
    wide = _substitute_last(sig, mode, body, n, payload, n)
    codiagonal = tuple(range(1, n + 1)) + tuple(range(1, n + 1))
    return apply_position_map(wide, codiagonal, n)


def replace_shared(sig, mode, body, payload, n):
    """Substitute over a shared context: body at n + 1, payload at n,
    result at n.  Available in the modes with contraction (cartesian and
    relevant), where the two blocks of the split result may be identified.

    In relevant mode the inputs form a joint pairing: the body must use the
    target, and every shared position must be covered by body and payload
    together; each on its own may leave positions to the other.
    """
    if not mode.allows_contraction:
        raise CapabilityError(
            f"shared-context substitution needs contraction; not in {mode} mode"
        )
    if mode is Mode.CARTESIAN:
        occurrence_profile(sig, body, n + 1)
        occurrence_profile(sig, payload, n)
    else:
        pb = component_profile(sig, mode, body, n + 1)
        pp = component_profile(sig, mode, payload, n)
        if pb.count(n + 1) < 1:
            raise ModeViolation.for_count(
                n + 1, 0, "relevant mode requires at least 1 use of the target"
            )
        for i in range(1, n + 1):
            if pb.count(i) + pp.count(i) < 1:
                raise ModeViolation.for_count(
                    i, 0, "body and payload must jointly cover the context"
                )
    result = shared_substitute(sig, mode, body, n, payload)
    check_wellformed(sig, mode, result, n)
    return result


def compose_at(sig, mode, t, n, i, u, u_ctx):
    """Substitute u (at u_ctx = q) for position i of t (at n): the partial
    composition.  The result lives at n - 1 + q with u's block inserted at
    positions i..i+q-1 and t's positions above i shifted by q - 1.

    Equivalent to relocating position i to the top with an exchange,
    applying replace_split, and renumbering the blocks back.
    """
    if not 1 <= i <= n:
        raise ScopeError(i, n)
    q = u_ctx
    check_wellformed(sig, mode, t, n)
    check_wellformed(sig, mode, u, u_ctx)
    move = tuple(k if k < i else (n if k == i else k - 1) for k in range(1, n + 1))
    moved = apply_position_map(t, move, n)
    wide = _substitute_last(sig, mode, moved, n - 1, u, q)
    renumber = (
        tuple(range(1, i))
        + tuple(range(i + q, n + q))
        + tuple(range(i, i + q))
    )
    result = apply_position_map(wide, renumber, n - 1 + q)
    check_wellformed(sig, mode, result, n - 1 + q)
    return result


def check_sigma_homomorphism(sig, mode, op, args, node_ctx, payload, payload_ctx):
    """Verify one unfolding of the substitution recursion at an operator
    node: substituting into Op(op, args) must equal rebuilding the node
    from per-argument routed substitutions, where the target is pushed
    into exactly the argument(s) selected by the mode's product rule and
    binders are crossed by the swap-then-exchange bookkeeping.

    The per-argument substitutions are computed with the independent
    name-based engine, so this also cross-checks the routing itself.
    """
    from .oracle import oracle_core

    body = Op(op, args)
    p, q = node_ctx - 1, payload_ctx
    check_wellformed(sig, mode, body, node_ctx)
    check_wellformed(sig, mode, payload, payload_ctx)
    direct = _substitute_last(sig, mode, body, p, payload, q)
    routed_args = []
    for width, arg in zip(op.arity, args):
        occ = count_occurrences(arg, p + 1)
        if mode is Mode.CARTESIAN or occ > 0:
            m = p + 1 + width
            current = arg
            for at in range(p + 1, p + width + 1):
                swap_map = (
                    tuple(range(1, at))
                    + (at + 1, at)
                    + tuple(range(at + 2, m + 1))
                )
                current = apply_position_map(current, swap_map, m)
            sub = oracle_core(sig, current, p + width, payload, q)
            if width:
                ex = (
                    tuple(range(1, p + 1))
                    + tuple(range(p + q + 1, p + q + width + 1))
                    + tuple(range(p + 1, p + q + 1))
                )
                sub = apply_position_map(sub, ex, p + q + width)
            routed_args.append(sub)
        else:
            drop = (
                tuple(range(1, p + 1))
                + (0,)
                + tuple(range(p + q + 1, p + q + width + 1))
            )
            routed_args.append(apply_position_map(arg, drop, p + q + width))
    return direct == Op(op, tuple(routed_args))
