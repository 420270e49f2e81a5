"""Well-scoped terms over a binding signature, with their renaming action.

A term over a context of size n is a tree of variables and operator nodes.
Variable indices are absolute positions of the local context (levels): the
j-th argument of an operator binding n_j variables lives in the context
extended by n_j fresh positions appended at the end, and the bound variables
are the top n_j indices there.  Terms do not carry their context; every
operation takes the ambient size as an argument.

Because the representation is nameless there are no alpha-equivalence
issues: term equality is structural equality.

Wellformedness in a mode is a predicate on occurrence counts:

    linear     every position in scope is used exactly once
    affine     at most once
    relevant   at least once
    cartesian  unconstrained

checked at the root for ambient positions and at every binder for the bound
block.  A term standing inside a pairing only has to satisfy the binder-level
conditions; the ambient condition is then checked jointly across the pair
(`component_profile` / `check_pairing`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .contexts import Mode, Renaming
from .errors import CapabilityError, ModeViolation, ScopeError, TermSyntaxError
from .signatures import OperatorRef


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ScopeError(self.index)


@dataclass(frozen=True, slots=True)
class Op:
    op: OperatorRef
    args: tuple["Term", ...]

    def __post_init__(self):
        if len(self.args) != len(self.op.arity):
            raise ValueError(
                f"operator {self.op.name} takes {len(self.op.arity)} "
                f"argument(s), got {len(self.args)}"
            )


Term = Union[Var, Op]


def term_key(t):
    """Canonical sort key: variables first, then operators in declaration
    order with arguments compared lexicographically."""
    if isinstance(t, Var):
        return (0, t.index)
    return (1, t.op.index, tuple(term_key(a) for a in t.args))


def op_count(t):
    """Number of operator nodes (variables count zero)."""
    if isinstance(t, Var):
        return 0
    return 1 + sum(op_count(a) for a in t.args)


def count_occurrences(t, position):
    """Free occurrences of an ambient position.  Positions are levels, so an
    ambient index is stable under binders and a plain leaf count suffices."""
    if isinstance(t, Var):
        return 1 if t.index == position else 0
    return sum(count_occurrences(a, position) for a in t.args)


# ---------------------------------------------------------------------------
# textual form: (var i) and (name arg ...)


def parse_term(sig, text):
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse_one():
        nonlocal pos
        if pos >= len(tokens):
            raise TermSyntaxError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok != "(":
            raise TermSyntaxError(f"expected '(', got {tok!r}")
        if pos >= len(tokens):
            raise TermSyntaxError("unexpected end of input")
        head = tokens[pos]
        pos += 1
        if head == "var":
            if pos >= len(tokens) or not tokens[pos].isdigit():
                raise TermSyntaxError("expected a variable index after 'var'")
            index = int(tokens[pos])
            pos += 1
            if pos >= len(tokens) or tokens[pos] != ")":
                raise TermSyntaxError("expected ')' after variable index")
            pos += 1
            return Var(index)
        try:
            ref = sig.ref(head)
        except KeyError:
            raise TermSyntaxError(f"unknown operator {head!r}") from None
        args = []
        while True:
            if pos >= len(tokens):
                raise TermSyntaxError("unexpected end of input")
            if tokens[pos] == ")":
                pos += 1
                break
            args.append(parse_one())
        try:
            return Op(ref, tuple(args))
        except ValueError as exc:
            raise TermSyntaxError(str(exc)) from None

    term = parse_one()
    if pos != len(tokens):
        raise TermSyntaxError(f"trailing input: {' '.join(tokens[pos:])!r}")
    return term


def print_term(t):
    if isinstance(t, Var):
        return f"(var {t.index})"
    inner = " ".join(print_term(a) for a in t.args)
    return f"({t.op.name} {inner})" if inner else f"({t.op.name})"


# ---------------------------------------------------------------------------
# occurrence profiles and wellformedness


@dataclass(frozen=True, slots=True)
class OccurrenceProfile:
    """Free-occurrence counts for each position of a local context."""

    counts: tuple[int, ...]

    def count(self, position):
        if not 1 <= position <= len(self.counts):
            raise ScopeError(position, len(self.counts))
        return self.counts[position - 1]

    def support(self):
        return frozenset(
            i for i, c in enumerate(self.counts, start=1) if c > 0
        )

    def __len__(self):
        return len(self.counts)


def _binder_requirement(mode):
    if mode is Mode.LINEAR:
        return "linear mode requires exactly 1 use"
    if mode is Mode.AFFINE:
        return "affine mode requires at most 1 use"
    if mode is Mode.RELEVANT:
        return "relevant mode requires at least 1 use"
    return None


def _count_ok(mode, count):
    if mode is Mode.LINEAR:
        return count == 1
    if mode is Mode.AFFINE:
        return count <= 1
    if mode is Mode.RELEVANT:
        return count >= 1
    return True


def _check_signature(sig, t):
    if isinstance(t, Op) and t.op.signature != sig:
        raise ValueError(
            f"operator {t.op.name} belongs to a different signature"
        )


def _profile(sig, mode, t, n):
    """Counts over 1..n; enforces binder conditions and, in linear and
    affine modes, disjoint usage across sibling arguments.  `mode=None`
    checks scope only."""
    if isinstance(t, Var):
        if not 1 <= t.index <= n:
            raise ScopeError(t.index, n)
        counts = [0] * n
        counts[t.index - 1] = 1
        return counts
    _check_signature(sig, t)
    totals = [0] * n
    for width, arg in zip(t.op.arity, t.args):
        counts = _profile(sig, mode, arg, n + width)
        if mode is not None:
            for k in range(width):
                c = counts[n + k]
                if not _count_ok(mode, c):
                    raise ModeViolation.for_count(
                        n + k + 1, c, f"bound variable: {_binder_requirement(mode)}"
                    )
        for i in range(n):
            totals[i] += counts[i]
    if mode in (Mode.LINEAR, Mode.AFFINE):
        for i, c in enumerate(totals):
            if c > 1:
                raise ModeViolation.for_count(
                    i + 1, c, "sibling arguments must use disjoint positions"
                )
    return totals


def occurrence_profile(sig, t, n):
    """Scope check only: the free-occurrence profile of t at context n."""
    return OccurrenceProfile(tuple(_profile(sig, None, t, n)))


def component_profile(sig, mode, t, n):
    """Wellformedness except for the ambient-usage condition.

    This is the check for a term standing inside a pairing: binder blocks
    satisfy the mode discipline, sibling arguments are disjoint where the
    mode demands it, but ambient positions may be left for the other
    component of the pair.
    """
    return OccurrenceProfile(tuple(_profile(sig, mode, t, n)))


def check_wellformed(sig, mode, t, n):
    """Full mode-wellformedness of t at context n; returns the profile.

    Raises ScopeError for indices out of range and ModeViolation when an
    occurrence count breaks the mode discipline.
    """
    counts = _profile(sig, mode, t, n)
    for i, c in enumerate(counts):
        if not _count_ok(mode, c):
            raise ModeViolation.for_count(
                i + 1, c, _binder_requirement(mode)
            )
    return OccurrenceProfile(tuple(counts))


def is_wellformed(sig, mode, t, n):
    try:
        check_wellformed(sig, mode, t, n)
        return True
    except (ScopeError, ModeViolation):
        return False


def _joint_ok(mode, total):
    if mode is Mode.LINEAR:
        return total == 1
    if mode is Mode.AFFINE:
        return total <= 1
    if mode is Mode.RELEVANT:
        return total >= 1
    return True


def check_pairing(sig, mode, left, right, n):
    """Validate (left, right) as a mode-valid pairing over a shared context.

    Each component satisfies the binder-level conditions on its own; the
    ambient condition is checked on the summed profiles: a partition of the
    positions for linear, disjointness for affine, joint coverage for
    relevant, nothing for cartesian.  Returns both profiles.
    """
    pl = component_profile(sig, mode, left, n)
    pr = component_profile(sig, mode, right, n)
    for i in range(n):
        total = pl.counts[i] + pr.counts[i]
        if not _joint_ok(mode, total):
            raise ModeViolation.for_count(
                i + 1, total, f"pairing: {_binder_requirement(mode)}"
            )
    return pl, pr


# ---------------------------------------------------------------------------
# renaming action and structural operations


def apply_position_map(t, mapping, cod):
    """Raw renaming engine: apply a total position map given as a tuple.

    Under a binder of width b the map extends with the identity on the b
    appended positions.  Entries of 0 mark positions the caller knows are
    unused; hitting one is an internal routing error.
    """
    if isinstance(t, Var):
        if t.index > len(mapping):
            raise ScopeError(t.index, len(mapping))
        j = mapping[t.index - 1]
        if j < 1:
            raise AssertionError(
                f"position {t.index} mapped nowhere; routing bug"
            )
        return Var(j)
    args = []
    for width, arg in zip(t.op.arity, t.args):
        if width:
            extended = mapping + tuple(range(cod + 1, cod + width + 1))
            args.append(apply_position_map(arg, extended, cod + width))
        else:
            args.append(apply_position_map(arg, mapping, cod))
    return Op(t.op, tuple(args))


def rename(sig, mode, t, renaming):
    """Functorial action of a renaming on a term at its domain context.

    Free indices i become renaming(i); bound blocks are untouched apart
    from relocation.  Identity and composition of renamings are preserved.
    """
    if renaming.mode is not mode:
        raise ValueError(f"mode mismatch: {renaming.mode} vs {mode}")
    if isinstance(t, Op):
        _check_signature(sig, t)
    return apply_position_map(t, renaming.mapping, renaming.cod)


def weaken(sig, mode, t, n):
    """Insert an unused top position: t at n becomes t at n + 1.

    Only cartesian and affine modes have weakening.
    """
    if not mode.allows_weakening:
        raise CapabilityError(f"no weakening in {mode} mode")
    mapping = tuple(range(1, n + 1))
    return apply_position_map(t, mapping, n + 1)


def contract(sig, mode, t, n):
    """Merge the top two positions: t at n (n >= 2) becomes t at n - 1.

    Only cartesian and relevant modes have contraction.
    """
    if not mode.allows_contraction:
        raise CapabilityError(f"no contraction in {mode} mode")
    if n < 2:
        raise ScopeError(n, 2)
    mapping = tuple(range(1, n)) + (n - 1,)
    return apply_position_map(t, mapping, n - 1)


def swap_last(sig, mode, t, n):
    """Exchange the top two positions of t at n (n >= 2); an involution."""
    if n < 2:
        raise ScopeError(n, 2)
    mapping = tuple(range(1, n - 1)) + (n, n - 1)
    return apply_position_map(t, mapping, n)


def generic_variable(n):
    """The fresh top variable of the context extended past n: Var(n + 1).

    Stand-alone mode-wellformedness depends on the mode: any n is fine in
    cartesian and affine modes, while linear and relevant modes admit it
    only at n = 0 (the other positions would go unused).
    """
    return Var(n + 1)


# ---------------------------------------------------------------------------
# algebras and the generic fold


@dataclass(frozen=True)
class Algebra:
    """A target for the fold.

    var_case(index, ctx) interprets a variable; op_case(op, values, ctx)
    combines argument values computed at their extended contexts.  The
    optional carrier (ctx -> collection) and rename_case(value, renaming)
    support law checking.
    """

    var_case: Callable[[int, int], object]
    op_case: Callable[[OperatorRef, tuple, int], object]
    carrier: Optional[Callable[[int], object]] = None
    rename_case: Optional[Callable[[object, Renaming], object]] = None


def fold(sig, alg, t, n):
    """The unique structure-respecting map out of the terms at n.

    fold(Var i) = var_case(i, n); fold(Op(op, args)) applies op_case to the
    folds of the arguments at their extended contexts.
    """
    if isinstance(t, Var):
        if not 1 <= t.index <= n:
            raise ScopeError(t.index, n)
        return alg.var_case(t.index, n)
    _check_signature(sig, t)
    values = tuple(
        fold(sig, alg, arg, n + width)
        for width, arg in zip(t.op.arity, t.args)
    )
    return alg.op_case(t.op, values, n)


def fold_by_table(sig, alg, t, n):
    """Independent evaluation of the fold equations, used for the
    desk-scale uniqueness check: values are computed with an explicit
    stack instead of recursion and memoised in a table."""
    table = {}
    stack = [(t, n)]
    while stack:
        term, ctx = stack.pop()
        if (term, ctx) in table:
            continue
        if isinstance(term, Var):
            if not 1 <= term.index <= ctx:
                raise ScopeError(term.index, ctx)
            table[(term, ctx)] = alg.var_case(term.index, ctx)
            continue
        pending = [
            (arg, ctx + width)
            for width, arg in zip(term.op.arity, term.args)
            if (arg, ctx + width) not in table
        ]
        if pending:
            stack.append((term, ctx))
            stack.extend(pending)
            continue
        values = tuple(
            table[(arg, ctx + width)]
            for width, arg in zip(term.op.arity, term.args)
        )
        table[(term, ctx)] = alg.op_case(term.op, values, ctx)
    return table[(t, n)]
