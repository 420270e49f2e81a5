"""Independent correctness oracle: substitution through named terms.

The nameless body and payload are converted to named trees with globally
fresh bound names, substituted with the textbook capture-avoiding named
algorithm, and converted back using the block index convention (payload
positions land at p+1..p+q).  None of this shares code with the structural
recursion in `substitution`; agreement between the two routes is the main
correctness check of the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .terms import Op, Term, Var, check_wellformed
from .errors import ScopeError


@dataclass(frozen=True, slots=True)
class NVar:
    name: str


@dataclass(frozen=True, slots=True)
class NBind:
    """One operator argument together with its block of bound names."""

    names: tuple[str, ...]
    body: "NamedTerm"


@dataclass(frozen=True, slots=True)
class NOp:
    op: object
    args: tuple[NBind, ...]


NamedTerm = NVar | NOp


def to_named(t, env, fresh):
    """Convert a nameless term to a named one.  `env` is the tuple of names
    for the current context positions; binder blocks get names drawn from
    the `fresh` iterator."""
    if isinstance(t, Var):
        if not 1 <= t.index <= len(env):
            raise ScopeError(t.index, len(env))
        return NVar(env[t.index - 1])
    args = []
    for width, arg in zip(t.op.arity, t.args):
        bound = tuple(next(fresh) for _ in range(width))
        args.append(NBind(bound, to_named(arg, env + bound, fresh)))
    return NOp(t.op, tuple(args))


def free_names(t):
    if isinstance(t, NVar):
        return {t.name}
    out = set()
    for binder in t.args:
        out |= free_names(binder.body) - set(binder.names)
    return out


def rename_free(t, table):
    """Capture-avoiding renaming of free names via `table`; bound names
    shadow the table."""
    if isinstance(t, NVar):
        return NVar(table.get(t.name, t.name))
    args = []
    for binder in t.args:
        inner = {k: v for k, v in table.items() if k not in binder.names}
        args.append(NBind(binder.names, rename_free(binder.body, inner)))
    return NOp(t.op, tuple(args))


def substitute_named(t, target, payload, fresh):
    """Textbook capture-avoiding substitution of payload for the free name
    `target`.  Binders shadow the target; binders whose names would capture
    a free name of the payload are renamed apart first."""
    if isinstance(t, NVar):
        return payload if t.name == target else t
    payload_free = free_names(payload)
    args = []
    for binder in t.args:
        if target in binder.names:
            args.append(binder)
            continue
        names, body = binder.names, binder.body
        clashing = [nm for nm in names if nm in payload_free]
        if clashing:
            replacements = {nm: next(fresh) for nm in clashing}
            names = tuple(replacements.get(nm, nm) for nm in names)
            body = rename_free(body, replacements)
        args.append(NBind(names, substitute_named(body, target, payload, fresh)))
    return NOp(t.op, tuple(args))


def from_named(t, env, n):
    """Convert back to the nameless representation.  `env` maps free names
    to positions of the target context of size n; binder blocks take the
    top positions of their extended contexts."""
    if isinstance(t, NVar):
        try:
            return Var(env[t.name])
        except KeyError:
            raise ScopeError(0, n) from None
    args = []
    for width, binder in zip(t.op.arity, t.args):
        if width != len(binder.names):
            raise ValueError("binder block does not match the operator arity")
        inner = dict(env)
        for k, nm in enumerate(binder.names, start=1):
            inner[nm] = n + k
        args.append(from_named(binder.body, inner, n + width))
    return Op(t.op, tuple(args))


def alpha_equal(a, b):
    """Alpha-equivalence of named terms (used by test algebras over the
    named carrier)."""

    def go(x, y, envx, envy, depth):
        if isinstance(x, NVar) and isinstance(y, NVar):
            dx = envx.get(x.name)
            dy = envy.get(y.name)
            if dx is None and dy is None:
                return x.name == y.name
            return dx == dy
        if isinstance(x, NOp) and isinstance(y, NOp):
            if x.op != y.op or len(x.args) != len(y.args):
                return False
            for bx, by in zip(x.args, y.args):
                if len(bx.names) != len(by.names):
                    return False
                ex, ey = dict(envx), dict(envy)
                d = depth
                for nx, ny in zip(bx.names, by.names):
                    ex[nx] = d
                    ey[ny] = d
                    d += 1
                if not go(bx.body, by.body, ex, ey, d):
                    return False
            return True
        return False

    return go(a, b, {}, {}, 0)


def _fresh_names(prefix):
    return (f"{prefix}{k}" for k in itertools.count(1))


def oracle_core(sig, body, p, payload, q):
    """The name-based substitution route, without precondition checks:
    body at p + 1 (target last), payload at q, result at p + q."""
    fresh = _fresh_names("b")
    body_env = tuple(f"a{i}" for i in range(1, p + 1)) + ("HOLE",)
    payload_env = tuple(f"c{j}" for j in range(1, q + 1))
    named_body = to_named(body, body_env, fresh)
    named_payload = to_named(payload, payload_env, fresh)
    named_result = substitute_named(named_body, "HOLE", named_payload, fresh)
    back = {f"a{i}": i for i in range(1, p + 1)}
    back.update({f"c{j}": p + j for j in range(1, q + 1)})
    return from_named(named_result, back, p + q)


def oracle_substitute(sig, mode, problem):
    """Solve a SubstitutionProblem through the named route.  Preconditions
    match replace_split: both components mode-wellformed."""
    check_wellformed(sig, mode, problem.body, problem.body_ctx)
    check_wellformed(sig, mode, problem.payload, problem.payload_ctx)
    return oracle_core(
        sig, problem.body, problem.body_ctx - 1, problem.payload, problem.payload_ctx
    )
