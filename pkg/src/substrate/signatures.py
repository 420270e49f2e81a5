"""Binding signatures: named operators with binding arities.

An operator's arity is a tuple of naturals (n_1, ..., n_k): k is the number
of arguments, and n_i is the number of variables the operator binds in its
i-th argument.  The textual format is one operator per line,

    name: (n_1, ..., n_k)

with `#` comments and blank lines ignored.  Declaration order is kept; it
only matters for deterministic enumeration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import SignatureSyntaxError

IDENTIFIER_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

# The term syntax reserves `(var i)` for variables.
RESERVED_NAMES = frozenset({"var"})


@dataclass(frozen=True, slots=True)
class Operator:
    name: str
    arity: tuple[int, ...]

    def __post_init__(self):
        if not IDENTIFIER_RE.match(self.name):
            raise SignatureSyntaxError(f"bad operator name: {self.name!r}")
        if self.name in RESERVED_NAMES:
            raise SignatureSyntaxError(f"operator name {self.name!r} is reserved")
        if any(n < 0 for n in self.arity):
            raise SignatureSyntaxError(f"negative arity entry in {self.name}")


@dataclass(frozen=True, slots=True)
class BindingSignature:
    operators: tuple[Operator, ...]

    def __post_init__(self):
        names = [op.name for op in self.operators]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise SignatureSyntaxError(f"duplicate operator name: {dup!r}")

    def __len__(self):
        return len(self.operators)

    def ref(self, name):
        for index, op in enumerate(self.operators):
            if op.name == name:
                return OperatorRef(self, index)
        raise KeyError(f"no operator named {name!r}")

    def refs(self):
        return [OperatorRef(self, i) for i in range(len(self.operators))]


@dataclass(frozen=True, slots=True)
class OperatorRef:
    signature: BindingSignature
    index: int

    def __post_init__(self):
        if not 0 <= self.index < len(self.signature.operators):
            raise IndexError(f"operator index {self.index} out of range")

    @property
    def name(self):
        return self.signature.operators[self.index].name

    @property
    def arity(self):
        return self.signature.operators[self.index].arity


def signature_of(*entries):
    """Build a signature from (name, arity) pairs; test and doc convenience."""
    return BindingSignature(tuple(Operator(n, tuple(a)) for n, a in entries))


_LINE_RE = re.compile(
    r"^(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*:\s*\((?P<arity>[^)]*)\)\s*$"
)


def parse_signature(text):
    """Parse the textual signature format.

    Raises SignatureSyntaxError with the offending line number on bad
    syntax, duplicate names or negative arity tokens.
    """
    operators = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LINE_RE.match(line)
        if match is None:
            if re.search(r"\(\s*[^)]*-", line):
                raise SignatureSyntaxError("negative arity token", line=lineno)
            raise SignatureSyntaxError(f"cannot parse {line!r}", line=lineno)
        name = match.group("name")
        if name in seen:
            raise SignatureSyntaxError(
                f"duplicate operator name: {name!r}", line=lineno
            )
        if name in RESERVED_NAMES:
            raise SignatureSyntaxError(
                f"operator name {name!r} is reserved", line=lineno
            )
        body = match.group("arity").strip()
        if body:
            try:
                arity = tuple(int(tok.strip()) for tok in body.split(","))
            except ValueError:
                raise SignatureSyntaxError(
                    f"bad arity list {body!r}", line=lineno
                ) from None
            if any(n < 0 for n in arity):
                raise SignatureSyntaxError("negative arity token", line=lineno)
        else:
            arity = ()
        seen.add(name)
        operators.append(Operator(name, arity))
    return BindingSignature(tuple(operators))


def print_signature(sig):
    """Inverse of parse_signature: one canonical line per operator."""
    lines = [
        f"{op.name}: ({','.join(str(n) for n in op.arity)})"
        for op in sig.operators
    ]
    return "\n".join(lines)
