"""Contexts as natural numbers and mode-restricted renamings between them.

A context of size n has positions 1..n.  A renaming is a total map between
context positions.  Each mode restricts which maps are admissible:

    cartesian  any function          (exchange + weakening + contraction)
    linear     bijections            (exchange only)
    affine     injections            (exchange + weakening)
    relevant   surjections           (exchange + contraction)

The three structural generators are the adjacent transposition (swap), the
insertion of a skipped position (weaken) and the merge of two adjacent
positions (contract).  Every renaming of a mode factors into that mode's
generators; `generated_closure` realises the factorisation claim as a
computable closure for small context sizes.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from enum import Enum

from .errors import CapabilityError, LimitExceeded, ModeViolation, ScopeError

ENUMERATION_LIMIT = 6
CLOSURE_LIMIT = 5


class Mode(Enum):
    """One of the four structural disciplines."""

    CARTESIAN = "cartesian"
    LINEAR = "linear"
    AFFINE = "affine"
    RELEVANT = "relevant"

    @property
    def allows_weakening(self):
        return self in (Mode.CARTESIAN, Mode.AFFINE)

    @property
    def allows_contraction(self):
        return self in (Mode.CARTESIAN, Mode.RELEVANT)

    @classmethod
    def from_string(cls, text):
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown mode: {text!r}") from None

    def __str__(self):
        return self.value


class GeneratorKind(Enum):
    SWAP = "swap"
    WEAKEN = "weaken"
    CONTRACT = "contract"


def _is_injective(mapping):
    return len(set(mapping)) == len(mapping)


def _is_surjective(mapping, cod):
    return set(mapping) == set(range(1, cod + 1))


@dataclass(frozen=True, slots=True)
class Renaming:
    """A mode-valid total map between context positions.

    `mapping[i - 1]` is the image of position i.  Validated eagerly: a
    constructed Renaming always satisfies its mode's shape invariant.
    """

    dom: int
    cod: int
    mapping: tuple[int, ...]
    mode: Mode

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0:
            raise ValueError("context sizes must be non-negative")
        if len(self.mapping) != self.dom:
            raise ValueError(
                f"map has {len(self.mapping)} entries for domain of size {self.dom}"
            )
        for i, j in enumerate(self.mapping, start=1):
            if not 1 <= j <= self.cod:
                raise ScopeError(j, self.cod)
        if self.mode is Mode.LINEAR:
            if self.dom != self.cod or not _is_injective(self.mapping):
                raise ModeViolation("linear renaming must be a bijection")
        elif self.mode is Mode.AFFINE:
            if not _is_injective(self.mapping):
                raise ModeViolation("affine renaming must be injective")
        elif self.mode is Mode.RELEVANT:
            if not _is_surjective(self.mapping, self.cod):
                raise ModeViolation("relevant renaming must be surjective")

    def __call__(self, position):
        if not 1 <= position <= self.dom:
            raise ScopeError(position, self.dom)
        return self.mapping[position - 1]


def identity(n, mode):
    """The identity renaming on a context of size n; valid in every mode."""
    return Renaming(n, n, tuple(range(1, n + 1)), mode)


def compose(second, first):
    """second after first.  Modes and the middle context must agree."""
    if first.mode is not second.mode:
        raise ValueError(f"mode mismatch: {first.mode} vs {second.mode}")
    if first.cod != second.dom:
        raise ValueError(
            f"domain mismatch: first has codomain {first.cod}, "
            f"second has domain {second.dom}"
        )
    mapping = tuple(second.mapping[j - 1] for j in first.mapping)
    return Renaming(first.dom, second.cod, mapping, first.mode)


def generator(kind, at, ambient, mode):
    """A structural generator acting at position `at` of an `ambient` context.

    Swap exchanges positions at and at+1 (domain = codomain = ambient).
    Weaken inserts a skipped position at `at` (codomain = ambient + 1).
    Contract merges positions at and at+1 (codomain = ambient - 1).
    """
    if kind is GeneratorKind.SWAP:
        if not 1 <= at <= ambient - 1:
            raise ScopeError(at, ambient - 1 if ambient > 0 else 0)
        mapping = list(range(1, ambient + 1))
        mapping[at - 1], mapping[at] = mapping[at], mapping[at - 1]
        return Renaming(ambient, ambient, tuple(mapping), mode)
    if kind is GeneratorKind.WEAKEN:
        if not mode.allows_weakening:
            raise CapabilityError(f"no weakening in {mode} mode")
        if not 1 <= at <= ambient + 1:
            raise ScopeError(at, ambient + 1)
        mapping = tuple(i if i < at else i + 1 for i in range(1, ambient + 1))
        return Renaming(ambient, ambient + 1, mapping, mode)
    if kind is GeneratorKind.CONTRACT:
        if not mode.allows_contraction:
            raise CapabilityError(f"no contraction in {mode} mode")
        if not 1 <= at <= ambient - 1:
            raise ScopeError(at, ambient - 1 if ambient > 0 else 0)
        mapping = tuple(
            i if i <= at else i - 1 for i in range(1, ambient + 1)
        )
        return Renaming(ambient, ambient - 1, mapping, mode)
    raise ValueError(f"unknown generator kind: {kind}")


def _mode_admits(mode, mapping, dom, cod):
    if mode is Mode.LINEAR:
        return dom == cod and _is_injective(mapping)
    if mode is Mode.AFFINE:
        return _is_injective(mapping)
    if mode is Mode.RELEVANT:
        return _is_surjective(mapping, cod)
    return True


def enumerate_renamings(m, n, mode, limit=ENUMERATION_LIMIT):
    """All mode-valid renamings from a context of size m to one of size n."""
    if m > limit or n > limit:
        raise LimitExceeded(f"context sizes {m}, {n} exceed the limit {limit}")
    out = []
    for mapping in itertools.product(range(1, n + 1), repeat=m):
        if _mode_admits(mode, mapping, m, n):
            out.append(Renaming(m, n, mapping, mode))
    return out


def count_renamings(m, n, mode):
    """Closed-form size of the renaming set from m to n."""
    if mode is Mode.CARTESIAN:
        return n**m
    if mode is Mode.LINEAR:
        return math.factorial(m) if m == n else 0
    if mode is Mode.AFFINE:
        return math.perm(n, m) if m <= n else 0
    # Surjections m -> n by inclusion-exclusion.
    if m < n:
        return 0
    return sum(
        (-1) ** j * math.comb(n, j) * (n - j) ** m for j in range(n + 1)
    )


def generated_closure(mode, max_size):
    """Close identities and generators under composition, up to max_size.

    Returns the set of renamings reachable between all contexts of size
    <= max_size.  For each mode this equals the full renaming sets: the
    generators present exactly the mode's maps.
    """
    if max_size > CLOSURE_LIMIT:
        raise LimitExceeded(f"max_size {max_size} exceeds the limit {CLOSURE_LIMIT}")
    seeds = [identity(a, mode) for a in range(max_size + 1)]
    for a in range(max_size + 1):
        for at in range(1, a):
            seeds.append(generator(GeneratorKind.SWAP, at, a, mode))
        if mode.allows_weakening and a + 1 <= max_size:
            for at in range(1, a + 2):
                seeds.append(generator(GeneratorKind.WEAKEN, at, a, mode))
        if mode.allows_contraction:
            for at in range(1, a):
                seeds.append(generator(GeneratorKind.CONTRACT, at, a, mode))
    closure = set(seeds)
    frontier = list(closure)
    while frontier:
        fresh = []
        for f in frontier:
            for g in closure:
                for second, first in ((f, g), (g, f)):
                    if first.cod == second.dom:
                        h = compose(second, first)
                        if h not in closure:
                            fresh.append(h)
        closure.update(fresh)
        frontier = fresh
    return closure


_RENAMING_RE = re.compile(r"^\[\s*((?:\d+\s*)*)\]$")


def parse_renaming(text, mode, cod=None):
    """Parse the textual form `[2 1 3]` (position i maps to the i-th entry).

    The codomain defaults to the largest entry; pass `cod` for maps into a
    larger context (for example a weakening).
    """
    match = _RENAMING_RE.match(text.strip())
    if match is None:
        raise ValueError(f"bad renaming literal: {text!r}")
    entries = tuple(int(tok) for tok in match.group(1).split())
    if cod is None:
        cod = max(entries, default=0)
    return Renaming(len(entries), cod, entries, mode)


def print_renaming(renaming):
    return "[" + " ".join(str(j) for j in renaming.mapping) + "]"
