"""Classification of v1's opinion sequence on a cycle when v1 is anti-threshold."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence


class PatternKind(Enum):
    CONSTANT = "i"
    ALTERNATING = "ii"
    PPMM = "iii"
    PPPMMM = "iv"
    XXXM = "v"
    XXXMM = "vi"
    XMM = "vii"
    EIGHT = "viii"


# base word for x = +1, and whether the class is parameterised by x
_BASE: dict[PatternKind, tuple[tuple[int, ...], bool]] = {
    PatternKind.CONSTANT: ((1,), True),
    PatternKind.ALTERNATING: ((1, -1), False),
    PatternKind.PPMM: ((1, 1, -1, -1), False),
    PatternKind.PPPMMM: ((1, 1, 1, -1, -1, -1), False),
    PatternKind.XXXM: ((1, 1, 1, -1), True),
    PatternKind.XXXMM: ((1, 1, 1, -1, -1), True),
    PatternKind.XMM: ((1, -1, -1), True),
    PatternKind.EIGHT: ((1, -1, -1, 1, 1, -1, -1, -1), True),
}

PERIODS_BY_CLASS: dict[PatternKind, frozenset[int]] = {
    PatternKind.CONSTANT: frozenset({1, 2}),
    PatternKind.ALTERNATING: frozenset({2}),
    PatternKind.PPMM: frozenset({4}),
    PatternKind.PPPMMM: frozenset({6}),
    PatternKind.XXXM: frozenset({4}),
    PatternKind.XXXMM: frozenset({5, 10}),
    PatternKind.XMM: frozenset({3, 6}),
    PatternKind.EIGHT: frozenset({8}),
}

LOOPLESS_CLASSES = frozenset(
    {
        PatternKind.CONSTANT,
        PatternKind.ALTERNATING,
        PatternKind.PPMM,
        PatternKind.PPPMMM,
        PatternKind.XXXM,
        PatternKind.XXXMM,
    }
)


@dataclass(frozen=True)
class PatternClass:
    kind: PatternKind
    sign: Optional[int] = None

    @property
    def roman(self) -> str:
        return self.kind.value

    @property
    def periods(self) -> frozenset[int]:
        return PERIODS_BY_CLASS[self.kind]

    def __str__(self) -> str:
        return f"({self.roman})" + ("" if self.sign is None else f" x={self.sign:+d}")


def minimal_word(seq: Sequence[int]) -> tuple[int, ...]:
    """Shortest prefix whose repetition reproduces the cyclic sequence."""
    seq = tuple(seq)
    p = len(seq)
    for d in range(1, p + 1):
        if p % d == 0 and seq == seq[:d] * (p // d):
            return seq[:d]
    return seq


def _rotations(word: tuple[int, ...]):
    for k in range(len(word)):
        yield word[k:] + word[:k]


def classify_pattern(c_sequence: Sequence[int]) -> Optional[PatternClass]:
    """The unique class whose word matches ``c_sequence`` up to rotation (and sign
    where the class is parameterised by x); ``None`` if no class matches."""
    seq = tuple(c_sequence)
    if not seq:
        raise ValueError("empty c-sequence")
    if any(c not in (1, -1) for c in seq):
        raise ValueError("c-sequence entries must be +1 or -1")
    word = minimal_word(seq)
    rots = set(_rotations(word))
    for kind, (base, signed) in _BASE.items():
        if len(base) != len(word):
            continue
        for x in (1, -1) if signed else (1,):
            if tuple(x * b for b in base) in rots:
                return PatternClass(kind, x if signed else None)
    return None


def c_sequence_from_bits(cbits: int, period: int) -> tuple[int, ...]:
    return tuple(1 if cbits >> j & 1 else -1 for j in range(period))


def pattern_consistent(cls: Optional[PatternClass], period: int, loopless: bool = False) -> bool:
    if cls is None or period not in cls.periods:
        return False
    return not loopless or cls.kind in LOOPLESS_CLASSES
