"""Braid words: parsing, closure data, mirror and Markov stabilization.

A braid on ``strands`` strands is a sequence of nonzero integers.  Letter
``g`` is the half twist of strands ``|g|`` and ``|g|+1``; positive letters are
right-handed crossings.  Letters act on the disk left to right.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

_TOKEN = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")


class BraidParseError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidParseError(f"need at least one strand, got {self.strands}")
        for g in self.letters:
            if g == 0 or not 1 <= abs(g) <= self.strands - 1:
                raise BraidParseError(
                    f"generator {g} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))

    def __str__(self):
        if not self.letters:
            return ""
        return " ".join(f"s{abs(g)}" + ("^-1" if g < 0 else "") for g in self.letters)

    @property
    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """perm[k-1] = final position of the strand starting at position k."""
        pos = list(range(1, self.strands + 1))
        for g in self.letters:
            a = abs(g)
            pos = [a + 1 if p == a else a if p == a + 1 else p for p in pos]
        return tuple(pos)


@dataclass(frozen=True)
class LinkPresentation:
    braid: BraidWord
    permutation: tuple[int, ...] = field(init=False)
    components: int = field(init=False)
    writhe: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "permutation", self.braid.permutation())
        object.__setattr__(self, "components", _cycle_count(self.permutation))
        object.__setattr__(self, "writhe", self.braid.writhe)


def _cycle_count(perm):
    seen = set()
    cycles = 0
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cycles += 1
        k = start
        while k not in seen:
            seen.add(k)
            k = perm[k - 1]
    return cycles


def parse(text: str, strands: int) -> BraidWord:
    """Parse whitespace separated tokens ``sK``, ``sK^-1`` or ``sK^N``.

    ``sK^N`` expands to ``|N|`` copies of the letter with the sign of ``N``;
    ``sK^0`` contributes nothing.
    """
    letters = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if m is None:
            raise BraidParseError(f"malformed token {tok!r}")
        k = int(m.group(1))
        power = int(m.group(2)) if m.group(2) is not None else 1
        if not 1 <= k <= strands - 1:
            raise BraidParseError(f"generator s{k} out of range for {strands} strands")
        letters.extend([k if power > 0 else -k] * abs(power))
    return BraidWord(strands, tuple(letters))


def closure_components(b: BraidWord) -> int:
    return _cycle_count(b.permutation())


def stabilize(b: BraidWord, sign: int = 1) -> BraidWord:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    k = b.strands
    return BraidWord(k + 1, b.letters + (sign * k,))


def mirror(b: BraidWord) -> BraidWord:
    return BraidWord(b.strands, tuple(-g for g in b.letters))


def reverse(b: BraidWord) -> BraidWord:
    return BraidWord(b.strands, tuple(reversed(b.letters)))


def apply_handedness(b: BraidWord, handedness: str = "left") -> BraidWord:
    """Read ``b`` in the requested letter convention.

    Under ``"left"`` a positive letter stands for the crossing drawn in the
    left-handed example family, which the engine realizes as a negative
    half twist.  ``"right"`` keeps letters as given.
    """
    if handedness == "right":
        return b
    if handedness == "left":
        return mirror(b)
    raise ValueError(f"unknown handedness {handedness!r}")
