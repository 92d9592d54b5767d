"""Permutations in one-line (window) notation and their basic statistics.

Permutations act on ``[n] = {1, ..., n}``; ``w.window[i - 1]`` is ``w(i)``.
Composition is right-to-left: ``compose(u, v)(i) == u(v(i))``.  Permutations
of different degree are compared after padding the shorter one with fixed
points, so ``Permutation((2, 1))`` and ``Permutation((2, 1, 3))`` are treated
as the same element of ``S_infinity`` by every function here that takes two
permutations.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .errors import MalformedInput

__all__ = [
    "Permutation",
    "RankMatrix",
    "parse_permutation",
    "lehmer_code",
    "code_to_perm",
    "rank_matrix",
    "rank_matrix_to_perm",
    "bruhat_leq",
    "compose",
    "inverse",
    "identity",
    "long_element",
    "reduced_word",
    "word_to_perm",
    "pad",
    "all_perms",
]


@dataclass(frozen=True)
class Permutation:
    window: tuple[int, ...]
    n: int = field(init=False)

    def __post_init__(self) -> None:
        window = tuple(int(a) for a in self.window)
        n = len(window)
        if n == 0:
            raise MalformedInput("permutation of degree 0")
        if sorted(window) != list(range(1, n + 1)):
            raise MalformedInput(f"{window} is not a bijection on [1..{n}]")
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "n", n)

    def __call__(self, i: int) -> int:
        if i > self.n:
            return i
        return self.window[i - 1]

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.window)

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.window))
        return ",".join(map(str, self.window))

    def __repr__(self) -> str:
        return f"Permutation({self.window})"

    @cached_property
    def inv(self) -> int:
        """Number of inversions."""
        w = self.window
        return sum(1 for i, j in itertools.combinations(range(self.n), 2) if w[i] > w[j])

    @cached_property
    def descents(self) -> frozenset[int]:
        """``Des(w) = {i : w(i) > w(i+1)}`` (1-based positions)."""
        w = self.window
        return frozenset(i + 1 for i in range(self.n - 1) if w[i] > w[i + 1])

    @property
    def des(self) -> int:
        return len(self.descents)

    @cached_property
    def inversions(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(i, j)``, ``i < j``, with ``w(i) > w(j)``, in lex order."""
        w = self.window
        return tuple(
            (i + 1, j + 1)
            for i, j in itertools.combinations(range(self.n), 2)
            if w[i] > w[j]
        )

    def is_identity(self) -> bool:
        return all(a == i + 1 for i, a in enumerate(self.window))

    def trimmed(self) -> Permutation:
        """Drop trailing fixed points (keeping degree at least 1)."""
        k = self.n
        while k > 1 and self.window[k - 1] == k:
            k -= 1
        return self if k == self.n else Permutation(self.window[:k])

    def padded(self, n: int) -> Permutation:
        if n <= self.n:
            return self
        return Permutation(self.window + tuple(range(self.n + 1, n + 1)))

    def swap_positions(self, i: int) -> Permutation:
        """Right multiplication ``w * s_i``: swap the entries in positions i, i+1."""
        w = list(self.padded(i + 1).window)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))

    def swap_values(self, i: int) -> Permutation:
        """Left multiplication ``s_i * w``: swap the values i and i+1."""
        w = self.padded(i + 1).window
        swap = {i: i + 1, i + 1: i}
        return Permutation(tuple(swap.get(a, a) for a in w))


@dataclass(frozen=True)
class RankMatrix:
    """``a[i-1][j-1] = |{w(1), ..., w(j)} ∩ {1, ..., i}|``."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i - 1][j - 1]


_SEPARATORS = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Permutation:
    """Parse ``"1432"`` (digits, n <= 9) or ``"1,4,3,2"`` / ``"1 4 3 2"``."""
    text = text.strip()
    if not text:
        raise MalformedInput("empty permutation")
    if _SEPARATORS.search(text):
        parts = [p for p in _SEPARATORS.split(text) if p]
    else:
        parts = list(text)
    try:
        window = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise MalformedInput(f"cannot parse permutation {text!r}") from exc
    return Permutation(window)


def pad(*perms: Permutation) -> tuple[Permutation, ...]:
    """Pad all permutations with fixed points to their common maximal degree."""
    n = max(p.n for p in perms)
    return tuple(p.padded(n) for p in perms)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def long_element(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def lehmer_code(w: Permutation) -> tuple[int, ...]:
    """``code_i = |{j > i : w(j) < w(i)}|``; the row lengths of the Rothe diagram."""
    win = w.window
    return tuple(
        sum(1 for b in win[i + 1:] if b < a) for i, a in enumerate(win)
    )


def code_to_perm(code: Sequence[int]) -> Permutation:
    """Inverse of :func:`lehmer_code`.

    Any finite sequence of nonnegative integers is the code of exactly one
    permutation of ``S_infinity``; the result is returned at the smallest
    degree that contains it (but never shorter than ``len(code)``).
    """
    code = list(code)
    if any(c < 0 for c in code):
        raise MalformedInput(f"negative entry in Lehmer code {code}")
    n = max([1, len(code)] + [i + 1 + c for i, c in enumerate(code)])
    code += [0] * (n - len(code))
    available = list(range(1, n + 1))
    window = []
    for c in code:
        if c >= len(available):
            raise MalformedInput(f"invalid Lehmer code {code}")
        window.append(available.pop(c))
    return Permutation(tuple(window))


def rank_matrix(w: Permutation) -> RankMatrix:
    n = w.n
    rows = []
    for i in range(1, n + 1):
        row, count = [], 0
        for j in range(1, n + 1):
            if w(j) <= i:
                count += 1
            row.append(count)
        rows.append(tuple(row))
    return RankMatrix(n, tuple(rows))


def rank_matrix_to_perm(a: RankMatrix) -> Permutation:
    """Recover ``w`` from the increment positions of its rank matrix."""
    n = a.n
    window = []
    for j in range(1, n + 1):
        # a[i, j] - a[i, j - 1] == [w(j) <= i]
        window.append(next(
            i for i in range(1, n + 1)
            if a[i, j] - (a[i, j - 1] if j > 1 else 0) == 1
        ))
    return Permutation(tuple(window))


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Strong Bruhat order via the Ehresmann rank-matrix criterion."""
    u, w = pad(u, w)
    if u.inv > w.inv:
        return False
    au, aw = rank_matrix(u).entries, rank_matrix(w).entries
    return all(x >= y for ru, rw in zip(au, aw) for x, y in zip(ru, rw))


def compose(u: Permutation, v: Permutation) -> Permutation:
    """``(u ∘ v)(i) = u(v(i))``."""
    u, v = pad(u, v)
    return Permutation(tuple(u(v(i)) for i in range(1, u.n + 1)))


def inverse(w: Permutation) -> Permutation:
    window = [0] * w.n
    for i, a in enumerate(w.window, start=1):
        window[a - 1] = i
    return Permutation(tuple(window))


def reduced_word(w: Permutation) -> tuple[int, ...]:
    """Lexicographically smallest reduced word ``(a_1, ..., a_l)``.

    ``w = s_{a_1} s_{a_2} ... s_{a_l}`` with ``l = inv(w)``.  Greedily peels
    off the smallest left descent, which yields the lex-minimal word because
    ``a`` can start a reduced word of ``w`` iff ``a`` is a left descent.
    """
    word = []
    while not w.is_identity():
        pos = inverse(w).window
        a = next(i for i in range(1, w.n) if pos[i - 1] > pos[i])
        word.append(a)
        w = w.swap_values(a)
    return tuple(word)


def word_to_perm(word: Sequence[int], n: int | None = None) -> Permutation:
    """The product ``s_{a_1} ... s_{a_l}`` as a permutation."""
    n = max([n or 1] + [a + 1 for a in word])
    w = identity(n)
    for a in word:
        w = w.swap_positions(a)
    return w


def all_perms(n: int) -> list[Permutation]:
    """All of ``S_n`` in lexicographic order of windows."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
