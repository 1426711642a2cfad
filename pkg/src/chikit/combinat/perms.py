from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _iter_perms
from math import comb

from .. import kernels


@dataclass(frozen=True)
class Permutation:
    """One-line word (sigma(1), ..., sigma(m)) of a bijection of {1..m}."""

    word: tuple

    def __post_init__(self):
        w = tuple(int(x) for x in self.word)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
        object.__setattr__(self, "word", w)

    @classmethod
    def identity(cls, m: int) -> Permutation:
        return cls(tuple(range(1, m + 1)))

    def __len__(self):
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    @property
    def sign(self) -> int:
        inv = sum(1 for i in range(len(self.word)) for j in range(i + 1, len(self.word))
                  if self.word[i] > self.word[j])
        return -1 if inv % 2 else 1

    def inverse(self) -> Permutation:
        out = [0] * len(self.word)
        for i, v in enumerate(self.word, start=1):
            out[v - 1] = i
        return Permutation(tuple(out))

    def compose(self, other: Permutation) -> Permutation:
        """(self o other)(i) = self(other(i))."""
        if len(self) != len(other):
            raise ValueError("permutations of different sizes")
        return Permutation(tuple(self.word[j - 1] for j in other.word))

    __mul__ = compose

    def shifted(self, k: int) -> tuple:
        return tuple(v + k for v in self.word)

    def is_shuffle(self, m: int) -> bool:
        w = self.word
        return all(w[i] < w[i + 1] for i in range(m - 1)) and \
            all(w[i] < w[i + 1] for i in range(m, len(w) - 1))

    def __str__(self):
        return "".join(map(str, self.word)) if len(self.word) < 10 else " ".join(map(str, self.word))


@dataclass(frozen=True)
class ShuffleSet:
    m: int
    n: int
    elements: tuple

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def signed(self):
        return [(t, t.sign) for t in self.elements]


def shuffles(m: int, n: int) -> ShuffleSet:
    """The type-(m, n) shuffles: permutations increasing on 1..m and on
    m+1..m+n, ordered lexicographically by the image of 1..m."""
    if m < 0 or n < 0:
        raise ValueError("shuffle type must be non-negative")
    table = kernels.shuffle_table(m, n)
    elems = tuple(Permutation(tuple(int(x) for x in row)) for row in table)
    assert len(elems) == comb(m + n, m)
    return ShuffleSet(m, n, elems)


def shuffle_signs(m: int, n: int):
    table = kernels.shuffle_table(m, n)
    return table, kernels.perm_signs(table)


def all_permutations(m: int):
    for w in _iter_perms(range(1, m + 1)):
        yield Permutation(w)


def shuffle_words(u, v):
    """All interleavings of the words u and v (the positions of u's letters
    are the image of the first block of a shuffle)."""
    m, n = len(u), len(v)
    for tau in shuffles(m, n):
        w = [None] * (m + n)
        for i in range(m):
            w[tau.word[i] - 1] = u[i]
        for j in range(n):
            w[tau.word[m + j] - 1] = v[j]
        yield tuple(w)
