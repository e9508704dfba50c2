"""
Codes and coding schemes.

A code of length n is a sequence c(1..n) with 0 <= c(i) < i; there are n! of
them.  Two bijections from permutations to codes live here: the inversion
coding (sum of the code = inv) and the majhat_k coding built by repeatedly
cutting out the entry 1 (sum = majhat_k, st_k = des_k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import Permutation, cut, insert
from .stats import majhat_k

__all__ = [
    "Code", "CodeParseError", "InvalidCode", "InsertProfile",
    "code_sum", "st", "st_k", "inv_encode", "inv_decode",
    "a_set", "a_profile", "a_tilde_profile",
    "maj_encode", "maj_decode", "insert_delta", "CODE_STATS",
]


class CodeParseError(ValueError):
    """Text that does not look like ``(c1,c2,...)``."""


class InvalidCode(ValueError):
    """Well-formed text whose entries break 0 <= c(i) < i."""


class Code(tuple):
    """A code c(1), ..., c(n) stored as a tuple; ``c(i)`` is 1-indexed."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        t = tuple.__new__(cls, entries)
        if not t:
            raise InvalidCode("a code needs at least one entry")
        for i, v in enumerate(t, 1):
            if not 0 <= v < i:
                raise InvalidCode(f"c({i}) = {v} violates 0 <= c({i}) < {i}")
        return t

    @classmethod
    def trusted(cls, entries: Iterable[int]) -> Code:
        return tuple.__new__(cls, entries)

    @classmethod
    def parse(cls, text: str) -> Code:
        """
        >>> Code.parse("(0,1,2)")
        Code('(0,1,2)')
        """
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise CodeParseError(f"code must be written as (c1,c2,...), got {text!r}")
        parts = [p.strip() for p in s[1:-1].split(",")]
        for p in parts:
            if not p.lstrip("-").isdigit():
                raise CodeParseError(f"not an integer: {p!r}")
        return cls(int(p) for p in parts)

    def __call__(self, i: int) -> int:
        return tuple.__getitem__(self, i - 1)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self) -> str:
        return f"Code({str(self)!r})"


def code_sum(c: Sequence[int]) -> int:
    return sum(c)


def st_k(c: Sequence[int], k: int) -> int:
    """
    Running value that steps up whenever c(i) exceeds it by more than k-1.

    >>> st_k((0, 0, 2, 3), 2)
    2
    """
    value = 0
    for x in c[1:]:
        if x > value + k - 1:
            value += 1
    return value


def st(c: Sequence[int]) -> int:
    return st_k(c, 1)


def inv_encode(sigma: Sequence[int]) -> Code:
    """c(i) = number of values smaller than i sitting to the right of i."""
    n = len(sigma)
    out = [0] * n
    for p, v in enumerate(sigma):
        out[v - 1] = sum(1 for w in sigma[p + 1:] if w < v)
    return Code.trusted(out)


def inv_decode(c: Sequence[int]) -> Permutation:
    """
    Insert 2, 3, ..., n in turn; value i goes c(i) places from the end.

    >>> str(inv_decode((0, 1, 1)))
    '2 3 1'
    """
    word = [1]
    for i in range(2, len(c) + 1):
        word.insert(len(word) - c[i - 1], i)
    return Permutation.trusted(word)


@dataclass(frozen=True)
class InsertProfile:
    """
    Insertion positions for the entry 1 into a permutation of size n-1.

    ``sequence[j]`` is the position whose insertion raises majhat_k by exactly
    j: the members of ``a_set`` in decreasing order, then the remaining
    positions in increasing order.
    """

    a_set: frozenset[int]
    sequence: tuple[int, ...]

    @classmethod
    def from_set(cls, a_set: Iterable[int], n: int) -> InsertProfile:
        a = frozenset(a_set)
        rest = (i for i in range(1, n + 1) if i not in a)
        return cls(a, tuple(sorted(a, reverse=True)) + tuple(rest))

    def rank_of(self, position: int) -> int:
        return self.sequence.index(position)


def a_set(sigma: Sequence[int], k: int) -> frozenset[int]:
    """
    Positions in ``1..n`` (n = len(sigma) + 1) where inserting 1 leaves des_k
    unchanged.  Position n appends, which can only add a k-descent, so the
    "breaks an existing k-descent" clause is checked only below n.
    """
    n = len(sigma) + 1
    out = {1}
    for i in range(2, n + 1):
        left = sigma[i - 2]
        if left < k or (i <= n - 1 and left >= sigma[i - 1] + k):
            out.add(i)
    return frozenset(out)


def a_profile(sigma: Sequence[int], k: int) -> InsertProfile:
    """
    >>> a_profile((5, 2, 1, 3, 4), 2).sequence
    (4, 2, 1, 3, 5, 6)
    """
    return InsertProfile.from_set(a_set(sigma, k), len(sigma) + 1)


def a_tilde_profile(sigma: Sequence[int], k_plus_1: int) -> InsertProfile:
    """
    Positions where inserting 1 leaves destilde_{k+1} unchanged.

    Position 1 always leaves a leading 1, which forces the "+1" of destilde;
    that is a change exactly when sigma did not already carry it, i.e. when
    sigma(1) > (n-1) - k.  Then 1 is dropped from A_{k+1}.
    """
    k = k_plus_1 - 1
    m = len(sigma)
    a = a_set(sigma, k_plus_1)
    if sigma[0] > m - k:
        a = a - {1}
    return InsertProfile.from_set(a, m + 1)


def insert_delta(sigma: Sequence[int], i: int, k: int) -> int:
    """
    majhat_k(insert(sigma, i)) - majhat_k(sigma) in closed form:
    |A_k ∩ {i+1..n}| + (0 if i in A_k else i-1).
    """
    n = len(sigma) + 1
    if not 1 <= i <= n:
        raise ValueError(f"insert position {i} outside 1..{n}")
    a = a_set(sigma, k)
    above = sum(1 for x in a if x > i)
    return above + (0 if i in a else i - 1)


def maj_encode(sigma: Sequence[int], k: int) -> Code:
    """
    c(i) = majhat_k(sigma_i) - majhat_k(sigma_{i-1}) along the cut chain
    sigma_n = sigma, sigma_{i-1} = cut(sigma_i).

    >>> str(maj_encode((3, 2, 1), 1))
    '(0,1,2)'
    """
    n = len(sigma)
    values = [0] * n
    current = tuple(sigma)
    current_val = majhat_k(current, k)
    for i in range(n, 1, -1):
        smaller = cut(current)
        smaller_val = majhat_k(smaller, k)
        values[i - 1] = current_val - smaller_val
        current, current_val = smaller, smaller_val
    # Code() re-checks 0 <= c(i) < i; a failure here is a bug, not bad input
    return Code(values)


def maj_decode(c: Sequence[int], k: int) -> Permutation:
    """
    Rebuild sigma by inserting 1 at position a_{c(i)} of the current insert
    profile, for i = 2..n.

    >>> str(maj_decode((0, 1, 2), 1))
    '3 2 1'
    """
    sigma: tuple[int, ...] = (1,)
    for i in range(2, len(c) + 1):
        profile = a_profile(sigma, k)
        sigma = insert(sigma, profile.sequence[c[i - 1]])
    return Permutation.trusted(sigma)


# name -> (function, takes_k); these act on codes
CODE_STATS = {
    "sum": (code_sum, False),
    "st_k": (st_k, True),
}
