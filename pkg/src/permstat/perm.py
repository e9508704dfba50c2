"""
Permutations in one-line notation and the structural maps between them.

Positions and values are 1-indexed everywhere a caller can see them: a
permutation of size n is a rearrangement of ``1..n``.  Because
:class:`Permutation` is a tuple, ``sigma[0]`` is sigma(1); use ``sigma(i)``
for the 1-indexed image.

>>> sigma = Permutation.parse("3 4 1 5 2")
>>> str(cycle0(sigma))
'3 1 5 4 2'
>>> standard_cycle_notation(Permutation.parse("4 5 6 1 2 7 8 3"))
[(4, 1), (5, 2), (8, 3, 6, 7)]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Permutation", "PermutationParseError", "CyclePathNotation",
    "identity", "inverse", "flip", "prime", "cut", "insert",
    "standard_cycle_notation", "left_to_right_maxima_split",
    "cycle0", "cycle0_inverse", "cycle_path_notation",
    "cycle_neg1", "cycle_neg1_inverse",
]


class PermutationParseError(ValueError):
    """Raised for text that is not a permutation of 1..n."""

    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token


class Permutation(tuple):
    """
    A permutation of ``1..n`` in one-line notation.

    Construction validates; use :meth:`trusted` inside hot loops where the
    values are known to be a permutation already.
    """

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        t = tuple.__new__(cls, values)
        n = len(t)
        if n < 1:
            raise ValueError("a permutation needs at least one entry")
        if sorted(t) != list(range(1, n + 1)):
            raise ValueError(f"{tuple(t)} is not a rearrangement of 1..{n}")
        return t

    @classmethod
    def trusted(cls, values: Iterable[int]) -> Permutation:
        return tuple.__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """
        Parse ``"3 1 4 2"`` or, for n <= 9, the compact form ``"3142"``.

        >>> Permutation.parse("3142") == Permutation.parse("3 1 4 2")
        True
        """
        text = text.strip()
        if not text:
            raise PermutationParseError("empty permutation", token="")
        tokens = text.split()
        if len(tokens) == 1 and len(tokens[0]) > 1:
            # compact digit string; only unambiguous below 10
            tokens = list(tokens[0])
            if len(tokens) > 9:
                raise PermutationParseError(
                    "compact form is only accepted for n <= 9; separate entries by spaces",
                    token=text)
        values = []
        for tok in tokens:
            if not tok.isdigit():
                raise PermutationParseError(f"not a positive integer: {tok!r}", token=tok)
            values.append(int(tok))
        n = len(values)
        seen = set()
        for tok, v in zip(tokens, values):
            if not 1 <= v <= n:
                raise PermutationParseError(f"entry {tok!r} is outside 1..{n}", token=tok)
            if v in seen:
                raise PermutationParseError(f"entry {tok!r} appears more than once", token=tok)
            seen.add(v)
        return cls.trusted(values)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        """The image sigma(i), 1-indexed."""
        if not 1 <= i <= len(self):
            raise IndexError(f"position {i} outside 1..{len(self)}")
        return tuple.__getitem__(self, i - 1)

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


def identity(n: int) -> Permutation:
    return Permutation.trusted(range(1, n + 1))


def inverse(sigma: Sequence[int]) -> Permutation:
    """
    >>> str(inverse(Permutation.parse("3 1 4 2")))
    '2 4 1 3'
    """
    inv = [0] * len(sigma)
    for i, v in enumerate(sigma, 1):
        inv[v - 1] = i
    return Permutation.trusted(inv)


def flip(sigma: Sequence[int]) -> Permutation:
    """Reverse-complement: i -> n+1 - sigma(n+1-i).  An involution."""
    n = len(sigma)
    return Permutation.trusted(n + 1 - v for v in reversed(sigma))


def prime(sigma: Sequence[int]) -> Permutation:
    """i -> n+1 - sigma^{-1}(i).  Takes cover to destilde_2."""
    n = len(sigma)
    return Permutation.trusted(n + 1 - v for v in inverse(sigma))


def cut(sigma: Sequence[int]) -> Permutation:
    """Delete the entry 1 and decrement everything else."""
    if len(sigma) < 2:
        raise ValueError("cut needs a permutation of size at least 2")
    return Permutation.trusted(v - 1 for v in sigma if v != 1)


def insert(sigma: Sequence[int], i: int) -> Permutation:
    """
    Increment every entry, then place 1 at position ``i``.

    For sigma of size n the legal positions are ``1..n+1``; the result has
    size n+1 and ``cut(insert(sigma, i)) == sigma``.
    """
    n = len(sigma)
    if not 1 <= i <= n + 1:
        raise ValueError(f"insert position {i} outside 1..{n + 1}")
    out = [v + 1 for v in sigma]
    out.insert(i - 1, 1)
    return Permutation.trusted(out)


def standard_cycle_notation(sigma: Sequence[int]) -> list[tuple[int, ...]]:
    """
    Cycles of sigma, each led by its maximum, leaders increasing.

    >>> standard_cycle_notation((2, 1))
    [(2, 1)]
    """
    n = len(sigma)
    seen = [False] * (n + 1)
    cycles = []
    # scanning from n down makes every new cycle start at its maximum
    for start in range(n, 0, -1):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        x = sigma[start - 1]
        while x != start:
            cycle.append(x)
            seen[x] = True
            x = sigma[x - 1]
        cycles.append(tuple(cycle))
    cycles.reverse()
    return cycles


def left_to_right_maxima_split(pi: Sequence[int]) -> list[tuple[int, ...]]:
    """Cut ``pi`` into blocks, each starting at a left-to-right maximum."""
    blocks: list[list[int]] = []
    best = 0
    for v in pi:
        if v > best:
            best = v
            blocks.append([v])
        else:
            blocks[-1].append(v)
    return [tuple(b) for b in blocks]


def _from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> list[int]:
    out = [0] * n
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:]):
            out[a - 1] = b
        out[cyc[-1] - 1] = cyc[0]
    return out


def cycle0(sigma: Sequence[int]) -> Permutation:
    """
    Foata's map: erase the parentheses in the standard cycle notation of
    sigma^{-1}.  exc(sigma) == des(cycle0(sigma)).
    """
    cycles = standard_cycle_notation(inverse(sigma))
    return Permutation.trusted(v for cyc in cycles for v in cyc)


def cycle0_inverse(pi: Sequence[int]) -> Permutation:
    """
    >>> str(cycle0_inverse((3, 4, 2, 1, 5)))
    '2 4 3 1 5'
    """
    sigma_inv = _from_cycles(len(pi), left_to_right_maxima_split(pi))
    return inverse(sigma_inv)


@dataclass(frozen=True)
class CyclePathNotation:
    """
    The functional graph i -> sigma(i) turned into edges sigma(i) -> i-1 on
    ``0..n``: some cycles plus a single path from n down to 0.
    """

    cycles: tuple[tuple[int, ...], ...]
    path: tuple[int, ...]

    def __post_init__(self):
        if not self.path or self.path[-1] != 0:
            raise ValueError("path must end with 0")
        n = self.path[0]
        elems = [v for c in self.cycles for v in c] + list(self.path)
        if sorted(elems) != list(range(n + 1)):
            raise ValueError("cycles and path must cover 0..n exactly once")
        leaders = [c[0] for c in self.cycles]
        for c in self.cycles:
            if c[0] != max(c):
                raise ValueError(f"cycle {c} is not led by its maximum")
        if any(a >= b for a, b in zip(leaders, leaders[1:] + [n])):
            raise ValueError("cycle leaders must increase and stay below n")

    @property
    def n(self) -> int:
        return self.path[0]

    def word(self) -> tuple[int, ...]:
        """Concatenate cycles and path, dropping the trailing 0."""
        return tuple(v for c in self.cycles for v in c) + self.path[:-1]

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles + (self.path,))


def cycle_path_notation(sigma: Sequence[int]) -> CyclePathNotation:
    """
    >>> str(cycle_path_notation((7, 8, 3, 5, 1, 2, 4, 9, 6)))
    '(5 3 2)(8 1 4 6)(9 7 0)'
    """
    n = len(sigma)
    succ = [0] * (n + 1)  # succ[v]: head of the edge leaving v; 0 has none
    for i, v in enumerate(sigma, 1):
        succ[v] = i - 1
    path = [n]
    while path[-1] != 0:
        path.append(succ[path[-1]])
    seen = [False] * (n + 1)
    for v in path:
        seen[v] = True
    cycles = []
    for start in range(n, 0, -1):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        x = succ[start]
        while x != start:
            cycle.append(x)
            seen[x] = True
            x = succ[x]
        cycles.append(tuple(cycle))
    cycles.reverse()
    return CyclePathNotation(tuple(cycles), tuple(path))


def cycle_neg1(sigma: Sequence[int]) -> Permutation:
    """
    Graph bijection taking exc_k to bdestilde_{k+1} and unexc to asc.

    >>> str(cycle_neg1((7, 8, 3, 5, 1, 2, 4, 9, 6)))
    '5 3 2 8 1 4 6 9 7'
    """
    return Permutation.trusted(cycle_path_notation(sigma).word())


def cycle_neg1_inverse(pi: Sequence[int]) -> Permutation:
    n = len(pi)
    blocks = left_to_right_maxima_split(pi)
    # last block starts with n and, extended by 0, is the path
    path = blocks[-1] + (0,)
    sigma = [0] * n
    for cyc in blocks[:-1]:
        for a, b in zip(cyc, cyc[1:]):
            sigma[b] = a
        sigma[cyc[0]] = cyc[-1]
    for a, b in zip(path, path[1:]):
        sigma[b] = a
    return Permutation.trusted(sigma)
