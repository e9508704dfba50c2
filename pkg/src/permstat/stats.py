"""
Permutation statistics: descents, ascents, k-descents, exceedances, major
indices and their variants, plus a small registry so statistics can be named
on the command line and in distribution requests (``"des_k:3"``).

All functions accept any sequence holding a permutation of ``1..n`` in
one-line notation; positions in returned sets are 1-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Callable, Sequence

from .perm import inverse

Perm = Sequence[int]


def des_k_set(sigma: Perm, k: int) -> frozenset[int]:
    """Positions i with sigma(i) >= sigma(i+1) + k."""
    return frozenset(i for i in range(1, len(sigma)) if sigma[i - 1] >= sigma[i] + k)


def des_k(sigma: Perm, k: int) -> int:
    return sum(1 for a, b in zip(sigma, sigma[1:]) if a >= b + k)


def maj_k(sigma: Perm, k: int) -> int:
    return sum(i for i in range(1, len(sigma)) if sigma[i - 1] >= sigma[i] + k)


def des_set(sigma: Perm) -> frozenset[int]:
    return des_k_set(sigma, 1)


def des(sigma: Perm) -> int:
    return des_k(sigma, 1)


def maj(sigma: Perm) -> int:
    return maj_k(sigma, 1)


def asc_set(sigma: Perm) -> frozenset[int]:
    return frozenset(i for i in range(1, len(sigma)) if sigma[i - 1] < sigma[i])


def asc(sigma: Perm) -> int:
    return sum(1 for a, b in zip(sigma, sigma[1:]) if a < b)


def amaj(sigma: Perm) -> int:
    return sum(i for i in range(1, len(sigma)) if sigma[i - 1] < sigma[i])


def inv(sigma: Perm) -> int:
    n = len(sigma)
    return sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])


def exc_k(sigma: Perm, k: int) -> int:
    """Number of positions with sigma(i) >= i + k."""
    return sum(1 for i, v in enumerate(sigma, 1) if v >= i + k)


def exc(sigma: Perm) -> int:
    return exc_k(sigma, 1)


def unexc(sigma: Perm) -> int:
    return sum(1 for i, v in enumerate(sigma, 1) if v < i)


def destilde_k(sigma: Perm, k: int) -> int:
    """des_k, plus one unless sigma(1) > n+1-k."""
    n = len(sigma)
    return des_k(sigma, k) + (0 if sigma[0] > n + 1 - k else 1)


def bdestilde_k(sigma: Perm, k: int) -> int:
    """des_k, plus one unless sigma(n) < k.  The flip image of destilde_k."""
    return des_k(sigma, k) + (0 if sigma[-1] < k else 1)


def close_pairs(sigma: Perm, k: int) -> int:
    """#{(i, j) : i < j and sigma(i) < sigma(j) < sigma(i) + k}."""
    n = len(sigma)
    pos = inverse(sigma)
    return sum(1 for v in range(1, n) for w in range(v + 1, min(v + k, n + 1))
               if pos[v - 1] < pos[w - 1])


def majhat_k(sigma: Perm, k: int) -> int:
    """
    maj_k plus the number of value-close non-inversions.

    >>> majhat_k((3, 1, 4, 2), 2)
    6
    """
    return maj_k(sigma, k) + close_pairs(sigma, k)


def cover(sigma: Perm) -> int:
    """
    #{i : sigma^{-1}(i+1) > sigma^{-1}(i) + 1}, plus one unless sigma(1) = 1.

    >>> cover((3, 1, 4, 2)), cover((2, 4, 3, 1))
    (3, 2)
    """
    pos = inverse(sigma)
    gaps = sum(1 for a, b in zip(pos, pos[1:]) if b > a + 1)
    return gaps + (0 if sigma[0] == 1 else 1)


def asc2_set(sigma: Perm) -> frozenset[int]:
    return frozenset(i for i in range(1, len(sigma)) if sigma[i - 1] < sigma[i] - 1)


def asc2(sigma: Perm) -> int:
    return sum(1 for a, b in zip(sigma, sigma[1:]) if a < b - 1)


def amaj2(sigma: Perm) -> int:
    return sum(i for i in range(1, len(sigma)) if sigma[i - 1] < sigma[i] - 1)


def asctilde2(sigma: Perm) -> int:
    return asc2(sigma) + (0 if sigma[0] == 1 else 1)


def maj_minus_exc(sigma: Perm) -> int:
    return maj(sigma) - exc(sigma)


def des_of_inverse(sigma: Perm) -> int:
    return des(inverse(sigma))


# name -> (function, takes_k)
PERM_STATS: dict[str, tuple[Callable[..., int], bool]] = {
    "des": (des, False),
    "asc": (asc, False),
    "maj": (maj, False),
    "amaj": (amaj, False),
    "inv": (inv, False),
    "exc": (exc, False),
    "unexc": (unexc, False),
    "exc_k": (exc_k, True),
    "des_k": (des_k, True),
    "destilde_k": (destilde_k, True),
    "bdestilde_k": (bdestilde_k, True),
    "maj_k": (maj_k, True),
    "majhat_k": (majhat_k, True),
    "cover": (cover, False),
    "asc2": (asc2, False),
    "amaj2": (amaj2, False),
    "asctilde2": (asctilde2, False),
    "maj_minus_exc": (maj_minus_exc, False),
}


class UnknownStatistic(ValueError):
    pass


@dataclass(frozen=True)
class StatDescriptor:
    """
    A registered statistic, with ``k`` present exactly when the statistic is
    k-parameterized.  ``domain`` is ``"perms"`` or ``"codes"``.
    """

    name: str
    k: int | None = None

    def __post_init__(self):
        takes_k = _takes_k(self.name)
        if takes_k and self.k is None:
            raise UnknownStatistic(f"{self.name} needs a parameter, e.g. {self.name}:2")
        if not takes_k and self.k is not None:
            raise UnknownStatistic(f"{self.name} takes no parameter")
        if self.k is not None and self.k < 1:
            raise UnknownStatistic(f"{self.name}: k must be >= 1, got {self.k}")

    @classmethod
    def parse(cls, text: str) -> StatDescriptor:
        """
        >>> StatDescriptor.parse("des_k:3")
        StatDescriptor(name='des_k', k=3)
        """
        name, sep, k = text.strip().partition(":")
        if not sep:
            return cls(name)
        if not k.isdigit():
            raise UnknownStatistic(f"bad parameter in {text!r}")
        return cls(name, int(k))

    @property
    def domain(self) -> str:
        return "perms" if self.name in PERM_STATS else "codes"

    @property
    def label(self) -> str:
        return self.name if self.k is None else f"{self.name}:{self.k}"

    def __call__(self, obj: Sequence[int]) -> int:
        return self.evaluator()(obj)

    def evaluator(self) -> Callable[[Sequence[int]], int]:
        """A one-argument callable, resolved once for use in tight loops."""
        fn, takes_k = _lookup(self.name)
        return partial(fn, k=self.k) if takes_k else fn


def _lookup(name: str) -> tuple[Callable[..., int], bool]:
    if name in PERM_STATS:
        return PERM_STATS[name]
    from .codes import CODE_STATS
    if name in CODE_STATS:
        return CODE_STATS[name]
    raise UnknownStatistic(f"unknown statistic {name!r}")


def _takes_k(name: str) -> bool:
    return _lookup(name)[1]


def parse_stats(text: str) -> list[StatDescriptor]:
    """Comma-separated descriptor list: ``"des,maj_k:2"``."""
    return [StatDescriptor.parse(part) for part in text.split(",") if part.strip()]
