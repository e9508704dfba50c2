"""Brute-force reference implementations, written straight from the definitions.

Nothing here imports permstat; tests compare the package against these.
"""

from collections import Counter
from itertools import permutations, product


def all_perms(n):
    return list(permutations(range(1, n + 1)))


def all_codes(n):
    return list(product(*[range(i) for i in range(1, n + 1)]))


def position_of(sigma, v):
    return sigma.index(v) + 1


def des_k_positions(sigma, k):
    return {i for i in range(1, len(sigma)) if sigma[i - 1] - sigma[i] >= k}


def majhat(sigma, k):
    n = len(sigma)
    pairs = 0
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[i] < sigma[j] < sigma[i] + k:
                pairs += 1
    return sum(des_k_positions(sigma, k)) + pairs


def cover(sigma):
    n = len(sigma)
    gaps = [i for i in range(1, n) if position_of(sigma, i + 1) > position_of(sigma, i) + 1]
    return len(gaps) + (sigma[0] != 1)


def inversions(sigma):
    return sum(1 for i, j in product(range(len(sigma)), repeat=2)
               if i < j and sigma[i] > sigma[j])


def compose(a, b):
    """(a o b)(i) = a(b(i))."""
    return tuple(a[b[i] - 1] for i in range(len(b)))


def cycles_by_following(sigma):
    """Cycles as sets, found by repeated application."""
    n = len(sigma)
    left = set(range(1, n + 1))
    out = []
    while left:
        x = min(left)
        cyc = []
        while x in left:
            left.remove(x)
            cyc.append(x)
            x = sigma[x - 1]
        out.append(frozenset(cyc))
    return set(out)


def joint(objs, fns):
    return Counter(tuple(f(o) for f in fns) for o in objs)
