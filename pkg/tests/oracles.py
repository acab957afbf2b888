"""Slow, obviously-correct reference computations used only by the tests."""

import itertools
from functools import lru_cache


def all_endomorphisms(rows):
    """Every map f with f(ab) = f(a)f(b), by trying all n**n functions."""
    n = len(rows)
    out = []
    for f in itertools.product(range(n), repeat=n):
        if all(f[rows[a][b]] == rows[f[a]][f[b]] for a in range(n) for b in range(n)):
            out.append(f)
    return out


def all_subgroups(rows):
    """Subsets containing 0 that are closed under the product."""
    n = len(rows)
    out = []
    for bits in range(1 << (n - 1)):
        S = {0} | {i + 1 for i in range(n - 1) if bits >> i & 1}
        if all(rows[a][b] in S for a in S for b in S):
            out.append(frozenset(S))
    return out


def longest_chain(elements, below):
    """Max number of elements in a chain x1 < x2 < ... (below(x, y): x < y)."""
    elements = list(elements)

    @lru_cache(maxsize=None)
    def up(i):
        return 1 + max((up(j) for j in range(len(elements)) if below(elements[i], elements[j])), default=0)

    return max(up(i) for i in range(len(elements)))
