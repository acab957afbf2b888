"""Finitely generated abelian groups in primary-decomposition normal form.

A group is stored as a sorted tuple of ``(factor, multiplicity)`` pairs,
where a factor is either the infinite cyclic group or a cyclic group of
prime-power order:

>>> G = canonicalize([(2, 1), (0, 2)])
>>> G.render()
'Z^2 + Z_2'
>>> capacity(G), strong_capacity(G), depth(G)
(6, 5, 4)

Retracts of an abelian group are exactly its direct summands, and by
uniqueness of the primary decomposition the summands of
``Z_{q1}^(k1) + ... + Z_{qn}^(kn)`` are the groups obtained by lowering
each multiplicity independently.  Everything below is arithmetic on the
multiplicity vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator, Optional, Sequence

MAX_MODULUS = 2**63 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(m: int) -> dict[int, int]:
    """Prime factorization of ``m >= 1`` by trial division."""
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class Factor:
    """``Z`` when ``prime`` is None, otherwise ``Z_{prime**exponent}``."""

    prime: Optional[int] = None
    exponent: int = 0

    def __post_init__(self):
        if self.prime is None:
            if self.exponent != 0:
                raise ValueError("infinite cyclic factor carries no exponent")
        else:
            if not is_prime(self.prime):
                raise ValueError(f"{self.prime} is not prime")
            if self.exponent < 1:
                raise ValueError(f"exponent must be >= 1, got {self.exponent}")

    @classmethod
    def infinite(cls) -> "Factor":
        return cls()

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    @property
    def modulus(self) -> int:
        """0 for ``Z``, the prime power otherwise."""
        return 0 if self.prime is None else self.prime**self.exponent

    def sort_key(self) -> tuple[int, int, int]:
        if self.prime is None:
            return (0, 0, 0)
        return (1, self.prime, self.exponent)

    def render(self) -> str:
        return "Z" if self.prime is None else f"Z_{self.modulus}"


@dataclass(frozen=True)
class AbelianGroup:
    summands: tuple[tuple[Factor, int], ...] = ()

    def __post_init__(self):
        keys = [f.sort_key() for f, _ in self.summands]
        if keys != sorted(set(keys)):
            raise ValueError("factors must be distinct and canonically sorted")
        for f, k in self.summands:
            if k < 1:
                raise ValueError(f"multiplicity of {f.render()} must be >= 1")

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls(())

    @property
    def is_trivial(self) -> bool:
        return not self.summands

    @property
    def factors(self) -> tuple[Factor, ...]:
        return tuple(f for f, _ in self.summands)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.summands)

    @property
    def rank(self) -> int:
        return sum(k for f, k in self.summands if f.is_infinite)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> Optional[int]:
        """Group order, or None for an infinite group."""
        if not self.is_finite:
            return None
        return prod(f.modulus**k for f, k in self.summands)

    def moduli(self) -> list[int]:
        """Cyclic factors with multiplicity expanded (0 stands for ``Z``)."""
        return [f.modulus for f, k in self.summands for _ in range(k)]

    def render(self) -> str:
        if not self.summands:
            return "1"
        parts = []
        for f, k in self.summands:
            parts.append(f.render() if k == 1 else f"{f.render()}^{k}")
        return " + ".join(parts)

    def __str__(self):
        return self.render()


def canonicalize(raw: Iterable[tuple[int, int]]) -> AbelianGroup:
    """Normalize ``(modulus, multiplicity)`` pairs.

    Modulus 0 is ``Z``, modulus 1 the trivial group and ``m >= 2`` the
    cyclic group of order ``m``; composite moduli are split into their
    prime-power parts.
    """
    counts: dict[Factor, int] = {}
    for modulus, mult in raw:
        if modulus < 0 or mult < 0:
            raise ValueError(f"negative entry ({modulus}, {mult})")
        if mult == 0 or modulus == 1:
            continue
        if modulus == 0:
            parts = [Factor.infinite()]
        else:
            parts = [Factor(p, a) for p, a in factorize(modulus).items()]
        for f in parts:
            counts[f] = counts.get(f, 0) + mult
    ordered = sorted(counts.items(), key=lambda fk: fk[0].sort_key())
    return AbelianGroup(tuple(ordered))


def from_moduli(moduli: Sequence[int]) -> AbelianGroup:
    return canonicalize((m, 1) for m in moduli)


def _select(G: AbelianGroup, ts: Sequence[int]) -> AbelianGroup:
    return AbelianGroup(tuple((f, t) for f, t in zip(G.factors, ts) if t > 0))


def is_summand(H: AbelianGroup, G: AbelianGroup) -> bool:
    """True iff ``H`` is isomorphic to a direct summand of ``G``."""
    have = dict(G.summands)
    return all(k <= have.get(f, 0) for f, k in H.summands)


def direct_summands(G: AbelianGroup) -> Iterator[AbelianGroup]:
    """Every summand class once, lexicographic in the chosen multiplicities."""
    for ts in itertools.product(*(range(k + 1) for k in G.multiplicities)):
        yield _select(G, ts)


def capacity(G: AbelianGroup) -> int:
    return prod(k + 1 for k in G.multiplicities)


def strong_capacity(G: AbelianGroup) -> int:
    # f.g. abelian groups are Hopfian, so only G itself drops out
    return capacity(G) - 1


def depth(G: AbelianGroup) -> int:
    return sum(G.multiplicities) + 1


def strong_depth(G: AbelianGroup) -> int:
    return depth(G)


def witness_chain(G: AbelianGroup) -> list[AbelianGroup]:
    """A longest chain ``1 < ... < G``, filling one factor at a time.

    Each step adds one more copy of the current factor, so consecutive
    groups are summands of each other and never isomorphic.
    """
    ks = G.multiplicities
    current = [0] * len(ks)
    chain = [_select(G, current)]
    for i, k in enumerate(ks):
        for _ in range(k):
            current[i] += 1
            chain.append(_select(G, current))
    return chain


def _partitions(n: int, largest: Optional[int] = None) -> Iterator[list[int]]:
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def groups_of_order(n: int) -> Iterator[AbelianGroup]:
    """Every abelian group of order ``n``, one per primary decomposition."""
    per_prime = [
        [[p**e for e in part] for part in _partitions(a)]
        for p, a in (factorize(n).items() if n > 1 else ())
    ]
    for combo in itertools.product(*per_prime):
        yield from_moduli([m for moduli in combo for m in moduli])


def finite_groups_up_to(max_order: int) -> Iterator[AbelianGroup]:
    for n in range(1, max_order + 1):
        yield from groups_of_order(n)
