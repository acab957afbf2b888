"""Upper bounds on the depth of finite polyhedra.

For a finite ``n``-dimensional polyhedron ``P`` whose fundamental group and
universal-cover homology ``H_i`` (``2 <= i <= n``) have finite depths
``k_1, ..., k_n`` with Hopfian retracts,

    D(P) <= k_1 + ... + k_n - n + 1.

Absent homology groups are trivial and contribute ``k_i = 1``.  The
corollaries specialise this to finite or abelian fundamental groups where
``k_i = t_i + 1`` for a homology group with ``t_i`` cyclic primary
factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Optional, Sequence, Union

from . import abelian, free
from .abelian import AbelianGroup
from .errors import DimensionMismatch, HopfianAssumptionMissing, InputError
from .free import FreeGroup


@dataclass(frozen=True)
class AssertedDepth:
    """A depth supplied by the caller, with an explicit Hopfian attestation."""

    depth: int
    hopfian_retracts: bool

    def __post_init__(self):
        if self.depth < 1:
            raise InputError(f"asserted depth must be >= 1, got {self.depth}")


GroupSpec = Union[AbelianGroup, FreeGroup, AssertedDepth]


@dataclass(frozen=True)
class PolyhedronDescriptor:
    dimension: int
    pi1: GroupSpec
    homology: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dimension < 1:
            raise InputError(f"dimension must be >= 1, got {self.dimension}")
        for i in self.homology:
            if i < 2:
                raise DimensionMismatch(f"homology index {i} must be >= 2")
            if i > self.dimension:
                raise DimensionMismatch(
                    f"homology index {i} exceeds the dimension {self.dimension}"
                )


def resolve_depth(spec: GroupSpec) -> int:
    if isinstance(spec, AbelianGroup):
        return abelian.depth(spec)
    if isinstance(spec, FreeGroup):
        return free.depth(spec)
    if isinstance(spec, AssertedDepth):
        if not spec.hopfian_retracts:
            raise HopfianAssumptionMissing(
                f"asserted depth {spec.depth} needs every retract to be Hopfian"
            )
        return spec.depth
    raise TypeError(f"unsupported group spec {spec!r}")


def depths(desc: PolyhedronDescriptor) -> list[int]:
    """``[k_1, ..., k_n]`` with trivial homology filled in as 1."""
    ks = [resolve_depth(desc.pi1)]
    for i in range(2, desc.dimension + 1):
        spec = desc.homology.get(i)
        ks.append(1 if spec is None else resolve_depth(spec))
    return ks


def theorem_bound(desc: PolyhedronDescriptor) -> int:
    ks = depths(desc)
    return sum(ks) - desc.dimension + 1


def corollary_finite_pi1(pi1_depth: int, t: Sequence[int]) -> int:
    """Bound for finite ``pi_1``; ``t[i]`` counts the cyclic factors of ``H_(i+2)``."""
    if pi1_depth < 1 or any(x < 0 for x in t):
        raise InputError("depths must be >= 1 and factor counts >= 0")
    return pi1_depth + sum(t)


def corollary_abelian_pi1(t: int, ks: Sequence[int]) -> int:
    """Bound for abelian ``pi_1`` with ``t`` cyclic factors and ``H_i`` depths ``ks``.

    This is the general bound with ``k_1 = t + 1``.  Writing it as
    ``sum(ks) + t - n + 1`` would be one too small: for the circle
    (``t = 1``, no higher homology) that gives 1, while ``D(S^1) = 2``.
    """
    if t < 0 or any(k < 1 for k in ks):
        raise InputError("factor count must be >= 0 and depths >= 1")
    n = len(ks) + 1
    return sum(ks) + t - n + 2


def corollary_abelian(t: Sequence[int]) -> int:
    """Bound when ``pi_1`` and all ``H_i`` are f.g. abelian with ``t[i]`` cyclic factors."""
    if any(x < 0 for x in t):
        raise InputError("factor counts must be >= 0")
    return sum(t) + 1


def factor_count(G: AbelianGroup) -> int:
    """Number of cyclic primary factors, counted with multiplicity."""
    return sum(G.multiplicities)


# -- known values -------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    capacity: Optional[int]
    depth: Optional[int]
    citation: str


def orientable_surface(g: int) -> CatalogEntry:
    if g < 0:
        raise InputError("genus must be >= 0")
    return CatalogEntry(f"orientable_surface({g})", g + 2, g + 2, "closed surfaces")


def nonorientable_surface(g: int) -> CatalogEntry:
    if g < 1:
        raise InputError("non-orientable genus must be >= 1")
    v = g // 2 + 2
    return CatalogEntry(f"nonorientable_surface({g})", v, v, "closed surfaces")


def wedge_spheres(counts: Sequence[int]) -> CatalogEntry:
    """Wedge with ``counts[j]`` spheres in each of a set of distinct dimensions."""
    if not counts or any(c < 1 for c in counts):
        raise InputError("sphere counts must be positive")
    v = prod(c + 1 for c in counts)
    label = ",".join(str(c) for c in counts)
    return CatalogEntry(f"wedge_spheres({label})", v, v, "wedges of spheres")


def wedge_circles(k: int) -> CatalogEntry:
    if k < 1:
        raise InputError("need at least one circle")
    return CatalogEntry(f"wedge_circles({k})", k + 1, k + 1, "wedges of circles")


FIXED_ENTRIES = (
    CatalogEntry("T#T", 4, 4, "connected sum of two tori"),
    CatalogEntry("S1xS2", 4, 3, "product of spheres"),
)

PARAMETRIC = {
    "orientable_surface": orientable_surface,
    "nonorientable_surface": nonorientable_surface,
    "wedge_circles": wedge_circles,
}


def catalog() -> list[CatalogEntry]:
    """Fixed entries plus small instances of the parametric families."""
    out = list(FIXED_ENTRIES)
    out += [orientable_surface(g) for g in range(0, 6)]
    out += [nonorientable_surface(g) for g in range(1, 6)]
    out += [wedge_circles(k) for k in range(1, 6)]
    out += [wedge_spheres([1, 1]), wedge_spheres([2, 1])]
    return out


def lookup(name: str) -> CatalogEntry:
    """Resolve ``T#T``, ``S1xS2`` or ``family(args)`` such as ``wedge_spheres(2,1)``."""
    key = name.replace(" ", "")
    for entry in FIXED_ENTRIES:
        if entry.name.lower() == key.lower():
            return entry
    if key.endswith(")") and "(" in key:
        family, _, args = key[:-1].partition("(")
        try:
            values = [int(a) for a in args.split(",")] if args else []
        except ValueError:
            raise InputError(f"bad catalog arguments in {name!r}") from None
        if family == "wedge_spheres":
            return wedge_spheres(values)
        if family in PARAMETRIC and len(values) == 1:
            return PARAMETRIC[family](values[0])
    raise InputError(f"unknown catalog entry {name!r}")
