"""Oracle-versus-formula sweep used by ``domlab selftest`` and the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import abelian, finite, free, poset, polyhedra


@dataclass
class Report:
    checks: int = 0
    groups: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str):
        self.checks += 1
        if not condition:
            self.failures.append(message)


def summand_dag(G: abelian.AbelianGroup) -> poset.DominationDAG:
    nodes = [poset.ClassNode(i, H.render(), H) for i, H in enumerate(abelian.direct_summands(G))]
    return poset.build(
        nodes,
        dominates=lambda u, v: abelian.is_summand(v.payload, u.payload),
        proper=lambda u, v: u.payload != v.payload,
    )


def chain_nodes(dag: poset.DominationDAG, chain) -> list[poset.ClassNode]:
    index = {node.payload: node for node in dag.nodes.values()}
    return [index[H] for H in chain]


def check_finite_table(report: Report, name: str, T: finite.CayleyTable, expected=None):
    """Brute-force invariants of one table; ``expected`` is ``(capacity, depth)``."""
    dag = finite.retract_dag(T)
    c = poset.class_count(dag)
    d, witness = poset.longest_chain(dag)
    e = finite.idempotent_count(T)
    report.groups += 1
    if expected is not None:
        report.check((c, d) == expected, f"{name}: brute force (C, D) = {(c, d)}, expected {expected}")
    report.check(c <= e, f"{name}: capacity {c} exceeds e(G) = {e}")
    report.check(d <= c, f"{name}: depth {d} exceeds capacity {c}")
    report.check(poset.verify_chain(witness, dag).ok, f"{name}: brute-force chain fails verification")
    report.check(witness[-1].id == dag.root, f"{name}: longest chain does not end at the group")


def run(max_order: int = 32, seed: int = 0, identity_trials: int = 1000) -> Report:
    report = Report()

    for G in abelian.finite_groups_up_to(max_order):
        name = G.render()
        T = finite.abelian_table(G)
        check_finite_table(report, name, T, (abelian.capacity(G), abelian.depth(G)))
        report.check(
            sum(1 for _ in abelian.direct_summands(G)) == abelian.capacity(G),
            f"{name}: summand count differs from capacity",
        )
        dag = summand_dag(G)
        length, _ = poset.longest_chain(dag)
        report.check(length == abelian.depth(G), f"{name}: summand DAG depth {length}")
        chain = abelian.witness_chain(G)
        report.check(len(chain) == abelian.depth(G), f"{name}: witness chain length {len(chain)}")
        report.check(poset.verify_chain(chain_nodes(dag, chain), dag).ok, f"{name}: witness chain invalid")

    for name, T in (
        ("S3", finite.symmetric(3)),
        ("D4", finite.dihedral(4)),
        ("Q8", finite.quaternion()),
    ):
        if T.order <= max_order:
            check_finite_table(report, name, T)

    for k in range(11):
        F = free.FreeGroup(k)
        report.check(
            (free.capacity(F), free.strong_capacity(F), free.depth(F), free.strong_depth(F))
            == (k + 1, k, k + 1, k + 1),
            f"F_{k}: closed forms disagree",
        )

    rng = random.Random(seed)
    for _ in range(identity_trials):
        n = rng.randint(1, 10)
        t = [rng.randint(0, 5) for _ in range(n)]
        groups = [abelian.from_moduli(_distinct_prime_powers(rng, x)) for x in t]
        desc = polyhedra.PolyhedronDescriptor(n, groups[0], dict(enumerate(groups[1:], start=2)))
        bound = polyhedra.theorem_bound(desc)
        report.check(bound == polyhedra.corollary_abelian(t), f"t={t}: abelian corollary disagrees")
        d_pi1 = abelian.depth(groups[0])
        report.check(
            bound == polyhedra.corollary_finite_pi1(d_pi1, t[1:]),
            f"t={t}: finite fundamental group corollary disagrees",
        )
        report.check(
            bound == polyhedra.corollary_abelian_pi1(t[0], [x + 1 for x in t[1:]]),
            f"t={t}: abelian fundamental group corollary disagrees",
        )
    return report


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def _distinct_prime_powers(rng: random.Random, count: int) -> list[int]:
    """``count`` pairwise distinct prime powers, so the group has ``count`` factors."""
    pool = [p**a for p in _PRIMES for a in (1, 2, 3)]
    return rng.sample(pool, count)
