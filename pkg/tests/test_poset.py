import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domlab import abelian as ab
from domlab import finite, poset
from domlab.errors import CycleDetected
from domlab.poset import ClassNode
from domlab.selftest import chain_nodes, summand_dag

from oracles import longest_chain


def divisor_dag(n):
    """Divisors of n; d dominates e when e | d."""
    nodes = [ClassNode(d, str(d)) for d in range(1, n + 1) if n % d == 0]
    return poset.build(nodes, dominates=lambda u, v: u.id % v.id == 0, proper=lambda u, v: u.id != v.id)


def test_single_node():
    dag = poset.build([ClassNode("A")], lambda u, v: True, lambda u, v: False)
    assert poset.longest_chain(dag) == (1, [ClassNode("A")])
    assert poset.class_count(dag) == 1
    assert dag.root == "A"


def test_reference_group_summand_dag():
    dag = summand_dag(ab.from_moduli([2, 0, 0]))
    length, witness = poset.longest_chain(dag)
    assert length == 4
    assert poset.class_count(dag) == 6
    assert poset.verify_chain(witness, dag).ok


def test_retract_dag_of_s3(s3):
    length, _ = poset.longest_chain(finite.retract_dag(s3))
    assert length == 3


def test_divisor_lattice():
    dag = divisor_dag(12)
    assert poset.class_count(dag) == 6
    length, witness = poset.longest_chain(dag)
    assert length == 4
    # lexicographically smallest maximal chain
    assert [n.id for n in witness] == [1, 2, 4, 12]
    assert dag.root == 12
    assert (12, 1) in dag.edges


def test_transitive_closure_added():
    nodes = [ClassNode(i) for i in range(3)]
    # only covering relations given: 2 > 1 > 0
    dag = poset.build(nodes, dominates=lambda u, v: u.id == v.id + 1, proper=lambda u, v: u.id != v.id)
    assert (2, 0) in dag.edges
    assert dag.root == 2


def test_cycle_detected():
    nodes = [ClassNode("X"), ClassNode("Y")]
    with pytest.raises(CycleDetected, match="dominate each other"):
        poset.build(nodes, dominates=lambda u, v: True, proper=lambda u, v: u.id != v.id)
    nodes = [ClassNode(i) for i in range(3)]
    with pytest.raises(CycleDetected):
        poset.build(nodes, dominates=lambda u, v: v.id == (u.id + 1) % 3, proper=lambda u, v: True)


def test_root_must_be_unique_top():
    nodes = [ClassNode(1), ClassNode(2)]
    with pytest.raises(ValueError):
        poset.build(nodes, dominates=lambda u, v: False, proper=lambda u, v: True)
    dag = poset.build(nodes, dominates=lambda u, v: False, proper=lambda u, v: True, root=1)
    assert dag.root == 1


def test_verify_chain_reports_first_violation():
    dag = divisor_dag(12)
    n = dag.nodes
    assert poset.verify_chain([n[1], n[3], n[12]], dag).ok
    bad = poset.verify_chain([n[1], n[3], n[4]], dag)
    assert not bad.ok and bad.index == 2
    rep = poset.verify_chain([n[1], n[2], n[2]], dag)
    assert not rep.ok and rep.index == 2 and "repeats" in rep.reason
    assert poset.verify_chain([ClassNode(5)], dag).index == 0


@settings(max_examples=40)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_summand_dag_matches_closed_forms(ks):
    g = ab.canonicalize(zip([0, 2, 3, 4], ks))
    dag = summand_dag(g)
    length, witness = poset.longest_chain(dag)
    assert length == ab.depth(g)
    assert poset.class_count(dag) == ab.capacity(g)
    assert length <= poset.class_count(dag)
    assert poset.verify_chain(witness, dag).ok
    assert poset.verify_chain(chain_nodes(dag, ab.witness_chain(g)), dag).ok
    assert length == longest_chain(list(dag.nodes), lambda x, y: (y, x) in dag.edges)


@settings(max_examples=30)
@given(st.lists(st.integers(0, 2), min_size=4, max_size=4), st.data())
def test_down_sets_do_not_lengthen_chains(ks, data):
    g = ab.canonicalize(zip([0, 2, 3, 5], ks))
    dag = summand_dag(g)
    full, _ = poset.longest_chain(dag)
    top = data.draw(st.sampled_from(sorted(dag.nodes)))
    sub = poset.down_set(dag, top)
    length, _ = poset.longest_chain(sub)
    assert length <= full
    assert length == ab.depth(dag.nodes[top].payload)
