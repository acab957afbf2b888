import pytest

from domlab import abelian as ab
from domlab import finite, poset
from domlab.errors import (
    NoIdentityAtZero,
    NotAssociative,
    NotClosed,
    NotLatinSquare,
    OrderCapExceeded,
)

from oracles import all_endomorphisms, all_subgroups, longest_chain


def table(*moduli):
    return finite.abelian_table(ab.from_moduli(moduli))


def s3_by_composition():
    """S3 from scratch: permutations of {0,1,2}, identity first."""
    import itertools

    perms = sorted(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]


# -- validation ---------------------------------------------------------------


def test_validate_z2():
    T = finite.validate([[0, 1], [1, 0]])
    assert T.order == 2 and T.is_abelian


def test_validate_rejects_repeated_row():
    with pytest.raises(NotLatinSquare, match="row 1"):
        finite.validate([[0, 1], [1, 1]])


def test_validate_errors():
    with pytest.raises(NotClosed):
        finite.validate([[0, 1], [1, 2]])
    with pytest.raises(NotClosed):
        finite.validate([[0, 1], [1]])
    with pytest.raises(NoIdentityAtZero):
        finite.validate([[1, 0], [0, 1]])
    with pytest.raises(NotLatinSquare, match="column"):
        # rows are permutations but column 1 repeats
        finite.validate([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_validate_rejects_non_associative_loop():
    # smallest loop that is not a group (order 5)
    rows = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative):
        finite.validate(rows)


def test_s3_fixture_matches_composition(s3):
    assert s3.rows == finite.validate(s3_by_composition()).rows
    assert not s3.is_abelian


def test_parse_table_format(fixtures):
    text = "# comment\n\n2\n# inside\n0 1\n\n1 0\n"
    assert finite.parse_table(text).rows == ((0, 1), (1, 0))
    with pytest.raises(ValueError):
        finite.parse_table("3\n0 1 2\n1 2 0\n")
    with pytest.raises(ValueError):
        finite.parse_table("2\n0 x\n1 0\n")
    T = finite.load_table(fixtures / "q8.txt")
    assert finite.parse_table(finite.format_table(T)) == T


def test_constructors_validate():
    for T in [finite.cyclic(7), finite.dihedral(5), finite.quaternion(), finite.symmetric(4), table(4, 2, 3)]:
        assert finite.validate(T.rows) == T


# -- generators and endomorphisms ---------------------------------------------


def test_minimal_generators(s3, q8):
    for T in [s3, q8, table(2, 2, 2), table(4, 2), finite.cyclic(1), finite.cyclic(12)]:
        gens = finite.minimal_generators(T)
        assert T.generated(gens) == frozenset(range(T.order))
    assert len(finite.minimal_generators(table(2, 2, 2))) == 3
    assert len(finite.minimal_generators(finite.cyclic(12))) == 1
    assert finite.minimal_generators(finite.cyclic(1)) == []


@pytest.mark.parametrize(
    "name, T, expected",
    [
        ("trivial", finite.cyclic(1), 1),
        ("Z2", finite.cyclic(2), 2),
        ("Z4", finite.cyclic(4), 4),
        ("Z2xZ2", table(2, 2), 16),
        ("Z6", finite.cyclic(6), 6),
        ("S3", finite.symmetric(3), 10),
    ],
)
def test_endomorphism_count_against_exhaustive(name, T, expected):
    brute = all_endomorphisms(T.rows)
    assert len(brute) == expected
    got = [e.map for e in finite.endomorphisms(T)]
    assert len(got) == len(set(got))
    assert set(got) == set(brute)


def test_endomorphisms_verified_and_deterministic(d4):
    first = [e.map for e in finite.endomorphisms(d4)]
    assert first == [e.map for e in finite.endomorphisms(d4)]
    for m in first:
        assert all(m[d4.rows[i][j]] == d4.rows[m[i]][m[j]] for i in range(8) for j in range(8))


def test_order_cap(monkeypatch):
    T = finite.cyclic(10)
    with pytest.raises(OrderCapExceeded):
        list(finite.endomorphisms(T, max_order=8))
    monkeypatch.setenv("DOMLAB_MAX_ORDER", "9")
    with pytest.raises(OrderCapExceeded):
        finite.capacity_bruteforce(T)
    monkeypatch.setenv("DOMLAB_MAX_ORDER", "10")
    assert finite.capacity_bruteforce(T) == 4


# -- subgroups and idempotents ------------------------------------------------


@pytest.mark.parametrize("T", [finite.symmetric(3), finite.quaternion(), finite.dihedral(4), table(2, 2, 2), table(4, 3), table(2, 4)])
def test_subgroups_against_subsets(T):
    assert set(finite.subgroups(T)) == set(all_subgroups(T.rows))


def test_subgroup_counts():
    assert len(finite.subgroups(table(2, 2, 2, 2, 2))) == 374
    assert len(finite.subgroups(finite.symmetric(4))) == 30


@pytest.mark.parametrize(
    "T, expected",
    [
        (finite.cyclic(2), 2),
        (finite.symmetric(3), 5),
        (finite.cyclic(4), 2),
        (table(2, 2), 8),
        (finite.quaternion(), 2),
        (finite.dihedral(4), 10),
        (table(2, 3), 4),
    ],
)
def test_idempotent_count_two_routes(T, expected):
    by_filter = {e.map for e in finite.endomorphisms(T) if e.is_idempotent}
    by_complement = [h.map for h in finite.idempotents(T)]
    assert len(by_complement) == len(set(by_complement))
    assert set(by_complement) == by_filter
    assert finite.idempotent_count(T) == len(by_filter) == expected


def test_idempotents_are_projections():
    T = table(4, 2, 2)
    for h in finite.idempotents(T):
        assert h.compose(h) == h
        assert finite.is_homomorphism(T, T, h.map)


# -- isomorphism ----------------------------------------------------------------


def test_isomorphism_basics(s3, d4, q8):
    z6 = finite.cyclic(6)
    assert finite.is_isomorphic(z6, table(2, 3))
    assert not finite.is_isomorphic(z6, s3)
    # same element orders and profile differ only beyond abelian-ness
    assert not finite.is_isomorphic(d4, q8)
    assert not finite.is_isomorphic(d4, table(2, 4))
    assert finite.is_isomorphic(finite.dihedral(3), s3)
    m = finite.find_isomorphism(finite.dihedral(3), s3)
    assert sorted(m) == list(range(6))
    assert finite.is_homomorphism(finite.dihedral(3), s3, m)


def test_isomorphism_is_equivalence(s3, d4, q8):
    pool = [s3, d4, q8, finite.dihedral(3), finite.cyclic(8), table(2, 4), table(4, 2),
            finite.direct_product(finite.cyclic(2), finite.cyclic(4)), table(2, 2, 2)]
    rel = {(i, j): finite.is_isomorphic(a, b) for i, a in enumerate(pool) for j, b in enumerate(pool)}
    n = len(pool)
    for i in range(n):
        assert rel[i, i]
        for j in range(n):
            assert rel[i, j] == rel[j, i]
            for k in range(n):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]


def test_profile_distinguishes_abelian():
    assert finite.cyclic(8).profile != table(2, 4).profile


def test_abelian_invariants_read_back():
    for g in ab.finite_groups_up_to(64):
        assert finite.abelian_invariants(finite.abelian_table(g)) == g
    assert finite.abelian_invariants(finite.symmetric(3)) is None


def test_describe(s3, d4, q8):
    assert finite.describe(s3) == "S_3"
    assert finite.describe(d4) == "D_4"
    assert finite.describe(q8) == "Q_8"
    assert finite.describe(table(4, 2)) == "Z_2 + Z_4"


# -- retracts, capacity, depth ---------------------------------------------------


def test_retract_classes_small():
    assert [c.order for c in finite.retract_classes(finite.cyclic(2))] == [1, 2]
    assert [c.order for c in finite.retract_classes(finite.cyclic(1))] == [1]


def test_retract_classes_s3(s3):
    classes = finite.retract_classes(s3)
    assert [finite.describe(c.representative) for c in classes] == ["1", "Z_2", "S_3"]
    assert all(c.order != 3 for c in classes)
    for c in classes:
        h = c.witness
        assert h.compose(h) == h and h.image() == c.subgroup
        assert c.representative == s3.induced(c.subgroup)


def test_no_endomorphism_of_s3_has_image_of_order_three(s3):
    assert all(len(set(m)) != 3 for m in all_endomorphisms(s3.rows))


@pytest.mark.parametrize(
    "T, capacity, depth",
    [
        (table(2, 2), 3, 3),
        (finite.symmetric(3), 3, 3),
        (finite.cyclic(8), 2, 2),
        (finite.cyclic(1), 1, 1),
        (finite.quaternion(), 2, 2),
        (finite.dihedral(4), 3, 3),
    ],
)
def test_capacity_and_depth(T, capacity, depth):
    assert finite.capacity_bruteforce(T) == capacity
    assert finite.depth_bruteforce(T) == depth


def test_depth_matches_independent_chain_search(d4):
    # longest chain over retract classes using exhaustive idempotent images
    for T in [finite.symmetric(3), d4, table(2, 2, 3)]:
        classes = finite.retract_classes(T)

        def below(a, b):
            if a is b:
                return False
            inner = finite.retract_classes(b.representative)
            return any(finite.is_isomorphic(a.representative, c.representative) for c in inner)

        assert longest_chain(classes, below) == finite.depth_bruteforce(T)


def test_retract_relation_transitive(d4):
    for G in [d4, table(2, 2, 4), finite.dihedral(6)]:
        top = finite.retract_classes(G)
        for K in top:
            for H in finite.retract_classes(K.representative):
                assert any(finite.is_isomorphic(H.representative, c.representative) for c in top)


def test_retract_dag_chain_verifies(s3):
    dag = finite.retract_dag(s3)
    length, path = poset.longest_chain(dag)
    assert length == 3
    assert poset.verify_chain(path, dag).ok
    assert path[-1].id == dag.root


def test_abelian_tables_match_closed_forms():
    for g in ab.finite_groups_up_to(32):
        T = finite.abelian_table(g)
        assert finite.capacity_bruteforce(T) == ab.capacity(g), g
        assert finite.depth_bruteforce(T) == ab.depth(g), g


@pytest.mark.parametrize(
    "T", [finite.symmetric(3), finite.dihedral(4), finite.quaternion(), finite.dihedral(5),
          finite.dihedral(6), finite.symmetric(4), table(2, 2, 2, 2)]
)
def test_hol_bound_and_depth_le_capacity(T):
    c, e, holds = finite.hol_bound_report(T)
    assert holds and c <= e
    assert finite.depth_bruteforce(T) <= c


def test_bigger_nonabelian_values():
    # D6 = S3 x Z2: retracts 1, Z2, Z2^2, S3, D6
    assert finite.capacity_bruteforce(finite.dihedral(6)) == 5
    assert finite.depth_bruteforce(finite.dihedral(6)) == 4
