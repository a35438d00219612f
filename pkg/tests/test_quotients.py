from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constants import MAX_NORMAL_SUBGROUPOIDS
from errors import NotNormalError
from generators import group_bundle, random_groupoid
from groupoid_core import fiber_group, isotropy, validate
from groups import cyclic_group, dihedral_group_4, klein_group, symmetric_group_3
from quotients import (
    abelianize_groupoid,
    check_normal,
    commutator_subgroupoid,
    count_normal_subgroupoids,
    enumerate_normal_subgroupoids,
    g_fix,
    germ_groupoid,
    interior_isotropy,
    is_abelian_group_bundle,
    is_exact,
    is_normal,
    make_normal,
    quotient,
)


def _same_partition(p, q):
    return len(set(zip(p, q))) == len(set(p)) == len(set(q))


def _assert_double_quotients(G):
    """(G/H)/(H'/H) collapses the same arrows as G/H' for nested normal H ⊆ H'"""
    normals = enumerate_normal_subgroupoids(G)
    for H in normals:
        first = quotient(G, H)
        for K in normals:
            if not H.carrier.subset <= K.carrier.subset:
                continue
            second = quotient(first.quotient, first.image(K))
            composed = [second.class_map[first.class_map[a]] for a in G.elements]
            assert _same_partition(composed, quotient(G, K).class_map)


def _cyclic_homomorphisms(group, n):
    """Every homomorphism group -> Z/n, as tuples of residues indexed by element"""
    everything = frozenset(range(len(group)))
    gens = []
    while group.closure(gens) != everything:
        gens.append(min(everything - group.closure(gens)))
    homs = []
    for images in product(range(n), repeat=len(gens)):
        f = {group.identity: 0}
        frontier = [group.identity]
        consistent = True
        while frontier and consistent:
            a = frontier.pop()
            for g, v in zip(gens, images):
                b, value = group.mult(a, g), (f[a] + v) % n
                if b not in f:
                    f[b] = value
                    frontier.append(b)
                elif f[b] != value:
                    consistent = False
                    break
        if consistent and all(f[group.mult(a, b)] == (f[a] + f[b]) % n for a in f for b in f):
            homs.append(tuple(f[a] for a in range(len(group))))
    return homs


@pytest.fixture
def mixed_bundle():
    return group_bundle({"p": dihedral_group_4(), "q": symmetric_group_3(), "r": klein_group()})


@pytest.fixture
def many_z2():
    return group_bundle({f"x{i}": cyclic_group(2) for i in range(12)})


def _labels(subset):
    return set(subset.labels())


class TestNormality:
    def test_units_and_whole_bundle_are_normal(self, cross, s3_a3):
        assert is_normal(cross, cross.units)
        assert is_normal(s3_a3, isotropy(s3_a3))

    def test_order_two_subgroup_of_s3_is_not_normal(self, s3):
        ok, message, witness = check_normal(s3, s3.subset_from_labels(["e", "t"]))
        assert not ok
        assert "conjugate" in message
        assert witness == ("s", "t")
        with pytest.raises(NotNormalError):
            make_normal(s3, s3.subset_from_labels(["e", "t"]))

    def test_missing_units_and_non_isotropy(self, pair2):
        ok, _, witness = check_normal(pair2, [pair2.index("x0")])
        assert not ok and witness == ("x1",)
        ok, message, _ = check_normal(pair2, list(pair2.units) + [pair2.index("(x0,x1)")])
        assert not ok and "isotropy" in message

    def test_interior_isotropy_of_cross_is_normal(self, cross):
        H = interior_isotropy(cross)
        assert len(H) == 12
        assert is_normal(cross, H)

    def test_enumeration_counts(self, s3, cross, pair2):
        assert len(enumerate_normal_subgroupoids(s3)) == 3
        # Klein group at the center times Z/2 choices on each arm
        assert len(enumerate_normal_subgroupoids(cross)) == 5 * 2 * 2
        assert len(enumerate_normal_subgroupoids(pair2)) == 1
        for H in enumerate_normal_subgroupoids(cross):
            assert is_normal(cross, H)

    def test_enumeration_is_capped(self, many_z2):
        assert count_normal_subgroupoids(many_z2) == 2 ** 12
        normals = enumerate_normal_subgroupoids(many_z2)
        assert len(normals) == MAX_NORMAL_SUBGROUPOIDS
        assert len(enumerate_normal_subgroupoids(many_z2, limit=10)) == 10
        assert len({H.carrier.subset for H in normals}) == len(normals)

    def test_count_matches_enumeration(self, s3, cross, pair2, s3_a3):
        for G in (s3, cross, pair2, s3_a3):
            assert count_normal_subgroupoids(G) == len(enumerate_normal_subgroupoids(G))


class TestQuotient:
    def test_by_units_is_identity(self, cross):
        result = quotient(cross, cross.subset(cross.units))
        assert result.class_map == tuple(cross.elements)
        assert result.quotient == cross

    def test_s3_by_a3(self, s3):
        result = quotient(s3, s3.subset_from_labels(["e", "s", "s^2"]))
        assert result.quotient.labels == ("e", "t")
        assert validate(result.quotient).ok
        t = result.quotient.index("t")
        assert result.quotient.comp[t][t] == result.quotient.index("e")
        assert is_exact(result, s3.subset_from_labels(["e", "s", "s^2"]))

    def test_class_map_is_a_functor(self, cross):
        H = interior_isotropy(cross)
        result = quotient(cross, H)
        q, Q = result.class_map, result.quotient
        assert set(q) == set(Q.elements)
        for a in cross.elements:
            assert q[cross.src[a]] == Q.src[q[a]]
            assert q[cross.rng[a]] == Q.rng[q[a]]
            for b in cross.elements:
                if cross.composable(a, b):
                    assert q[cross.comp[a][b]] == Q.comp[q[a]][q[b]]
        assert sorted(q[x] for x in cross.units) == sorted(Q.units)

    def test_germ_groupoid_of_cross(self, cross):
        germs = germ_groupoid(cross)
        assert len(germs) == 9
        assert validate(germs).ok
        assert len(isotropy(germs)) == len(germs.units)

    def test_exactness_over_all_normal_subgroupoids(self, cross):
        for H in enumerate_normal_subgroupoids(cross):
            assert is_exact(quotient(cross, H), H)

    def test_fibers_and_image(self, s3):
        result = quotient(s3, s3.subset_from_labels(["e", "s", "s^2"]))
        assert sorted(len(f) for f in result.fibers()) == [3, 3]
        assert result.image(s3.subset_from_labels(["t", "ts"])).labels() == ["t"]

    def test_double_quotient_of_cross(self, cross):
        _assert_double_quotients(cross)

    def test_double_quotient_of_mixed_bundle(self, mixed_bundle):
        _assert_double_quotients(mixed_bundle)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 199))
    def test_double_quotient_over_corpus(self, seed):
        _assert_double_quotients(random_groupoid(seed, 16))


class TestAbelianization:
    def test_commutator_subgroupoid(self, s3, s3_a3, abelian_bundle):
        assert _labels(commutator_subgroupoid(s3).carrier) == {"e", "s", "s^2"}
        assert _labels(commutator_subgroupoid(s3_a3).carrier) == {"p", "p:s", "p:s^2", "q"}
        assert commutator_subgroupoid(abelian_bundle).is_trivial

    def test_g_fix(self, pair2, s3_a3, cross):
        assert len(g_fix(pair2)) == 0
        assert g_fix(s3_a3) == s3_a3
        center = g_fix(cross)
        assert len(center) == 4 and center.labels[0] == "c"

    def test_abelianize(self, s3, s3_a3, abelian_bundle, cross):
        assert len(abelianize_groupoid(s3).quotient) == 2
        ab = abelianize_groupoid(s3_a3)
        assert len(ab.quotient) == 5
        assert is_abelian_group_bundle(ab.quotient)
        assert abelianize_groupoid(abelian_bundle).quotient == abelian_bundle
        center = abelianize_groupoid(cross)
        assert len(center.quotient) == 4
        assert center.arrow_class(cross.index("(s,x+)")) is None

    def test_is_abelian_group_bundle(self, s3, pair2, abelian_bundle):
        assert is_abelian_group_bundle(abelian_bundle)
        assert not is_abelian_group_bundle(s3)
        assert not is_abelian_group_bundle(pair2)

    @pytest.mark.parametrize("n", [2, 3, 4, 12])
    def test_commutators_lie_in_every_abelian_kernel(self, mixed_bundle, s3_a3, n):
        for G in (mixed_bundle, s3_a3):
            commutator = commutator_subgroupoid(G).carrier.subset
            for x in G.unit_list:
                group, arrows = fiber_group(G, x)
                for f in _cyclic_homomorphisms(group, n):
                    assert all(f[i] == 0 for i, a in enumerate(arrows) if a in commutator)

    def test_commutators_are_the_common_kernel(self, mixed_bundle):
        commutator = commutator_subgroupoid(mixed_bundle).carrier.subset
        for x in mixed_bundle.unit_list:
            group, arrows = fiber_group(mixed_bundle, x)
            homs = _cyclic_homomorphisms(group, 12)
            kernel = {a for i, a in enumerate(arrows) if all(f[i] == 0 for f in homs)}
            assert kernel == {a for a in arrows if a in commutator}
