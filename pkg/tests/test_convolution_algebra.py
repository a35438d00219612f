import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convolution_algebra import (
    AlgebraElement,
    IdealBasis,
    abelian_fiber,
    abelianization_dim,
    abelianization_projection,
    character_functional,
    commutator_ideal,
    convolve,
    delta,
    diagonal_basis,
    effective_by_kernel,
    element,
    enumerate_characters,
    evaluation_map,
    gelfand_transform,
    involute,
    kernel_meets_diagonal,
    quotient_hom,
    recover_pair,
    restriction_hom,
    unit_element,
    zero,
)
from errors import CharacterError, HostMismatchError, NotAbelianError, NotInvariantError, NotNormalError
from generators import one_object
from groupoid_core import fixed_points, is_effective
from groups import symmetric_group_3
from quotients import abelianize_groupoid, enumerate_normal_subgroupoids, interior_isotropy

S3 = one_object(symmetric_group_3())

coefficients = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
s3_elements = st.dictionaries(st.integers(0, 5), coefficients, max_size=4).map(lambda d: element(S3, d))


class TestProducts:
    def test_delta_products(self, pair2):
        a, b = pair2.index("(x0,x1)"), pair2.index("(x1,x0)")
        assert convolve(delta(pair2, a), delta(pair2, b)) == delta(pair2, pair2.index("x0"))
        assert convolve(delta(pair2, a), delta(pair2, a)).is_zero

    def test_unit_element(self, cross):
        f = element(cross, {"(s,c)": 2, "(t,x+)": (0, 1), "y-": -1})
        one = unit_element(cross)
        assert one @ f == f
        assert f @ one == f

    def test_annihilating_pair_in_z2(self, z2):
        e, a = delta(z2, 0), delta(z2, 1)
        assert ((e + a) @ (e - a)).is_zero

    def test_involution(self, z3):
        a = z3.index("a")
        assert involute(delta(z3, a)) == delta(z3, z3.index("a^2"))
        assert involute(delta(z3, a, (0, 1))) == delta(z3, z3.index("a^2"), (0, -1))

    @settings(max_examples=40, deadline=None)
    @given(s3_elements, s3_elements)
    def test_star_is_anti_multiplicative(self, f, g):
        assert involute(f @ g) == involute(g) @ involute(f)
        assert involute(involute(f)) == f

    @settings(max_examples=25, deadline=None)
    @given(s3_elements, s3_elements, s3_elements)
    def test_associativity(self, f, g, h):
        assert (f @ g) @ h == f @ (g @ h)

    def test_scale_negate_and_star(self, z3):
        a = z3.index("a")
        f = delta(z3, a).scale((0, 1))
        assert f == delta(z3, a, (0, 1))
        assert (f + -f).is_zero
        assert f.star() == involute(f)
        assert f.support() == [a]

    def test_host_mismatch(self, z2, z3):
        with pytest.raises(HostMismatchError):
            delta(z2, 0) + delta(z3, 0)
        with pytest.raises(HostMismatchError):
            convolve(delta(z2, 0), delta(z3, 0))

    def test_sparse_round_trip(self, cross):
        f = element(cross, {"(s,c)": 2, "(t,x+)": (0, 1)})
        assert set(f.to_dict()) == {"(s,c)", "(t,x+)"}
        assert AlgebraElement.from_dict(cross, f.to_dict()) == f
        assert zero(cross).to_dict() == {}


class TestHomomorphisms:
    def test_restriction_to_all_units_is_identity(self, cross):
        hom = restriction_hom(cross, cross.units)
        assert hom.codomain == cross
        assert hom.kernel().dim == 0

    def test_restriction_to_center(self, cross):
        hom = restriction_hom(cross, fixed_points(cross))
        assert len(hom.codomain) == 4
        assert hom.is_surjective()
        assert hom.kernel().dim == len(cross) - 4
        assert hom.check_multiplicative() is None
        assert hom.check_star() is None

    def test_restriction_to_nothing(self, cross):
        hom = restriction_hom(cross, [])
        assert len(hom.codomain) == 0
        assert hom.kernel().dim == len(cross)

    def test_restriction_needs_invariant_set(self, pair2):
        with pytest.raises(NotInvariantError):
            restriction_hom(pair2, [pair2.index("x0")])

    def test_quotient_by_units_is_injective(self, cross):
        hom = quotient_hom(cross, cross.units)
        assert hom.kernel().dim == 0

    def test_quotient_z2_by_itself(self, z2):
        hom = quotient_hom(z2, z2.elements)
        assert hom(delta(z2, 0)) == hom(delta(z2, 1))
        kernel = hom.kernel()
        assert kernel.dim == 1
        assert kernel.contains(delta(z2, 0) - delta(z2, 1))
        assert kernel_meets_diagonal(hom) == 0

    def test_quotient_s3_by_a3(self, s3):
        hom = quotient_hom(s3, s3.subset_from_labels(["e", "s", "s^2"]))
        assert hom.kernel().dim == 4
        assert hom.is_surjective()
        assert hom.check_multiplicative() is None
        assert hom.check_star() is None

    def test_quotient_rejects_non_normal(self, s3):
        with pytest.raises(NotNormalError):
            quotient_hom(s3, s3.subset_from_labels(["e", "t"]))

    def test_kernel_criteria_over_all_normal_subgroupoids(self, cross):
        for H in enumerate_normal_subgroupoids(cross):
            hom = quotient_hom(cross, H)
            assert kernel_meets_diagonal(hom) == 0
            assert (hom.kernel().dim == 0) == H.is_trivial

    def test_composition(self, cross):
        pi, ab = abelianization_projection(cross)
        assert pi.domain == cross
        assert pi.codomain == ab.quotient
        assert pi.check_multiplicative() is None
        assert pi.is_surjective()

    def test_effectiveness_through_the_kernel(self, pair2, cross, s3_a3, trivial3):
        for G in (pair2, cross, s3_a3, trivial3):
            assert effective_by_kernel(G) == is_effective(G)
        assert len(diagonal_basis(cross)) == 5


class TestCommutatorIdeal:
    def test_commutative_algebra_has_zero_ideal(self, trivial3, abelian_bundle):
        assert commutator_ideal(trivial3).dim == 0
        assert commutator_ideal(abelian_bundle).dim == 0

    def test_basis_from_vectors(self, z2):
        basis = IdealBasis.from_vectors(z2, [[1, -1], [-2, 2]])
        assert basis.dim == 1
        assert basis.contains(delta(z2, 0) - delta(z2, 1))
        assert basis.same_span(quotient_hom(z2, z2.elements).kernel())

    def test_s3(self, s3):
        ideal = commutator_ideal(s3)
        assert ideal.dim == 4
        assert ideal.check_closure() is None
        assert abelianization_dim(s3) == 2

    def test_pair_groupoid_ideal_is_everything(self, pair2):
        assert commutator_ideal(pair2).dim == 4
        assert abelianization_dim(pair2) == 0

    def test_named_dimensions(self, trivial3, s3_a3, cross, klein):
        assert abelianization_dim(trivial3) == 3
        assert abelianization_dim(s3_a3) == 5
        assert abelianization_dim(cross) == 4
        assert abelianization_dim(klein) == 4

    @pytest.mark.parametrize("name", ["s3", "s3_a3", "cross", "pair2", "z2"])
    def test_kernel_of_projection_is_the_commutator_ideal(self, name, request):
        G = request.getfixturevalue(name)
        pi, _ = abelianization_projection(G)
        ideal = commutator_ideal(G)
        assert pi.kernel().same_span(ideal)
        assert pi.kernel().intersection_dim(ideal) == ideal.dim


class TestCharacterFunctionals:
    def test_sign_character_of_z2(self, z2):
        functionals = enumerate_characters(z2)
        assert [phi.exponents for phi in functionals] == [(0, 0), (0, 1)]
        sign = functionals[1]
        assert sign.value(1) == pytest.approx(-1)
        assert sign.evaluate(delta(z2, 0) + delta(z2, 1)) == pytest.approx(0)

    def test_trivial_character_is_augmentation(self, s3):
        trivial = enumerate_characters(s3)[0]
        assert trivial.chi.is_trivial
        assert trivial.exponents == (0,) * 6

    def test_counts_match_the_ideal(self, pair2, klein, cross, s3, s3_a3, trivial3):
        for G in (pair2, klein, cross, s3, s3_a3, trivial3):
            assert len(enumerate_characters(G)) == abelianization_dim(G), G.name
        assert enumerate_characters(pair2) == []

    def test_cross_characters_live_at_the_center(self, cross):
        center_arrows = {cross.index(label) for label in ("c", "(s,c)", "(t,c)", "(st,c)")}
        functionals = enumerate_characters(cross)
        assert len(functionals) == 4
        for phi in functionals:
            assert cross.labels[phi.x] == "c"
            support = {a for a, e in enumerate(phi.exponents) if e is not None}
            assert support == center_arrows
            assert all(np.isclose(phi.value(a), 1) or np.isclose(phi.value(a), -1) for a in support)

    def test_multiplicative_and_star(self, s3_a3, cross):
        for G in (s3_a3, cross):
            for phi in enumerate_characters(G):
                assert phi.check_multiplicative() is None
                assert phi.check_star() is None
                assert phi.diagonal_point() == phi.x

    def test_distinct(self, s3_a3):
        functionals = enumerate_characters(s3_a3)
        assert len({phi.key() for phi in functionals}) == len(functionals)

    def test_non_fixed_point_rejected(self, cross):
        ab = abelianize_groupoid(cross)
        chi = enumerate_characters(cross)[0].chi
        with pytest.raises(CharacterError):
            character_functional(cross, cross.index("x+"), chi, ab)

    def test_foreign_character_rejected(self, s3_a3, z3):
        chi = enumerate_characters(z3)[1].chi
        with pytest.raises(CharacterError):
            character_functional(s3_a3, s3_a3.index("p"), chi)

    def test_recover_pair_inverts_enumeration(self, s3_a3, cross):
        for G in (s3_a3, cross):
            ab = abelianize_groupoid(G)
            for phi in enumerate_characters(G, ab):
                x, chi = recover_pair(G, phi.exponents, phi.modulus, ab)
                assert x == phi.x
                assert chi == phi.chi

    def test_recover_pair_rejects_non_characters(self, z2):
        with pytest.raises(CharacterError):
            recover_pair(z2, (None, None), 2)
        with pytest.raises(CharacterError):
            recover_pair(z2, (0, 1), 4)

    def test_abelian_fiber(self, s3_a3):
        ab = abelianize_groupoid(s3_a3)
        group, _ = abelian_fiber(ab, s3_a3.index("q"))
        assert len(group) == 3


class TestGelfand:
    def test_z2_is_the_two_point_dft(self, z2):
        matrix = gelfand_transform(z2)
        assert matrix.exponents == ((0, 0), (0, 1))
        assert np.allclose(matrix.to_complex(), [[1, 1], [1, -1]])

    def test_trivial_bundle_is_identity(self, trivial3):
        matrix = gelfand_transform(trivial3)
        assert np.allclose(matrix.to_complex(), np.eye(3))

    def test_z3_rows_are_the_dft(self, z3):
        matrix = gelfand_transform(z3)
        assert matrix.modulus == 3
        assert set(matrix.exponents) == {(0, 0, 0), (0, 1, 2), (0, 2, 1)}

    def test_invertible_and_pointwise(self, abelian_bundle, klein, z3):
        for G in (abelian_bundle, klein, z3):
            matrix = gelfand_transform(G)
            assert matrix.is_invertible()
            assert matrix.check_pointwise() is None

    def test_transform_turns_convolution_into_products(self, abelian_bundle):
        matrix = gelfand_transform(abelian_bundle)
        f = element(abelian_bundle, {"q:s": 1, "q": (0, 2), "r:a": -1})
        g = element(abelian_bundle, {"q:st": 3, "r:a^2": 1, "p:a": (1, 1)})
        assert np.allclose(matrix.transform(f @ g), matrix.transform(f) * matrix.transform(g))

    def test_inverse_transform(self, abelian_bundle):
        matrix = gelfand_transform(abelian_bundle)
        f = element(abelian_bundle, {"q:t": 2, "r": (1, -1), "p:a": -3})
        assert matrix.round_trips(f)
        assert np.allclose(matrix.inverse_transform(matrix.transform(f))[abelian_bundle.index("q:t")], 2)

    def test_evaluation_map(self, z2):
        values = evaluation_map(delta(z2, 1))
        assert values[("e", (0,))] == pytest.approx(1)
        assert values[("e", (1,))] == pytest.approx(-1)

    def test_non_abelian_rejected(self, s3):
        with pytest.raises(NotAbelianError):
            gelfand_transform(s3)

    def test_interior_isotropy_kernel(self, s3_a3):
        hom = quotient_hom(s3_a3, interior_isotropy(s3_a3))
        assert hom.kernel().dim == len(s3_a3) - 2
