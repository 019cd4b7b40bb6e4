import math
from itertools import product

import numpy as np
import pytest

from corpus import GENERAL_CASES, SKEW_CASES
from logatlas.branches import (
    MultiIndexSet,
    SkewMultiIndexSet,
    canonical_log,
    enumerate_branches,
    enumerate_skew_branches,
    principal_branch,
    principal_skew_branch,
)
from logatlas.errors import InvalidBranchError, InvalidInputError
from logatlas.numkernel import commutant_kernel_dim
from logatlas.spectra import OrthoSpectralData, SpectralData, jordan_matrix
from logatlas.topology import (
    COUNTABLY_INFINITE,
    SINGLETON,
    UNCOUNTABLE,
    HomSpace,
    ambient_quotient_components,
    branch_topology,
    centralizer_dims,
    homspace_dim,
    homspace_pi2_rank,
    log_set_cardinality_class,
    principal_skew_topology,
    principal_topology,
    skew_branch_topology,
    skew_centralizer_dims,
    skew_log_set_cardinality_class,
)

SPEC_D23 = SpectralData(2, positive=((2.0, 1), (3.0, 1)))
SPEC_I2 = SpectralData(2, positive=((1.0, 2),))
SPEC_NEG_I2 = SpectralData(2, negative=((1.0, 1),))
SPEC_NEG_I4 = SpectralData(4, negative=((1.0, 2),))

BRANCH_I2_WOUND = MultiIndexSet(eta=((0, 1),), u=((0, 1),))


class TestHomSpaceDim:
    @pytest.mark.parametrize(
        "hs,expected",
        [
            (HomSpace("GammaHat", 0, (1,)), 2),
            (HomSpace("Gamma", 0, (2,)), 2),
            (HomSpace("Theta", 0, (1, 1)), 2),
            (HomSpace("ThetaHat", 0, (3,)), 0),
            (HomSpace("GammaHat", 3, (1,)), 14),
            (HomSpace("Gamma", 2, ()), 0),
            (HomSpace("GammaHat", 5, ()), 0),
            (HomSpace("Gamma", 0, (1,)), 0),
            (HomSpace("Gamma", 1, (1,)), 2),
        ],
    )
    def test_closed_forms(self, hs, expected):
        assert homspace_dim(hs) == expected

    def test_invalid_kinds_rejected(self):
        with pytest.raises(InvalidInputError):
            HomSpace("Grassmann", 0, (1,))
        with pytest.raises(InvalidInputError):
            HomSpace("Theta", 0, ())
        with pytest.raises(InvalidInputError):
            HomSpace("Gamma", -1, (1,))


def case_rank_gamma(zeta, nu):
    """Independent restatement of the case analysis behind the delta
    formula: single points have rank 0, the zeta = 0 single-block quotient
    is the quaternionic-style sphere family (rank 1 from block order 2 on),
    and otherwise the rank is the block count, plus one exactly at
    zeta = 2."""
    s = len(nu)
    if s == 0:
        return 0
    if zeta == 0 and s == 1:
        return 1 if nu[0] >= 2 else 0
    return s + (1 if zeta == 2 else 0)


class TestHomSpacePi2:
    def test_delta_formula_matches_cases_exhaustively(self):
        nu_tuples = [()]
        for s in range(1, 5):
            nu_tuples += list(product(range(1, 4), repeat=s))
        for zeta in range(0, 5):
            for nu in nu_tuples:
                if zeta + len(nu) == 0:
                    continue
                expected = case_rank_gamma(zeta, nu)
                assert homspace_pi2_rank(HomSpace("Gamma", zeta, nu)) == expected
                assert homspace_pi2_rank(HomSpace("GammaHat", zeta, nu)) == expected
        for nu in nu_tuples[1:]:
            assert homspace_pi2_rank(HomSpace("Theta", 0, nu)) == len(nu) - 1
            assert homspace_pi2_rank(HomSpace("ThetaHat", 0, nu)) == len(nu) - 1

    def test_empty_gamma_rejected(self):
        with pytest.raises(InvalidInputError):
            homspace_pi2_rank(HomSpace("Gamma", 0, ()))

    def test_ambient_components(self):
        assert ambient_quotient_components(HomSpace("Gamma", 0, (2,))) == 2
        assert ambient_quotient_components(HomSpace("Gamma", 1, (2,))) == 1
        assert ambient_quotient_components(HomSpace("GammaHat", 0, (1, 1))) == 2
        assert ambient_quotient_components(HomSpace("Theta", 0, (1, 1))) == 1
        assert ambient_quotient_components(HomSpace("Gamma", 3, ())) == 1


class TestBranchTopology:
    def test_identity_wound_branch(self):
        rep = branch_topology(SPEC_I2, BRANCH_I2_WOUND)
        assert (rep.dimension, rep.components, rep.pi2_rank) == (2, 2, 0)
        assert rep.simply_connected is True

    def test_negative_identity_branch(self):
        b = principal_branch(SPEC_NEG_I2)
        rep = branch_topology(SPEC_NEG_I2, b)
        assert rep.factors == (HomSpace("GammaHat", 0, (1,)),)
        assert (rep.dimension, rep.components, rep.pi2_rank) == (2, 2, 0)

    def test_simple_diagonal_is_point(self):
        rep = branch_topology(SPEC_D23, principal_branch(SPEC_D23))
        assert (rep.dimension, rep.components, rep.pi2_rank) == (0, 1, 0)
        assert rep.cardinality_class == SINGLETON

    def test_inadmissible_rejected(self):
        with pytest.raises(InvalidBranchError):
            branch_topology(SPEC_D23, BRANCH_I2_WOUND)

    def test_pi2_equals_factor_sum(self):
        # the closed-form rank must agree with summing factor ranks
        for case in GENERAL_CASES:
            for b in enumerate_branches(case.spec, 2, 10**6)[0]:
                rep = branch_topology(case.spec, b)
                assert rep.pi2_rank == sum(homspace_pi2_rank(f) for f in rep.factors)
                assert rep.components == 2 ** sum(
                    1 for f in rep.factors if ambient_quotient_components(f) == 2
                )

    def test_pi_alpha_presence(self):
        rep = branch_topology(SPEC_NEG_I2, principal_branch(SPEC_NEG_I2))
        assert rep.pi_alpha == ("SO(2)",)
        rep = branch_topology(SPEC_NEG_I4, principal_branch(SPEC_NEG_I4))
        assert rep.pi_alpha is None  # v = (2) is a repeated non-real eigenvalue
        spec = SpectralData(3, positive=((2.0, 3),))
        rep = branch_topology(spec, principal_branch(spec))
        assert rep.pi_alpha is None  # real multiplicity 3 exceeds 2


class TestSkewBranchTopology:
    def test_negative_identity_4_sphere(self):
        spec = OrthoSpectralData(4, k=2)
        b = SkewMultiIndexSet(sigma=(0,), v=(2,))
        rep = skew_branch_topology(spec, b)
        assert rep.factors == (HomSpace("Gamma", 0, (2,)),)
        assert (rep.dimension, rep.components, rep.pi2_rank) == (2, 2, 1)

    def test_identity_wound_branch(self):
        spec = OrthoSpectralData(2, h=2)
        b = SkewMultiIndexSet(eta=(0, 1), u=(0, 1))
        rep = skew_branch_topology(spec, b)
        assert (rep.dimension, rep.components, rep.pi2_rank) == (0, 2, 0)

    def test_rotation_branches_are_points(self):
        spec = OrthoSpectralData(2, rotations=((math.pi / 3, 1),))
        for b in enumerate_skew_branches(spec, 1, 100)[0]:
            rep = skew_branch_topology(spec, b)
            assert (rep.dimension, rep.components, rep.pi2_rank) == (0, 1, 0)

    def test_components_match_case_analysis(self):
        # theorem-style case analysis, written out independently
        def expected_components(spec, b):
            has_one = spec.h >= 1
            has_neg = spec.k >= 1
            zero_eig = b.g >= 1
            if (not has_one and not has_neg) or (not has_neg and zero_eig):
                return 1
            if has_one and has_neg and not zero_eig:
                return 4
            return 2

        for case in SKEW_CASES:
            for b in enumerate_skew_branches(case.spec, 2, 10**6)[0]:
                rep = skew_branch_topology(case.spec, b)
                assert rep.components == expected_components(case.spec, b), case.name
                assert rep.pi2_rank == sum(homspace_pi2_rank(f) for f in rep.factors)


class TestPrincipalTopology:
    def test_no_negatives_is_point(self):
        rep = principal_topology(SPEC_D23)
        assert (rep.dimension, rep.components, rep.pi2_rank) == (0, 1, 0)

    def test_negative_identity_2(self):
        rep = principal_topology(SPEC_NEG_I2)
        assert (rep.dimension, rep.components, rep.pi2_rank) == (2, 2, 0)

    def test_negative_identity_4(self):
        rep = principal_topology(SPEC_NEG_I4)
        assert (rep.components, rep.pi2_rank) == (2, 1)

    def test_agrees_with_branch_topology(self):
        for case in GENERAL_CASES:
            via_branch = branch_topology(case.spec, principal_branch(case.spec))
            direct = principal_topology(case.spec)
            assert direct.dimension == via_branch.dimension, case.name
            assert direct.components == via_branch.components, case.name
            assert direct.pi2_rank == via_branch.pi2_rank, case.name
            assert direct.pi_alpha == via_branch.pi_alpha, case.name


class TestPrincipalSkewTopology:
    def test_identity_singleton(self):
        rep = principal_skew_topology(OrthoSpectralData(3, h=3))
        assert (rep.dimension, rep.components, rep.pi2_rank) == (0, 1, 0)

    def test_negative_identity_2_two_points(self):
        rep = principal_skew_topology(OrthoSpectralData(2, k=1))
        assert (rep.dimension, rep.components, rep.pi2_rank) == (0, 2, 0)

    def test_negative_identity_4_spheres(self):
        rep = principal_skew_topology(OrthoSpectralData(4, k=2))
        assert (rep.dimension, rep.components, rep.pi2_rank) == (2, 2, 1)

    def test_large_k_infinite_cyclic(self):
        rep = principal_skew_topology(OrthoSpectralData(6, k=3))
        assert rep.simply_connected and rep.pi2_rank == 1

    def test_agrees_with_branch_topology(self):
        for case in SKEW_CASES:
            via_branch = skew_branch_topology(case.spec, principal_skew_branch(case.spec))
            direct = principal_skew_topology(case.spec)
            assert direct.dimension == via_branch.dimension, case.name
            assert direct.components == via_branch.components, case.name
            assert direct.pi2_rank == via_branch.pi2_rank, case.name


class TestCardinality:
    def test_examples(self):
        assert log_set_cardinality_class(SPEC_D23) == SINGLETON
        mixed = SpectralData(3, positive=((5.0, 1),), nonreal=((math.pi / 3, ((2.0, 1),)),))
        assert log_set_cardinality_class(mixed) == COUNTABLY_INFINITE
        assert log_set_cardinality_class(SPEC_NEG_I2) == UNCOUNTABLE

    def test_skew_examples(self):
        assert (
            skew_log_set_cardinality_class(OrthoSpectralData(2, rotations=((math.pi / 3, 1),)))
            == COUNTABLY_INFINITE
        )
        assert skew_log_set_cardinality_class(OrthoSpectralData(2, h=2)) == COUNTABLY_INFINITE
        assert skew_log_set_cardinality_class(OrthoSpectralData(4, k=2)) == UNCOUNTABLE

    def test_skew_order_one_rejected(self):
        with pytest.raises(InvalidInputError):
            skew_log_set_cardinality_class(OrthoSpectralData(1, h=1))


class TestCentralizerDims:
    def test_examples(self):
        assert centralizer_dims(SPEC_D23, principal_branch(SPEC_D23)) == (2, 2)
        assert centralizer_dims(SPEC_I2, BRANCH_I2_WOUND) == (4, 2)
        assert centralizer_dims(SPEC_NEG_I2, principal_branch(SPEC_NEG_I2)) == (4, 2)

    def test_difference_equals_dimension(self):
        for case in GENERAL_CASES:
            for b in enumerate_branches(case.spec, 2, 10**6)[0]:
                rep = branch_topology(case.spec, b)
                big, small = centralizer_dims(case.spec, b)
                assert rep.dimension == big - small, case.name

    def test_skew_difference_equals_dimension(self):
        for case in SKEW_CASES:
            for b in enumerate_skew_branches(case.spec, 2, 10**6)[0]:
                rep = skew_branch_topology(case.spec, b)
                big, small = skew_centralizer_dims(case.spec, b)
                assert rep.dimension == big - small, case.name

    def test_numeric_kernel_agreement_small_orders(self):
        for case in GENERAL_CASES:
            if case.spec.n > 4:
                continue
            jmat = jordan_matrix(case.spec)
            for b in enumerate_branches(case.spec, 1, 10**6)[0]:
                big, small = centralizer_dims(case.spec, b)
                assert commutant_kernel_dim(jmat) == big
                assert commutant_kernel_dim(canonical_log(case.spec, b)) == small
