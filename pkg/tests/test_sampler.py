import math

import numpy as np
import pytest

from corpus import GENERAL_CASES, SKEW_CASES, build_general, build_skew
from logatlas.branches import (
    MultiIndexSet,
    enumerate_branches,
    principal_branch,
    principal_skew_branch,
)
from logatlas.errors import DegenerateSampleError, InvalidBranchError
from logatlas.numkernel import mat_exp, rotation_block
from logatlas.sampler import (
    CommutantBlock,
    CommutantElement,
    component_signature,
    sample_commutant,
    sample_log,
    sample_log_with_element,
    sample_orthogonal_commutant,
    sample_skew_log,
    skew_component_signature,
    verify_log,
)
from logatlas.spectra import (
    OrthoSpectralData,
    SpectralData,
    classify_orthogonal_spectrum,
    classify_spectrum,
    jordan_matrix,
    ortho_canonical,
    ortho_jordan_matrix,
    real_jordan,
)

E = np.array([[0.0, -1.0], [1.0, 0.0]])
PI = math.pi

SPEC_D23 = SpectralData(2, positive=((2.0, 1), (3.0, 1)))
SPEC_NEG_I2 = SpectralData(2, negative=((1.0, 1),))


class TestSampleCommutant:
    def test_diagonal_structure(self):
        x = sample_commutant(SPEC_D23, 0)
        assert [b.kind for b in x.blocks] == ["real_general", "real_general"]
        assert x.assembled[0, 1] == 0.0 and x.assembled[1, 0] == 0.0
        assert x.assembled[0, 0] != 0.0 and x.assembled[1, 1] != 0.0

    def test_rotation_gives_complex_scalar(self):
        spec = classify_spectrum(2 * rotation_block(PI / 3))
        x = sample_commutant(spec, 1)
        assert [b.kind for b in x.blocks] == ["complex_general"]
        a, b = x.assembled[0, 0], x.assembled[1, 0]
        np.testing.assert_allclose(x.assembled, a * np.eye(2) + b * E, atol=1e-15)

    def test_negative_identity_full_block(self):
        x = sample_commutant(SPEC_NEG_I2, 2)
        assert [b.kind for b in x.blocks] == ["real_general"]
        assert abs(np.linalg.det(x.assembled)) >= 1e-3

    def test_commutes_with_canonical_form(self):
        for case in GENERAL_CASES:
            jmat = jordan_matrix(case.spec)
            x = sample_commutant(case.spec, 7)
            lhs = x.assembled @ jmat - jmat @ x.assembled
            bound = 1e-12 * np.linalg.norm(x.assembled) * np.linalg.norm(jmat)
            assert np.linalg.norm(lhs) <= bound, case.name


class TestSampleOrthogonalCommutant:
    def test_identity_spec_is_orthogonal(self):
        spec = OrthoSpectralData(2, h=2)
        x = sample_orthogonal_commutant(spec, 0)
        np.testing.assert_allclose(x.assembled.T @ x.assembled, np.eye(2), atol=1e-12)

    def test_rotation_gives_unit_complex(self):
        spec = OrthoSpectralData(2, rotations=((PI / 3, 1),))
        x = sample_orthogonal_commutant(spec, 1)
        a, b = x.assembled[0, 0], x.assembled[1, 0]
        assert a * a + b * b == pytest.approx(1.0, abs=1e-12)

    def test_commutes_and_orthogonal(self):
        for case in SKEW_CASES:
            jmat = ortho_jordan_matrix(case.spec)
            x = sample_orthogonal_commutant(case.spec, 5)
            np.testing.assert_allclose(
                x.assembled.T @ x.assembled, np.eye(case.spec.n), atol=1e-12
            )
            lhs = x.assembled @ jmat - jmat @ x.assembled
            assert np.linalg.norm(lhs) <= 1e-12 * max(1.0, np.linalg.norm(jmat))


class TestSampleLog:
    def test_zero_dimensional_branch_constant(self):
        m = np.diag([2.0, 3.0])
        spec = classify_spectrum(m)
        _, c = real_jordan(m)
        b = principal_branch(spec)
        expected = np.diag([math.log(2), math.log(3)])
        for seed in range(8):
            y = sample_log(m, spec, c, b, seed)
            assert np.linalg.norm(y - expected) <= 1e-10

    def test_negative_identity_two_parameter_family(self):
        m = -np.eye(2)
        spec = classify_spectrum(m)
        _, c = real_jordan(m)
        b = principal_branch(spec)
        rng = np.random.default_rng(3)
        ys = [sample_log(m, spec, c, b, rng) for _ in range(6)]
        assert all(np.linalg.norm(mat_exp(y) + np.eye(2)) <= 1e-8 * 2 for y in ys)
        spread = max(np.linalg.norm(ys[0] - y) for y in ys)
        assert spread > 1e-3  # genuinely moves along the orbit

    def test_residuals_and_eigenvalues_on_corpus_sample(self):
        rng = np.random.default_rng(12)
        for case in GENERAL_CASES[:10]:
            m = build_general(case)
            spec = classify_spectrum(m)
            _, c = real_jordan(m)
            for b in enumerate_branches(spec, 1, 10**6)[0][:4]:
                y = sample_log(m, spec, c, b, rng)
                assert verify_log(m, y).passed, case.name

    def test_conjugation_equivariance(self):
        m = jordan_matrix(GENERAL_CASES[17].spec)  # mixed_pos_neg
        spec = classify_spectrum(m)
        jmat, c = real_jordan(m)
        rng = np.random.default_rng(8)
        p = np.eye(4) + 0.2 * rng.standard_normal((4, 4))
        m2 = p @ m @ np.linalg.inv(p)
        b = principal_branch(spec)
        y1 = sample_log(m, spec, c, b, np.random.default_rng(41))
        y2 = sample_log(m2, spec, p @ c, b, np.random.default_rng(41))
        assert np.linalg.norm(y2 - p @ y1 @ np.linalg.inv(p)) <= 1e-8 * np.linalg.norm(y1)

    def test_inadmissible_branch_rejected(self):
        m = np.diag([2.0, 3.0])
        spec = classify_spectrum(m)
        _, c = real_jordan(m)
        bad = MultiIndexSet(eta=((0, 1),), u=((0, 1),))
        with pytest.raises(InvalidBranchError):
            sample_log(m, spec, c, bad, 0)


class TestSampleSkewLog:
    def test_identity_zero_branch(self):
        m = np.eye(3)
        spec = classify_orthogonal_spectrum(m)
        _, q = ortho_canonical(m)
        b = principal_skew_branch(spec)
        for seed in range(4):
            w = sample_skew_log(m, spec, q, b, seed)
            np.testing.assert_array_equal(w, np.zeros((3, 3)))

    def test_negative_identity_two_points(self):
        m = -np.eye(2)
        spec = classify_orthogonal_spectrum(m)
        _, q = ortho_canonical(m)
        b = principal_skew_branch(spec)
        hits = set()
        for seed in range(30):
            w = sample_skew_log(m, spec, q, b, seed)
            dist = min(np.linalg.norm(w - PI * E), np.linalg.norm(w + PI * E))
            assert dist <= 1e-12
            hits.add(1 if w[1, 0] > 0 else -1)
        assert hits == {1, -1}

    def test_exact_skewness_and_residuals(self):
        rng = np.random.default_rng(21)
        for case in SKEW_CASES:
            m = build_skew(case)
            spec = classify_orthogonal_spectrum(m)
            _, q = ortho_canonical(m)
            b = principal_skew_branch(spec)
            w = sample_skew_log(m, spec, q, b, rng)
            assert np.linalg.norm(w + w.T) == 0.0
            assert np.linalg.norm(mat_exp(w) - m) <= 1e-9 * np.linalg.norm(m), case.name


class TestComponentSignature:
    def test_empty_for_simple_positive(self):
        spec = SPEC_D23
        b = principal_branch(spec)
        x = sample_commutant(spec, 0)
        assert component_signature(x, b) == ()

    def test_negative_identity_signs(self):
        b = principal_branch(SPEC_NEG_I2)
        seen = {component_signature(sample_commutant(SPEC_NEG_I2, s), b) for s in range(40)}
        assert seen == {(1,), (-1,)}

    def test_identity_wound_branch_signs(self):
        spec = SpectralData(2, positive=((1.0, 2),))
        b = MultiIndexSet(eta=((0, 1),), u=((0, 1),))
        seen = {component_signature(sample_commutant(spec, s), b) for s in range(40)}
        assert seen == {(1,), (-1,)}

    def test_near_singular_block_rejected(self):
        b = principal_branch(SPEC_NEG_I2)
        tiny = CommutantElement(
            blocks=(CommutantBlock("real_general", 2, 1e-7 * np.eye(2)),),
            assembled=1e-7 * np.eye(2),
        )
        with pytest.raises(DegenerateSampleError):
            component_signature(tiny, b)

    def test_skew_signature_lengths(self):
        spec = OrthoSpectralData(4, h=2, k=1)
        b = principal_skew_branch(spec)  # g = 2, so the identity block sign is absorbed
        x = sample_orthogonal_commutant(spec, 3)
        assert len(skew_component_signature(x, b)) == 1
        from logatlas.branches import SkewMultiIndexSet

        wound = SkewMultiIndexSet(eta=(0, 1), u=(0, 1), sigma=(0,), v=(1,))
        assert len(skew_component_signature(x, wound)) == 2


class TestVerifyLog:
    def test_identity_zero(self):
        rep = verify_log(np.eye(2), np.zeros((2, 2)))
        assert rep.passed and rep.exp_residual == 0.0 and rep.skew_residual == 0.0

    def test_half_turn(self):
        rep = verify_log(-np.eye(2), PI * E)
        assert rep.passed and rep.exp_residual <= 1e-13

    def test_wrong_log_fails(self):
        rep = verify_log(np.eye(2), PI * E)
        assert not rep.passed and rep.exp_residual == pytest.approx(2.0, abs=1e-6)
