import numpy as np
import pytest

from zecheck.channel import BlockStateVector, random_block_state
from zecheck.linalg import (
    basis_state,
    max_entangled,
    max_entangled_projector,
    support_null,
)
from zecheck.zero_error import (
    averaged_output_overlap,
    code_pair_conditions,
    design_average_overlap_operator,
    disjoint_support,
    orthogonality_report,
    overlap_operator,
    overlap_support_projector,
    pairing_vector,
)


def raw_average_oracle(family):
    """Fully expanded summation over the family, one kron per (i, k, member)."""
    d = family.d
    w = np.exp(2j * np.pi / d)
    out = np.zeros((d**3, d**3), dtype=complex)
    for i in range(d):
        for k in range(d):
            unit = np.zeros((d, d), dtype=complex)
            unit[i, k] = 1.0
            z = np.diag(w ** (((k - i) % d) * np.arange(d)))
            for g, weight in zip(family.members, family.weights):
                m = g.conj().T @ z @ g
                out += weight * np.kron(unit, np.kron(m, m.conj()))
    return out


def test_coupling_matrix_d2():
    op = overlap_operator(2)
    phi = max_entangled_projector(2)
    comp = np.eye(4) - phi
    expected = (
        np.kron(np.array([[1, -1 / 3], [-1 / 3, 1]]), comp)
        + np.kron(np.ones((2, 2)), phi)
    )
    np.testing.assert_allclose(op, expected, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_design_average_matches_closed_form(d, family_d2, family_d3):
    fam = family_d2 if d == 2 else family_d3
    assert np.abs(overlap_operator(d) - design_average_overlap_operator(fam)).max() <= 1e-9


def test_raw_oracle_matches_closed_form(family_d2):
    assert np.abs(overlap_operator(2) - raw_average_oracle(family_d2)).max() <= 1e-9


@pytest.mark.parametrize("d", [2, 3])
def test_operator_is_psd(d):
    assert np.linalg.eigvalsh(overlap_operator(d)).min() >= -1e-9


@pytest.mark.parametrize("d", [2, 3])
def test_support_projector(d):
    op = overlap_operator(d)
    support, null = support_null(op, (d, d, d))
    np.testing.assert_allclose(support.projector(), overlap_support_projector(d), atol=1e-9)
    assert null.dim == d - 1
    proj = overlap_support_projector(d)
    np.testing.assert_allclose(proj @ proj, proj, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_null_vectors(d):
    op = overlap_operator(d)
    phi = max_entangled(d)
    for k in range(1, d):
        mu = (basis_state(d, 0) - basis_state(d, k)) / np.sqrt(2)
        assert np.linalg.norm(op @ np.kron(mu, phi)) <= 1e-10


@pytest.mark.parametrize("d", [2, 3])
def test_dominance_scaled_and_tight(d):
    # the unscaled comparison fails by exactly 1/(d+1); the scaled one is tight
    op = overlap_operator(d)
    phi = max_entangled_projector(d)
    lower = np.kron(np.eye(d), np.eye(d * d) - phi)
    scaled_min = np.linalg.eigvalsh(op - (d / (d + 1)) * lower).min()
    assert scaled_min >= -1e-9
    unscaled_min = np.linalg.eigvalsh(op - lower).min()
    assert unscaled_min == pytest.approx(-1.0 / (d + 1), abs=1e-9)


def test_pairing_vector_structure():
    rng = np.random.default_rng(3)
    p1 = random_block_state(2, 1, rng)
    p2 = random_block_state(2, 1, rng)
    x = pairing_vector(p1, p2).reshape(2, 2, 2)
    for i in range(2):
        np.testing.assert_allclose(x[i], np.outer(p1.blocks[i], p2.blocks[i].conj()), atol=1e-12)


def test_overlap_disjoint_is_zero():
    rng = np.random.default_rng(5)
    p1 = random_block_state(2, 2, rng, support=[(0, 0), (0, 1)])
    p2 = random_block_state(2, 2, rng, support=[(1, 0), (1, 1)])
    assert abs(averaged_output_overlap(p1, p2)) <= 1e-12


def test_overlap_single_block_self():
    rng = np.random.default_rng(7)
    vec = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    vec /= np.linalg.norm(vec)
    psi = BlockStateVector.from_blocks(2, 2, {(0, 0): vec})
    assert averaged_output_overlap(psi, psi) == pytest.approx(1.0, abs=1e-12)


def test_overlap_symmetry_and_scaling():
    rng = np.random.default_rng(9)
    p1 = random_block_state(3, 1, rng)
    p2 = random_block_state(3, 1, rng)
    v = averaged_output_overlap(p1, p2)
    assert averaged_output_overlap(p2, p1) == pytest.approx(v, abs=1e-10)
    scaled = BlockStateVector(3, 1, 0.5 * p1.blocks)
    assert averaged_output_overlap(scaled, p2) == pytest.approx(0.25 * v, abs=1e-10)


def test_disjoint_support_basics():
    rng = np.random.default_rng(11)
    p1 = random_block_state(2, 2, rng, support=[(0, 0)])
    p2 = random_block_state(2, 2, rng, support=[(1, 0), (1, 1)])
    assert disjoint_support(p1, p2)
    p3 = random_block_state(2, 2, rng, support=[(0, 0), (1, 1)])
    assert not disjoint_support(p1, p3)


def test_equivalence_on_random_pairs():
    rng = np.random.default_rng(13)
    for _ in range(200):
        tuples = [(i,) for i in range(2)]
        support = [t for t in tuples if rng.random() < 0.5] or None
        p1 = random_block_state(2, 1, rng, support=support)
        p2 = random_block_state(2, 1, rng)
        assert disjoint_support(p1, p2) == (averaged_output_overlap(p1, p2) <= 1e-8)


def test_code_conditions_shared_support():
    rng = np.random.default_rng(17)
    p1 = random_block_state(2, 1, rng)
    p2 = random_block_state(2, 1, rng)
    check = code_pair_conditions(p1, p2)
    assert not check.outputs_orthogonal


def test_code_conditions_disjoint_pair():
    rng = np.random.default_rng(19)
    p1 = random_block_state(2, 1, rng, support=[(0,)])
    p2 = random_block_state(2, 1, rng, support=[(1,)])
    check = code_pair_conditions(p1, p2)
    assert check.outputs_orthogonal
    assert not check.mixed_outputs_orthogonal
    assert not check.degenerate


def test_code_conditions_zero_pair():
    z1 = BlockStateVector.zero(2, 1)
    z2 = BlockStateVector.zero(2, 1)
    check = code_pair_conditions(z1, z2)
    assert check == (True, True, True)


def test_orthogonality_report_agreement(channel_d2):
    rng = np.random.default_rng(23)
    for support in (None, [(0,)]):
        p1 = random_block_state(2, 1, rng, support=support)
        p2 = random_block_state(2, 1, rng, support=[(1,)] if support else None)
        rep = orthogonality_report(channel_d2, p1, p2)
        assert rep.agree
        assert rep.overlap_value == pytest.approx(rep.a_form_value, abs=1e-8)
