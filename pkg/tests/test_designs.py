import numpy as np
import pytest

from zecheck.designs import (
    DesignCacheError,
    UnitaryFamily,
    canonical_phase,
    conjugate_twirl,
    enumerate_clifford,
    fourier,
    frame_potential,
    isotropic_projection,
    load_design_cache,
    multiplication_table,
    save_design_cache,
    verify_two_design,
)
from zecheck.linalg import max_entangled_projector, random_psd


def phase_key(u):
    return np.round(canonical_phase(u), 10).tobytes()


def test_enumeration_sizes(family_d2, family_d3):
    assert len(family_d2) == 24
    assert len(family_d3) == 216


def test_generators_present(family_d2):
    keys = {phase_key(g) for g in family_d2.members}
    assert phase_key(np.eye(2, dtype=complex)) in keys
    hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    assert phase_key(hadamard) in keys


def test_unsupported_dimension():
    with pytest.raises(ValueError):
        enumerate_clifford(4)


def test_frame_potential_single_identity():
    fam = UnitaryFamily(2, np.eye(2, dtype=complex)[None, :, :], np.array([1.0]))
    assert frame_potential(fam) == pytest.approx(16.0)


def test_frame_potential_exact(family_d2, family_d3):
    assert abs(frame_potential(family_d2) - 2.0) <= 1e-9
    assert abs(frame_potential(family_d3) - 2.0) <= 1e-9


def test_verified_flag(family_d2):
    assert family_d2.verified
    broken = UnitaryFamily(2, family_d2.members[:5], np.full(5, 0.2))
    assert not verify_two_design(broken)
    assert not broken.verified


def test_group_closure(family_d2, family_d3):
    for fam in (family_d2, family_d3):
        table = multiplication_table(fam)
        assert (table >= 0).all()


def test_canonical_phase_normalizes():
    rng = np.random.default_rng(0)
    u = fourier(3)
    for _ in range(5):
        phase = np.exp(2j * np.pi * rng.random())
        np.testing.assert_allclose(canonical_phase(phase * u), canonical_phase(u), atol=1e-12)
    pivot = canonical_phase(u).ravel()[0]
    assert pivot.imag == pytest.approx(0.0) and pivot.real > 0


def test_twirl_identity_invariant(family_d2):
    eye = np.eye(4, dtype=complex)
    np.testing.assert_allclose(conjugate_twirl(family_d2, eye), eye, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_twirl_clock_closed_form(d, family_d2, family_d3):
    fam = family_d2 if d == 2 else family_d3
    phi = max_entangled_projector(d)
    comp = np.eye(d * d) - phi
    w = np.exp(2j * np.pi / d)
    for a in range(1, d):
        za = np.diag(w ** (a * np.arange(d)))
        got = conjugate_twirl(fam, np.kron(za, za.conj()))
        np.testing.assert_allclose(got, phi - comp / (d * d - 1), atol=1e-9)


@pytest.mark.parametrize("d", [2, 3])
def test_twirl_unit_projectors(d, family_d2, family_d3):
    # k != l case of the unit-projector twirl: (I-Phi)/(d^2-1)
    fam = family_d2 if d == 2 else family_d3
    phi = max_entangled_projector(d)
    comp = np.eye(d * d) - phi
    m = np.zeros((d * d, d * d), dtype=complex)
    m[0 * d + 1, 0 * d + 1] = 1.0  # |0><0| (x) |1><1|
    got = conjugate_twirl(fam, m)
    np.testing.assert_allclose(got, comp / (d * d - 1), atol=1e-9)


def test_twirl_matches_closed_form_projection(family_d3):
    rng = np.random.default_rng(4)
    m = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
    got = conjugate_twirl(family_d3, m)
    np.testing.assert_allclose(got, isotropic_projection(3, m), atol=1e-9)
    np.testing.assert_allclose(conjugate_twirl(family_d3, got), got, atol=1e-9)


def test_twirl_preserves_psd_and_trace(family_d2):
    rng = np.random.default_rng(12)
    m = random_psd(4, rng)
    t = conjugate_twirl(family_d2, m)
    assert np.linalg.eigvalsh(t).min() >= -1e-12
    assert np.trace(t).real == pytest.approx(np.trace(m).real)


def test_twirl_output_commutes_with_family(family_d2):
    rng = np.random.default_rng(13)
    t = conjugate_twirl(family_d2, random_psd(4, rng))
    for g in family_d2.members:
        k = np.kron(g, g.conj())
        assert np.abs(t @ k - k @ t).max() <= 1e-9


def test_twirl_dimension_mismatch(family_d2):
    with pytest.raises(ValueError):
        conjugate_twirl(family_d2, np.eye(8))


def test_subdesign_search(subdesign_d2):
    assert subdesign_d2 is not None
    assert len(subdesign_d2) == 12
    assert subdesign_d2.verified
    assert abs(frame_potential(subdesign_d2) - 2.0) <= 1e-9


def test_cache_roundtrip(tmp_path, family_d2):
    path = tmp_path / "f.design"
    save_design_cache(family_d2, path)
    loaded = load_design_cache(path)
    assert loaded.d == 2 and len(loaded) == 24
    np.testing.assert_allclose(loaded.members, family_d2.members, atol=0)
    np.testing.assert_allclose(loaded.weights, family_d2.weights, atol=0)


def test_cache_detects_corruption(tmp_path, family_d2):
    path = tmp_path / "f.design"
    save_design_cache(family_d2, path)
    raw = bytearray(path.read_bytes())
    raw[-3] ^= 0xFF
    path.write_bytes(bytes(raw))
    with pytest.raises(DesignCacheError):
        load_design_cache(path)


def test_enumerate_uses_cache(tmp_path):
    fam = enumerate_clifford(2, cache_dir=tmp_path)
    assert (tmp_path / "clifford_d2.design").exists()
    again = enumerate_clifford(2, cache_dir=tmp_path)
    np.testing.assert_allclose(fam.members, again.members, atol=0)
    assert again.verified


def test_closure_size_cap():
    with pytest.raises(RuntimeError):
        enumerate_clifford(3, size_cap=50)
