import itertools

import numpy as np
import pytest

import oracle
from otocising import (
    CapacityError,
    DomainError,
    IsingModel,
    IsingParams,
    build_terms,
    eigendecompose,
    ground_state,
    total_hamiltonian,
)
from otocising.hamiltonian import site_spins

# lowest eigenvalue of the N=4 periodic TFIC at g=1, from the kron/scipy oracle;
# equals -2*(2 sin(pi/8) + 2 sin(3 pi/8)) from the free-fermion spectrum
E0_TFIC_N4_G1 = -5.226251859505506


def dense(n, g, delta=0.0):
    return total_hamiltonian(build_terms(IsingParams(n, g, delta)))


def test_zz_diagonal_examples():
    assert build_terms(IsingParams(4, 0.7)).zz_diagonal[0] == -4
    assert build_terms(IsingParams(4, 0.0, 0.5)).zz_diagonal[0] == -6
    assert build_terms(IsingParams(4, 0.0)).zz_diagonal[0b0101] == 4


def test_zz_diagonal_matches_bond_enumeration():
    # brute force: walk the literal periodic sums for every configuration
    for n, delta in [(4, 0.0), (4, 0.5), (5, 0.3), (6, 0.5), (2, 0.0)]:
        diag = build_terms(IsingParams(n, 0.0, delta)).zz_diagonal
        for idx, bits in enumerate(itertools.product((0, 1), repeat=n)):
            z = [1 - 2 * b for b in bits]
            e = -sum(z[k] * z[(k + 1) % n] + delta * z[k] * z[(k + 2) % n] for k in range(n))
            assert diag[idx] == pytest.approx(e, abs=1e-14)


def test_all_up_diagonal_entry():
    for n, j, delta in [(4, 1.0, 0.0), (5, 1.0, 0.5), (8, 2.0, 0.25)]:
        diag = build_terms(IsingParams(n, 0.3, delta, j)).zz_diagonal
        assert diag[0] == pytest.approx(-(n * j + n * delta))


@pytest.mark.parametrize(
    "kwargs",
    [dict(n_sites=3, field=1.0, delta=0.5), dict(n_sites=1, field=1.0), dict(n_sites=4, field=1.0, j_coupling=-1.0),
     dict(n_sites=0, field=1.0, j_coupling=0.0), dict(n_sites=4, field=float("nan"))],
)
def test_param_invariants(kwargs):
    with pytest.raises(DomainError):
        IsingParams(**kwargs)


def test_single_spin_field_only_allowed():
    h = total_hamiltonian(build_terms(IsingParams(1, 1.0, 0.0, 0.0)))
    np.testing.assert_array_equal(h, [[0, -1], [-1, 0]])


def test_two_site_double_counted_bond():
    np.testing.assert_array_equal(dense(2, 0.0), np.diag([-2, 2, 2, -2]))


@pytest.mark.parametrize("n, g, delta", [(4, 0.5, 0.0), (2, 1.3, 0.0), (4, 1.1, 0.5), (5, 0.7, 0.5), (6, 2.0, 0.5)])
def test_matches_kron_oracle(n, g, delta):
    np.testing.assert_allclose(dense(n, g, delta), oracle.hamiltonian(n, g, delta), atol=1e-12, rtol=0)


def test_field_entries_connect_single_bit_flips():
    h = dense(4, 0.5)
    off = h - np.diag(np.diag(h))
    assert np.count_nonzero(off) == 16 * 4
    for i, j in zip(*np.nonzero(off)):
        assert bin(i ^ j).count("1") == 1
        assert off[i, j] == -0.5


def test_dense_limit():
    terms = build_terms(IsingParams(13, 1.0))
    with pytest.raises(CapacityError, match="Trotter"):
        total_hamiltonian(terms)
    with pytest.raises(CapacityError):
        total_hamiltonian(build_terms(IsingParams(5, 1.0)), dense_limit=4)


@pytest.mark.parametrize("n, g, delta", [(3, 0.5, 0.0), (4, 1.5, 0.5), (6, 0.9, 0.5)])
def test_symmetries(n, g, delta):
    h = dense(n, g, delta)
    dim = 2**n
    assert np.max(np.abs(h - h.conj().T)) < 1e-12
    flip = np.eye(dim)[::-1]  # global spin flip maps index i to ~i
    assert np.max(np.abs(h @ flip - flip @ h)) < 1e-10
    hzz = np.diag(build_terms(IsingParams(n, g, delta)).zz_diagonal)
    for site in range(1, n + 1):
        sz = oracle.site_op("z", site, n)
        assert np.max(np.abs(hzz @ sz - sz @ hzz)) < 1e-12
    # cyclic shift of sites: bit string rotated by one place
    shift = np.zeros((dim, dim))
    for i in range(dim):
        j = ((i >> 1) | ((i & 1) << (n - 1)))
        shift[j, i] = 1
    assert np.max(np.abs(shift @ h @ shift.T - h)) < 1e-12


def test_terms_reconstruct_total():
    terms = build_terms(IsingParams(5, 0.8, 0.5))
    hx = sum(-0.8 * oracle.site_op("x", k, 5) for k in range(1, 6))
    np.testing.assert_allclose(np.diag(terms.zz_diagonal) + hx, total_hamiltonian(terms), atol=1e-12, rtol=0)


def test_eigendecompose_examples():
    np.testing.assert_allclose(eigendecompose(-oracle.X).eigenvalues, [-1, 1], atol=1e-15)
    np.testing.assert_allclose(eigendecompose(dense(2, 0.0)).eigenvalues, [-2, -2, 2, 2])
    assert eigendecompose(dense(4, 1.0)).eigenvalues[0] == pytest.approx(E0_TFIC_N4_G1, abs=1e-9)


def test_eigendecompose_rejects_non_hermitian():
    with pytest.raises(DomainError):
        eigendecompose(np.array([[0, 1], [0, 0]], dtype=complex))


@pytest.mark.parametrize("n, g, delta", [(4, 1.0, 0.0), (5, 0.4, 0.5)])
def test_eigensystem_invariants(n, g, delta):
    h = dense(n, g, delta)
    eig = eigendecompose(h)
    v, lam = eig.eigenvectors, eig.eigenvalues
    assert np.all(np.diff(lam) >= 0)
    assert np.max(np.abs(h @ v - v * lam)) < 1e-9
    assert np.max(np.abs(v.conj().T @ v - np.eye(2**n))) < 1e-9
    again = eigendecompose(h)
    np.testing.assert_array_equal(again.eigenvalues, lam)
    np.testing.assert_array_equal(again.eigenvectors, v)


def test_ground_state_examples():
    gs = IsingModel.create(4, 0.0).ground_state()
    np.testing.assert_allclose(gs.amplitudes, np.eye(16)[0], atol=1e-12)
    single = ground_state(eigendecompose(total_hamiltonian(build_terms(IsingParams(1, 0.8, 0.0, 0.0)))))
    np.testing.assert_allclose(single.amplitudes, np.array([1, 1]) / np.sqrt(2), atol=1e-12)


def test_ground_state_n3_matches_oracle():
    gs = IsingModel.create(3, 0.5).ground_state()
    _, ref = oracle.ground(oracle.hamiltonian(3, 0.5))
    assert abs(abs(np.vdot(ref, gs.amplitudes)) - 1) < 1e-9
    # unique, spin-flip symmetric ground state: site magnetization vanishes
    mz1 = np.vdot(gs.amplitudes, oracle.site_op("z", 1, 3) @ gs.amplitudes).real
    assert abs(mz1) < 1e-9
    peak = gs.amplitudes[np.argmax(np.abs(gs.amplitudes))]
    assert peak.real > 0 and abs(peak.imag) < 1e-15


def test_ground_state_tie_break_in_rotated_manifold():
    # degenerate manifold handed over in a rotated basis: still pick all-up
    h = dense(4, 0.0)
    eig = eigendecompose(h)
    vecs = eig.eigenvectors.copy()
    a, b = vecs[:, 0].copy(), vecs[:, 1].copy()
    vecs[:, 0], vecs[:, 1] = (a + b) / np.sqrt(2), (a - b) / np.sqrt(2)
    from otocising import EigenSystem

    gs = ground_state(EigenSystem(eig.eigenvalues, vecs))
    np.testing.assert_allclose(gs.amplitudes, np.eye(16)[0], atol=1e-12)


@pytest.mark.parametrize("n, delta", [(4, 0.0), (6, 0.0), (8, 0.0), (5, 0.5), (8, 0.5)])
def test_ground_energy_non_increasing_in_field(n, delta):
    energies = [IsingModel.create(n, g, delta).eig.eigenvalues[0] for g in (0, 0.5, 1, 1.5, 2)]
    assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))


def test_site_spins_convention():
    z = site_spins(3)
    assert z[:, 0].tolist() == [1, 1, 1]
    assert z[:, 0b100].tolist() == [-1, 1, 1]  # site 1 is the most significant bit
