import math

import numpy as np
import pytest

import dhlab

L = 2 * math.pi


def test_clifford_relations():
    s = [1 + 2j, -0.5j]
    xx = dhlab.clifford_mul("x", dhlab.clifford_mul("x", s))
    assert np.allclose(xx, [-v for v in s])
    xy = dhlab.clifford_mul("x", dhlab.clifford_mul("y", s))
    yx = dhlab.clifford_mul("y", dhlab.clifford_mul("x", s))
    assert np.allclose(np.add(xy, yx), 0)
    assert np.allclose(dhlab.omega_mul(dhlab.omega_mul(s)), s)
    with pytest.raises(dhlab.BadParams):
        dhlab.clifford_mul("z", s)


def test_fierz_and_majorana():
    a, b, c = [1, 1j], [0.3, -2], [1j, 0.5]
    assert abs(dhlab.fierz_gap(a, b, c)) < 1e-12
    assert dhlab.majorana_check([1, 1], [2, 2j], [0.5, 0.5]) < 1e-12
    assert dhlab.majorana_check([1, 0], [1, 0], [1, 0]) > 0.5


def test_suites():
    assert "clifford" in dhlab.sigma_suites()
    result = dhlab.run_suite("clifford", samples=100, seed=3)
    assert result["pass"] and result["suite"] == "clifford"
    assert dhlab.run_suite("fierz", gn=True, samples=100)["pass"]
    with pytest.raises(dhlab.UnknownSuite):
        dhlab.run_suite("bogus")


def test_exact_solution_is_critical():
    phi, psi = dhlab.exact_solution("rank1_spinor", n=16, length=L)
    assert phi.shape == (3, 16, 16) and psi.shape == (3, 2, 16, 16)
    r_phi, r_psi = dhlab.el_residuals(phi, psi, -1 / 6, L)
    assert np.abs(r_phi).max() < 1e-12 and np.abs(r_psi).max() < 1e-12


def test_geodesic_wrap_current():
    phi, psi = dhlab.exact_solution("geodesic_wrap", n=32, length=L)
    j, div = dhlab.current(phi, psi, L)
    assert j.shape == (2, 3, 3, 32, 32)
    assert div < 1e-10
    assert np.allclose(j[0, 0, 1], -1.0)


def test_energy_and_relax_from_exact():
    phi, psi = dhlab.exact_solution("constant", n=8, length=L)
    assert abs(dhlab.energy(phi, psi, 0.3, L)) < 1e-14
    phi1, psi1, report = dhlab.relax_sigma(phi, psi, 0.3, L, scheme="spectral")
    assert report["converged"] and report["iterations"] == 0


def test_gn_constant():
    psi = dhlab.gn_solution("constant", n=8, length=L, lam=-1.0, kappa=1.0)
    assert np.abs(dhlab.gn_residual(psi, -1.0, 1.0, L)).max() < 1e-12
    _, div = dhlab.gn_current(psi, L)
    assert div < 1e-12


def test_dump_round_trip(tmp_path):
    phi, psi = dhlab.random_pair(n=8, length=L, seed=4)
    dhlab.write_phi(str(tmp_path / "phi.dump"), phi, L)
    dhlab.write_psi(str(tmp_path / "psi.dump"), psi, L)
    phi2, length = dhlab.read_phi(str(tmp_path / "phi.dump"))
    psi2, _ = dhlab.read_psi(str(tmp_path / "psi.dump"))
    assert length == L
    assert np.array_equal(phi, phi2) and np.array_equal(psi, psi2)


def test_rejects_bad_shapes():
    with pytest.raises(dhlab.BadParams):
        dhlab.energy(np.zeros((3, 8)), np.zeros((3, 2, 8, 8), complex), 0.0, L)
