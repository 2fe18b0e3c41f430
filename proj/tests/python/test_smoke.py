import json
import math

import pytest

import qcu


def test_reference_products():
    harmonic, box = qcu.reference_products()
    assert harmonic == 0.5
    assert box == pytest.approx(1 / math.sqrt(12), rel=1e-15)


def test_pi_groups_uncertainty_set():
    groups = qcu.pi_groups(
        [("hbar", [1, 2, -1]), ("A", [1, 2, -1]), ("dx", [0, 1, 0]), ("dp", [1, 1, -1])]
    )
    assert groups == [[("hbar", "-1"), ("A", "1")], [("hbar", "-1"), ("dx", "1"), ("dp", "1")]]
    assert qcu.dimension_rank([("a", ["1/3", 0, 0]), ("b", [1, 0, 0])]) == 1


def test_pi_groups_rejects_duplicates():
    with pytest.raises(qcu.InputError):
        qcu.pi_groups([("x", [1, 0, 0]), ("x", [0, 1, 0])])


def test_coupled_products():
    assert qcu.equal_mass_product(1.0, 1.0, 0.0)["particle1"] == pytest.approx(0.5, rel=1e-14)
    q = qcu.equal_mass_quantum_product(1.0, 1.0, 4.0, 0, 0)
    assert q["particle1"] == pytest.approx(0.577350, abs=1e-6)
    u = qcu.unequal_mass_quantum_product(1.0, 3.0, 1.0, 0.5, 4, 2)
    assert u["particle1"] > 0 and u["particle2"] > 0
    with pytest.raises(qcu.ScalingError):
        qcu.equal_mass_product(1.0, 1.0, 0.0, 1.0, 0.0)


def test_oscillator_moments():
    for n in (0, 7, 50):
        a = qcu.ho_moments(n)
        q = qcu.ho_moments_quadrature(n)
        assert q["mean_x2"] == pytest.approx(a["mean_x2"], rel=1e-8)
        assert q["mean_p2"] == pytest.approx(a["mean_p2"], rel=1e-8)


def test_densities_and_convergence():
    x, rho = qcu.density_1d(5, True, 257)
    assert len(x) == len(rho) == 257
    width = x[1] - x[0]
    assert sum(rho) * width == pytest.approx(1.0, abs=1e-6)
    d = qcu.converge([5, 10, 20])
    assert d[0] > d[1] > d[2]


def test_roots_and_box():
    roots = qcu.solve_wavenumbers(5.0, 1.0, 20)
    assert all(r <= 1e-10 for _, r in roots)
    assert all(b[0] > a[0] for a, b in zip(roots, roots[1:]))
    assert qcu.box_classical_product(1, 1, 1, 3, 2, 2)["particle1"] == pytest.approx(
        2 / math.sqrt(12), rel=1e-14
    )
    assert qcu.xr2_expectation(1000.0, 1.0) == pytest.approx(1 / 3, rel=0.01)
    with pytest.raises(qcu.UnsupportedError):
        qcu.box_quantum_product(1, 1, 1, -1, 1, 1)


def test_run_cli():
    code, out, err = qcu.run_cli(["roots", "--L", "5", "--c", "1", "--count", "3"])
    assert code == 0 and err == ""
    assert len(json.loads(out)) == 3
    code, _, err = qcu.run_cli(["roots", "--L", "0", "--c", "1"])
    assert code == 2
    assert json.loads(err)["error"]["field"] == "L"
