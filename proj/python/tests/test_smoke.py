import json
import math

import pytest

import qbell

HALF = math.sqrt(0.5)


def test_singlet_bound_and_optimizer():
    psi = qbell.PureState([0, HALF, -HALF, 0])
    report = qbell.bell_bound(psi)
    assert report["gamma_bound"] == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    result = qbell.maximize_bell(psi, restarts=8)
    assert result["gamma_star"] == pytest.approx(2 * math.sqrt(2), abs=1e-8)
    assert len(result["settings"]["a"]) == 1


def test_wen_four_site_bound():
    psi = qbell.wen_plaquette_state(4, 0)
    report = qbell.bell_bound(psi)
    assert report["gamma_bound"] == pytest.approx(4 * math.sqrt(2), abs=1e-10)
    assert report["gram_eigenvalues"] == pytest.approx([4, 4, 1], abs=1e-12)


def test_concurrences():
    bell = qbell.PureState([HALF, 0, 0, HALF])
    assert qbell.concurrence(bell, [1]) == pytest.approx(1, abs=1e-12)
    assert qbell.wootters_concurrence(bell.density()) == pytest.approx(1, abs=1e-12)
    family = qbell.wen_plaquette_6_family(1, 0.8, 0.6)
    assert qbell.concurrence(family, [5, 6], delta=2) == pytest.approx(0.96, abs=1e-12)


def test_entropy_and_tee():
    bell = qbell.PureState([HALF, 0, 0, HALF])
    rho = qbell.reduced_density(bell, [1])
    assert qbell.von_neumann_entropy(rho) == pytest.approx(math.log(2), abs=1e-12)
    assert qbell.entropy_from_gamma(6, 2) == pytest.approx(2 * math.log(2), abs=1e-12)
    fit = qbell.area_law_fit([(4, math.log(2)), (6, 2 * math.log(2))])
    assert fit["s_tee"] == pytest.approx(math.log(2), abs=1e-12)
    assert fit["d_quasi"] == pytest.approx(4, abs=1e-9)


def test_xy_critical_temperature():
    tc = qbell.xy_critical_temperature(1, 0, 0, 0)
    assert tc == pytest.approx(1 / math.asinh(1), rel=1e-6)
    assert qbell.xy_critical_temperature(0, 0, 1, 0) is None


def test_state_json_round_trip():
    psi = qbell.ghz2n_state(2, HALF, HALF)
    back = qbell.load_state(psi.to_json())
    assert back.amplitudes == psi.amplitudes
    doc = json.loads(qbell.xy_thermal(1, 0.5, 0, 0, 0.7).to_json())
    assert doc["kind"] == "density"


def test_errors_map_to_python_exceptions():
    with pytest.raises(qbell.ValidationError):
        qbell.PureState([0, 0])
    with pytest.raises(qbell.DomainError):
        qbell.lambda_from_gamma(7)
    with pytest.raises(qbell.Error):
        qbell.f_alpha(1, 0.5)


def test_acceptance_subset():
    results = qbell.run_acceptance(0, [1, 4])
    assert [r["passed"] for r in results] == [True, True]
