import math

import numpy as np
import pytest

import majorlab


def test_eigenvalues_and_power():
    a = np.diag([4.0, 1.0, 9.0]).astype(complex)
    assert majorlab.eigenvalues(a) == pytest.approx([9.0, 4.0, 1.0])
    r = majorlab.fractional_power(a, 0.5)
    assert np.allclose(r, np.diag([2.0, 1.0, 3.0]))


def test_geometric_mean_matches_numpy():
    a = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
    b = np.diag([1.0, 3.0]).astype(complex)
    w, v = np.linalg.eigh(a)
    rh = v @ np.diag(np.sqrt(w)) @ v.conj().T
    ri = np.linalg.inv(rh)
    w2, v2 = np.linalg.eigh(ri @ b @ ri)
    ref = rh @ (v2 @ np.diag(np.sqrt(w2)) @ v2.conj().T) @ rh
    assert np.allclose(majorlab.weighted_geometric(a, b, 0.5), ref, atol=1e-12)
    m, route = majorlab.mean(a, b, "geometric")
    assert route == "direct"
    assert np.allclose(m, ref, atol=1e-12)


def test_compound_and_singular_values():
    c = majorlab.compound(np.diag([1.0, 2.0, 3.0]).astype(complex), 2)
    assert np.allclose(np.diag(c).real, [2.0, 3.0, 6.0])
    x = np.array([[3.0, 0.0], [4.0, 0.0]], dtype=complex)
    assert majorlab.singular_values(x) == pytest.approx([5.0, 0.0], abs=1e-14)


def test_majorize_report():
    assert majorlab.majorize([2, 1], [3, 1])["verdict"] == "holds"
    assert majorlab.majorize([3, 1], [2, 1])["verdict"] == "fails"
    with pytest.raises(ValueError):
        majorlab.majorize([1], [1], order="bogus")


def test_suite_and_explorer():
    assert "thm-3.1" in majorlab.suite_ids()
    r = majorlab.run_suite("thm-3.1", trials=10)
    assert r["failures"] == 0
    scan = majorlab.pauli_scan(0.7, 0.7, 1.0, steps=50)
    assert not scan["violation"]
    assert scan["log_g"][10] == pytest.approx(0.7 * scan["grid"][10], rel=1e-12)
    rep = majorlab.search("product", budget=50, identity_only=True)
    assert rep["evaluations"] + rep["skipped"] <= 50
    assert math.isfinite(rep["worst_margin"])
