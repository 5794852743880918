import math

import numpy as np
import pytest

import terraced as t


def test_sequence_basics():
    c = t.Sequence.cesaro()
    assert c(0) == 1 and c(3) == pytest.approx(0.25)
    f = t.Sequence.finite([1, 2j])
    assert f.support_end == 2 and f(5) == 0
    m = t.Sequence.moments([(1.0, 0.5)])
    assert m(2) == pytest.approx(0.25)
    assert t.Sequence.custom("sq", lambda k: 1 / (k + 1) ** 2)(1) == pytest.approx(0.25)


def test_truncation_and_svd():
    two = t.Sequence.finite([1, 1])
    r = t.truncate_rhaly(two, 2)
    assert np.allclose(r, [[1, 0], [1, 1]])
    sv = t.singular_values(r)
    assert sv[0] == pytest.approx((1 + math.sqrt(5)) / 2)
    assert sv[1] == pytest.approx((math.sqrt(5) - 1) / 2)
    g = t.gram_lshape(two, 3)
    r3 = t.truncate_rhaly(two, 3)
    assert np.allclose(g, r3.conj().T @ r3)
    assert t.apply_rhaly(two, [1, 1, 1]) == [1, 2, 0]


def test_interval_example():
    rep = t.interval_report(t.Sequence.finite([1, 1]), 0, 1)
    assert rep["L"] == pytest.approx(1.0)
    assert rep["K"] == pytest.approx(1 / math.sqrt(2))
    assert rep["J"] == pytest.approx(1.0)


def test_cesaro_criteria():
    j0 = t.J_n(t.Sequence.cesaro(), 0)
    target = math.pi / math.sqrt(6)
    assert j0["lo"] <= target <= j0["hi"]
    rep = t.criteria_report(t.Sequence.cesaro(), q=[2.0])
    assert rep["bounded"] == "yes"
    assert rep["compact"] == "no"
    assert rep["schatten"][0]["verdict"] == "no"


def test_eps_l_and_spectral():
    s = t.eps_l(t.Sequence.finite([1, 1]), 0.5)
    assert s["c"] == [0, 2] and s["status"] == "finite(1)"
    rep = t.spectral_report(t.Sequence.finite([1, 1]), n_max=2, q=[2.0], schedule=[4, 8])
    assert rep["schatten_qnorm"][0]["bracket"]["lo"] == pytest.approx(math.sqrt(3))


def test_custom_sequence_through_threads():
    spec = t.Sequence.custom("inv", lambda k: 1.0 / (k + 1))
    rep = t.spectral_report(spec, n_max=1, q=[2.0], schedule=[16, 32])
    assert t.as_float(rep["schatten_qnorm"][0]["bracket"]["hi"]) == math.inf


def test_multiplier_and_verify():
    rep = t.multiplier_report(t.Sequence.power(0.0), q=[2.0])
    assert (rep["bounded"], rep["compact"]) == ("yes", "no")
    assert t.eigen_check(t.Sequence.finite([1, 0.5, 0.25]), 1, 3) == 0.0
    assert t.verify(7, 10)["ok"]


def test_errors():
    with pytest.raises(ValueError):
        t.zeta_bracket(1.0)
    with pytest.raises(ValueError):
        t.eps_l(t.Sequence.finite([1]), 0.0)
