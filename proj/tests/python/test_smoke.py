"""Smoke tests for the compiled extension."""

import math

import pytest

wavesyn = pytest.importorskip("wavesyn")


def test_transform_round_trip():
    f = [1.0, 4.0, 5.0, 6.0]
    c = wavesyn.transform(f)
    assert c[0] == pytest.approx(8.0)
    assert c[1] == pytest.approx(-3.0)
    back = wavesyn.inverse(c)
    assert back == pytest.approx(f)


def test_greedy_and_errors():
    f = [1.0, 4.0, 5.0, 6.0]
    rep = wavesyn.greedy(f, B=1, p=wavesyn.INF)
    [(flat, value)] = rep.terms
    assert flat == 1
    assert value == pytest.approx(8.0)
    assert rep.error == pytest.approx(3.0)
    recon = rep.reconstruct()
    assert recon == pytest.approx([4.0, 4.0, 4.0, 4.0])
    assert wavesyn.lp_error(f, recon, wavesyn.INF) == pytest.approx(3.0)


def test_fptas_guarantee():
    f = [1.0, 4.0, 5.0, 6.0]
    rep = wavesyn.fptas(f, B=1, p=wavesyn.INF, eps=0.05)
    assert 2.5 - 1e-9 <= rep.error <= 2.625 + 1e-9
    opt = wavesyn.oracle(f, B=1, p=wavesyn.INF)
    assert rep.error <= 1.05 * opt + 1e-6


def test_rest_and_hybrid():
    f = [1.0, 4.0, 5.0, 6.0]
    assert wavesyn.rest_optimal(f, B=1, p=wavesyn.INF).error == pytest.approx(3.0)
    hy = wavesyn.hybrid(f, B=1, p=wavesyn.INF, eps=0.05)
    assert 2.5 - 1e-9 <= hy.error <= 3.0 + 1e-9


def test_weighted():
    f = [1.0, 0.0]
    w = [0.5, 0.5]
    assert wavesyn.lp_error(f, [0.0, 0.0], 1.0, weights=w) == pytest.approx(0.5)


def test_universal_and_saw():
    saw = wavesyn.gen_saw(64, 8)
    assert saw[:8] == list(range(8))
    uni = wavesyn.universal(saw, B=4)
    L = 6
    assert len(uni.terms) <= 4 * L * L + 4


def test_best_basis():
    f = [3.0] * 8
    cut = wavesyn.best_basis(f, B=1, p=wavesyn.INF)
    assert cut["error"] == pytest.approx(0.0, abs=1e-9)


def test_greedy2d():
    img = [[1.0, 2.0], [3.0, 4.0]]
    err, recon = wavesyn.greedy2d(img, B=4, p=2.0)
    assert err == pytest.approx(0.0, abs=1e-9)
    assert recon[1][0] == pytest.approx(3.0)


def test_validation_errors():
    with pytest.raises(ValueError):
        wavesyn.greedy([1.0, 2.0], B=5, p=2.0)
    with pytest.raises(ValueError):
        wavesyn.transform([1.0, 2.0, 3.0])
    assert math.isinf(wavesyn.INF)
