import math

import numpy as np
import pytest

from sectoria.constants import (
    FACTOR_IDS,
    LOG_DOMAIN_IDS,
    BoundContext,
    bound_factor,
    joint_bounds,
    kantorovich,
    spectral_bounds,
)
from sectoria.errors import NotPSDError


@pytest.mark.parametrize("h, expected", [(1, 1.0), (2, 1.125), (4, 1.5625)])
def test_kantorovich_values(h, expected):
    assert kantorovich(h) == expected


def test_kantorovich_rejects_small_h():
    with pytest.raises(ValueError):
        kantorovich(0.5)


def test_kantorovich_monotone():
    grid = np.linspace(1, 50, 2000)
    K = np.array([kantorovich(h) for h in grid])
    assert K[0] == 1 and np.all(K[1:] > 1) and np.all(np.diff(K) > 0)


def test_spectral_bounds():
    assert spectral_bounds(np.eye(3)) == (1.0, 1.0)
    assert spectral_bounds(np.diag([2.0, 5.0])) == pytest.approx((2.0, 5.0))
    assert joint_bounds(np.diag([2.0, 5.0]), np.diag([1.0, 3.0])) == pytest.approx((1.0, 5.0))
    with pytest.raises(NotPSDError):
        spectral_bounds(np.diag([1.0, -1.0]))


def test_context_invariants():
    ctx = BoundContext(2.0, 5.0, 0.3)
    assert ctx.h == 2.5 and ctx.K >= 1 and ctx.sec >= 1
    with pytest.raises(ValueError):
        BoundContext(2.0, 1.0)
    with pytest.raises(ValueError):
        BoundContext(1.0, 2.0, math.pi / 2)


def test_factor_examples():
    assert bound_factor("theorem26_i", BoundContext(1.0, 1.0, 0.0)) == 1.0
    for h in (1.0, 2.0, 7.3):
        ctx = BoundContext(1.0, h, math.pi / 4)
        assert bound_factor("sv_upper", ctx) == 8 * kantorovich(h)
    det = bound_factor("det20", BoundContext(1.0, 1.0, math.pi / 4), n=2)
    assert det == pytest.approx(math.log(32), abs=1e-14)
    with pytest.raises(KeyError):
        bound_factor("nope", BoundContext(1.0, 1.0))


@pytest.mark.parametrize("alpha", [0.0, 0.4, 1.1])
@pytest.mark.parametrize("h", [1.0, 3.0])
def test_factor_formulas(alpha, h):
    ctx = BoundContext(0.5, 0.5 * h, alpha)
    s, K, n = 1 / math.cos(alpha), kantorovich(h), 3
    expected = {
        "theorem26_i": s ** 8 * K ** 2, "theorem26_ii": K ** -2 * s ** -8,
        "det20": n * (5 * math.log(s) + math.log(K)), "det21": n * (-5 * math.log(s) - math.log(K)),
        "det_proposition": n * (4 * math.log(s) - math.log(2)), "det_note": 3 * n * math.log(s),
        "sv_upper": s ** 6 * K, "sv_lower": s ** -6 / K,
        "norm_upper": s ** 5 * K, "norm_lower": s ** -5 / K, "norm_proposition": s ** 5 / 2,
        "tan_xie_lower": s ** -2, "tan_xie_upper": s ** 2,
    }
    assert set(expected) == set(FACTOR_IDS)
    for rid, val in expected.items():
        assert bound_factor(rid, ctx, n) == pytest.approx(val, rel=1e-13, abs=1e-14), rid
    assert LOG_DOMAIN_IDS == {"det20", "det21", "det_proposition", "det_note"}


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.2])
def test_theorem_factors_are_reciprocal(alpha):
    ctx = BoundContext(0.3, 2.0, alpha)
    prod = bound_factor("theorem26_i", ctx) * bound_factor("theorem26_ii", ctx)
    assert prod == pytest.approx(1.0, rel=1e-13)


def test_precursor_scalar_inequality():
    for m, M in [(0.1, 1.0), (1.0, 1.0), (0.5, 40.0)]:
        x = np.linspace(m, M, 1001)
        assert np.all(x + M * m / x <= M + m + 1e-12 * (M + m))
