import numpy as np
import pytest

from varwit import (
    BoundResult,
    PureState,
    RegionBoundary,
    WeightedPair,
    certified_bound,
    compose_sep_bound,
    eig_hermitian,
    expectation,
    grid_bound,
    penalty_operator,
    seesaw_bound,
    sep_bound_curve,
    spin1_components,
    spin1_moment_pairs,
    trace_region,
    variance_functional,
)
from helpers import random_pure


def spin1_pair(lam, mu, alpha=0.0):
    x, y = spin1_moment_pairs(alpha)
    return WeightedPair(lam, mu, x, y)


def test_weighted_pair_validation():
    x, y = spin1_moment_pairs(0.0)
    with pytest.raises(ValueError):
        WeightedPair(-0.1, 0.5, x, y)
    with pytest.raises(ValueError):
        WeightedPair(0.0, 0.0, x, y)


def test_penalty_single_observable_eigenstate():
    pair = spin1_pair(1.0, 0.0)
    pen = penalty_operator(pair, 1.0, 0.0)
    lx, _, _ = spin1_components()
    expected = (lx.entries - np.eye(3)) @ (lx.entries - np.eye(3))
    assert np.max(np.abs(pen.entries - expected)) < 1e-12
    assert abs(np.linalg.eigvalsh(pen.entries)[0]) < 1e-12


def test_penalty_at_zero_means_is_half_moment_sum():
    lx, ly, _ = spin1_components()
    expected = 0.5 * (lx.entries @ lx.entries + ly.entries @ ly.entries)
    for alpha in (0.0, 0.2):
        pen = penalty_operator(spin1_pair(0.5, 0.5, alpha), 0.0, 0.0)
        assert np.max(np.abs(pen.entries - expected)) < 1e-12
        assert abs(np.linalg.eigvalsh(pen.entries)[0] - 0.5) < 1e-12


def test_penalty_dominates_functional():
    rng = np.random.default_rng(2)
    pair = spin1_pair(0.6, 0.4, 0.2)
    for _ in range(100):
        psi = random_pure(rng, 3)
        x_bar, y_bar = rng.normal(size=2)
        pen = expectation(psi, penalty_operator(pair, x_bar, y_bar))
        val = variance_functional(pair, psi)
        assert pen >= val - 1e-10
        # equality exactly at the state's own first-moment expectations
        mx = expectation(psi, pair.x.first)
        my = expectation(psi, pair.y.first)
        tight = expectation(psi, penalty_operator(pair, mx, my))
        assert abs(tight - val) < 1e-10


def test_seesaw_single_observable_reaches_zero():
    res = seesaw_bound(spin1_pair(1.0, 0.0))
    assert res.converged
    assert res.method == "seesaw"
    assert abs(res.value) < 1e-9


def test_seesaw_noiseless_local_bound():
    res = seesaw_bound(spin1_pair(1.0, 1.0))
    assert res.converged
    assert abs(res.value - 7.0 / 16.0) < 1e-6


def test_seesaw_noisy_local_bound():
    res = seesaw_bound(spin1_pair(1.0, 1.0, 0.2))
    assert res.converged
    assert abs(res.value - 0.7614) < 2e-3


def test_seesaw_minimizer_reproduces_value():
    for lam in (0.3, 0.5, 0.8):
        pair = spin1_pair(lam, 1.0 - lam, 0.2)
        res = seesaw_bound(pair)
        assert abs(variance_functional(pair, res.minimizer) - res.value) < 1e-8


def test_seesaw_history_is_monotone_descent():
    res = seesaw_bound(spin1_pair(0.5, 0.5), record_history=True)
    assert res.history is not None
    diffs = np.diff(np.array(res.history))
    assert np.all(diffs <= 1e-12)


def test_grid_single_observable():
    res = grid_bound(spin1_pair(1.0, 0.0), grid_n=101, polish=False)
    assert res.method == "grid"
    assert res.value < 1e-4


def test_grid_polished_noiseless_bound():
    res = grid_bound(spin1_pair(1.0, 1.0), grid_n=201)
    assert res.method == "grid_refined"
    assert abs(res.value - 0.4375) < 1e-5


def test_grid_full_noise_diagonal_case():
    # at alpha=1 the first moments vanish, so the optimum sits at means
    # (0, 0) where the penalty is L_X^2 + L_Y^2 = diag(1, 2, 1)
    res = grid_bound(spin1_pair(1.0, 1.0, 1.0), grid_n=51)
    assert abs(res.value - 1.0) < 1e-9
    assert abs(res.means[0]) < 1e-12 and abs(res.means[1]) < 1e-12


def test_grid_requires_minimum_resolution():
    with pytest.raises(ValueError):
        grid_bound(spin1_pair(0.5, 0.5), grid_n=9)


def test_certified_bound_is_certified():
    res = certified_bound(spin1_pair(0.5, 0.5, 0.2))
    assert res.converged or res.method in ("grid", "grid_refined")


def test_compose_sep_bound_sums_locals():
    local = seesaw_bound(spin1_pair(0.5, 0.5))
    assert abs(compose_sep_bound(local, local) - 7.0 / 16.0) < 1e-6
    trivial = seesaw_bound(spin1_pair(1.0, 0.0))
    assert abs(compose_sep_bound(local, trivial) - local.value) < 1e-9


def test_compose_sep_bound_rejects_uncertified():
    local = seesaw_bound(spin1_pair(0.5, 0.5))
    stalled = BoundResult(
        value=local.value,
        minimizer=local.minimizer,
        means=local.means,
        iterations=500,
        converged=False,
        method="seesaw",
    )
    with pytest.raises(ValueError):
        compose_sep_bound(local, stalled)


def test_oracle_agreement_smoke():
    for alpha in (0.0, 0.2):
        for lam in (0.25, 0.5, 0.75):
            pair = spin1_pair(lam, 1.0 - lam, alpha)
            s = seesaw_bound(pair)
            g = grid_bound(pair, grid_n=201)
            assert abs(s.value - g.value) < 1e-4


def test_lower_bound_soundness_random_states():
    rng = np.random.default_rng(21)
    for alpha in (0.0, 0.2):
        pair = spin1_pair(0.5, 0.5, alpha)
        res = seesaw_bound(pair)
        for _ in range(300):
            psi = random_pure(rng, 3)
            assert variance_functional(pair, psi) >= res.value - 1e-9


def test_noise_raises_local_bound():
    for lam in np.linspace(0.1, 0.9, 9):
        b0 = certified_bound(spin1_pair(lam, 1.0 - lam, 0.0))
        b2 = certified_bound(spin1_pair(lam, 1.0 - lam, 0.2))
        assert b2.value >= b0.value - 1e-9


def test_weight_scaling_homogeneity():
    pair1 = spin1_pair(0.37, 0.63)
    pair3 = spin1_pair(3 * 0.37, 3 * 0.63)
    s1 = seesaw_bound(pair1)
    s3 = seesaw_bound(pair3)
    assert abs(s3.value - 3.0 * s1.value) < 1e-8
    g1 = grid_bound(pair1, grid_n=101, polish=False)
    g3 = grid_bound(pair3, grid_n=101, polish=False)
    assert abs(g3.value - 3.0 * g1.value) < 1e-12


def test_trace_region_validates_lambdas():
    x, y = spin1_moment_pairs(0.0)
    with pytest.raises(ValueError):
        trace_region(x, y, [0.5, 0.3])
    with pytest.raises(ValueError):
        trace_region(x, y, [0.0, 0.5])


def test_trace_region_endpoint_approaches_known_corner():
    x, y = spin1_moment_pairs(0.0)
    reg = trace_region(x, y, [0.999])
    dx, dy = reg.points[0]
    assert dx < 1e-4
    assert abs(dy - 0.5) < 1e-3


def test_trace_region_supporting_lines():
    x, y = spin1_moment_pairs(0.2)
    lams = list(np.linspace(0.1, 0.9, 9))
    reg = trace_region(x, y, lams)
    assert all(reg.converged)
    for dx, dy in reg.points:
        for lam, c in zip(reg.lambdas, reg.bounds):
            assert lam * dx + (1 - lam) * dy >= c - 1e-8


def test_trace_region_symmetric_weight_has_mirrored_twin():
    # the lambda = 1/2 supporting line touches the boundary at two
    # mirror-image points; swapping the measurement roles returns the twin
    x, y = spin1_moment_pairs(0.0)
    fwd = trace_region(x, y, [0.5])
    rev = trace_region(y, x, [0.5])
    dx, dy = fwd.points[0]
    rdy, rdx = rev.points[0]
    assert abs(dx - rdy) < 1e-6 and abs(dy - rdx) < 1e-6
    assert abs(fwd.bounds[0] - rev.bounds[0]) < 1e-9
    assert abs((dx + dy) / 2.0 - 7.0 / 32.0) < 1e-8


def test_trace_region_flags_stalled_points():
    x, y = spin1_moment_pairs(0.0)
    reg = trace_region(x, y, [0.4, 0.6], max_iter=1)
    assert len(reg.points) == 2
    assert not any(reg.converged)


def test_region_boundary_rejects_undercut_point():
    with pytest.raises(ValueError):
        RegionBoundary(
            points=((0.0, 0.0),),
            lambdas=(0.5,),
            bounds=(1.0,),
            converged=(True,),
        )


def test_noisy_region_lies_outside_noiseless_region():
    x0, y0 = spin1_moment_pairs(0.0)
    x2, y2 = spin1_moment_pairs(0.2)
    lams = list(np.linspace(0.1, 0.9, 9))
    base = trace_region(x0, y0, lams)
    noisy = trace_region(x2, y2, lams)
    # each noisy boundary point satisfies every noiseless supporting line
    for dx, dy in noisy.points:
        for lam, c in zip(base.lambdas, base.bounds):
            assert lam * dx + (1 - lam) * dy >= c - 1e-8


def test_sep_bound_curve_composes_two_parties():
    x, y = spin1_moment_pairs(0.0)
    lams, values = sep_bound_curve(x, y, num=21)
    assert len(lams) == 21 and len(values) == 21
    mid = values[10]
    assert abs(mid - 7.0 / 16.0) < 1e-6
    local = certified_bound(WeightedPair(lams[10], 1 - lams[10], x, y))
    assert abs(mid - 2.0 * local.value) < 1e-9


def test_bound_result_rejects_negative_value():
    psi = PureState(np.array([1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        BoundResult(
            value=-1e-6,
            minimizer=psi,
            means=(0.0, 0.0),
            iterations=1,
            converged=True,
            method="seesaw",
        )
    with pytest.raises(ValueError):
        BoundResult(
            value=0.1,
            minimizer=psi,
            means=(0.0, 0.0),
            iterations=1,
            converged=True,
            method="newton",
        )
