"""Local measurement noise as mixture-of-unitaries channels.

Noise acts in the Heisenberg (dual) picture: channels transform POVM
elements and moment operators while states stay untouched. The spin-flip
family used throughout contracts first moments by (1 - alpha) and leaves
second moments alone, which is what makes noise-adapted bounds worth
computing in the first place.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .operators import (
    HermitianOperator,
    MomentPair,
    Povm,
    PureState,
    _matrix_from_json,
    _matrix_to_json,
    moment_pair,
    projective_povm,
    spin1_components,
)

UNITARITY_TOL = 1e-10
PROB_TOL = 1e-12

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - np.sqrt(5.0)) / 2.0


@dataclass(frozen=True, eq=False)
class NoiseChannel:
    """A mixture of unitaries (p_k, U_k), applied to operators as sum p_k U_k^dag A U_k.

    Branches with zero probability are dropped at construction so that
    dual application touches only live terms. The branch list could be
    extended to general Kraus operators later; nothing here needs that.
    """

    branches: Tuple[Tuple[float, np.ndarray], ...]

    def __post_init__(self):
        cleaned: List[Tuple[float, np.ndarray]] = []
        dims = set()
        total = 0.0
        for p, u in self.branches:
            p = float(p)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"branch probability {p!r} outside [0, 1]")
            total += p
            if p == 0.0:
                continue
            mat = np.array(np.asarray(u, dtype=complex))
            if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
                raise ValueError(f"branch unitary has shape {mat.shape}")
            defect = float(np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0]))))
            if defect > UNITARITY_TOL:
                raise ValueError(f"branch matrix is not unitary: max defect {defect:.3e}")
            dims.add(mat.shape[0])
            mat.flags.writeable = False
            cleaned.append((p, mat))
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"branch probabilities sum to {total!r}, expected 1")
        if not cleaned:
            raise ValueError("channel needs at least one branch with positive probability")
        if len(dims) != 1:
            raise ValueError(f"branch unitaries have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "branches", tuple(cleaned))

    @property
    def dim(self) -> int:
        return self.branches[0][1].shape[0]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "branches": [{"p": p, "unitary": _matrix_to_json(u)} for p, u in self.branches],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NoiseChannel":
        branches = tuple(
            (float(b["p"]), _matrix_from_json(b["unitary"])) for b in data["branches"]
        )
        chan = cls(branches)
        if "dim" in data and int(data["dim"]) != chan.dim:
            raise ValueError("dim field does not match branch unitaries")
        return chan


@dataclass(frozen=True)
class NoiseFitResult:
    """Least-squares noise estimate from calibration data."""

    alpha: float
    residual: float
    per_state_residuals: Tuple[float, ...]

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha {self.alpha!r} outside [0, 1]")
        if abs(self.residual - sum(self.per_state_residuals)) > 1e-12:
            raise ValueError("residual does not equal the sum of per-state residuals")


def dual_apply(channel: NoiseChannel, op: HermitianOperator) -> HermitianOperator:
    """Heisenberg-picture action sum_k p_k U_k^dag op U_k.

    Unital and positivity preserving by construction; the output stays
    Hermitian, so it feeds straight back into moment arithmetic.
    """
    if channel.dim != op.dim:
        raise ValueError(f"channel dim {channel.dim} does not match operator dim {op.dim}")
    acc = np.zeros((op.dim, op.dim), dtype=complex)
    for p, u in channel.branches:
        acc += p * (u.conj().T @ op.entries @ u)
    return HermitianOperator(acc)


def noisy_povm(channel: NoiseChannel, povm: Povm) -> Povm:
    """Elementwise dual action on a POVM; outcome labels are untouched."""
    if channel.dim != povm.dim:
        raise ValueError(f"channel dim {channel.dim} does not match POVM dim {povm.dim}")
    return Povm(povm.outcomes, tuple(dual_apply(channel, e) for e in povm.elements))


def spin_flip_channel(alpha: float) -> NoiseChannel:
    """Spin flip with probability alpha/2: branches (1-alpha/2, I), (alpha/2, diag(-1,1,-1)).

    The flip unitary is the pi rotation about Z, which negates L_X and
    L_Y; the dual channel therefore contracts their first moments by
    (1-alpha) and fixes the second moments.
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha {alpha!r} outside [0, 1]")
    flip = np.diag([-1.0, 1.0, -1.0]).astype(complex)
    return NoiseChannel(((1.0 - alpha / 2.0, np.eye(3, dtype=complex)), (alpha / 2.0, flip)))


def spin1_moment_pairs(alpha: float = 0.0) -> Tuple[MomentPair, MomentPair]:
    """Moment pairs of the spin-1 L_X, L_Y measurements under spin-flip noise.

    Built the honest way, channel acting on the projective POVMs, so the
    result is exactly what a caller assembling the pipeline by hand would
    get.
    """
    lx, ly, _ = spin1_components()
    channel = spin_flip_channel(alpha)
    pair_x = moment_pair(noisy_povm(channel, projective_povm(lx)))
    pair_y = moment_pair(noisy_povm(channel, projective_povm(ly)))
    return pair_x, pair_y


def _golden_section(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Golden-section minimum of a unimodal f on [a, b] to width tol."""
    h = b - a
    if h <= tol:
        return (a + b) / 2.0
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INVPHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
    return (a + b) / 2.0


def fit_alpha(
    calibration: Sequence[Tuple[PureState, float]],
    weights: Tuple[float, float] = (0.5, 0.5),
    model: Callable[[float], NoiseChannel] = spin_flip_channel,
    scan_points: int = 10001,
    refine_tol: float = 1e-6,
) -> NoiseFitResult:
    """Least-squares fit of the noise parameter from calibration sweeps.

    Args:
        calibration: (state, measured V) pairs; V is the weighted variance
            sum of the noisy L_X, L_Y measurements in that state.
        weights: (lambda, mu) used in the model V, the plotted calibration
            quantity uses 1/2, 1/2.
        model: channel family alpha -> NoiseChannel.
        scan_points: grid size of the initial scan over [0, 1]; 10001
            points gives resolution 1e-4.
        refine_tol: golden-section refinement width around the scan
            minimum.

    Returns:
        The fitted alpha with its residual breakdown. The fit always
        returns the scan minimum; there is no failure mode.

    The model V is evaluated by dual-applying the channel to the ideal
    moment operators, which equals the moments of the noisy POVM by
    linearity of the channel.
    """
    if not calibration:
        raise ValueError("calibration data is empty")
    lam, mu = float(weights[0]), float(weights[1])
    lx, ly, _ = spin1_components()
    ideal_x = moment_pair(projective_povm(lx))
    ideal_y = moment_pair(projective_povm(ly))
    states = np.array([s.amplitudes for s, _ in calibration])
    measured = np.array([float(v) for _, v in calibration])
    if not np.all(np.isfinite(measured)):
        raise ValueError("measured values must be finite")

    ideal_ops = np.stack(
        [ideal_x.first.entries, ideal_x.second.entries,
         ideal_y.first.entries, ideal_y.second.entries]
    )
    conj = states.conj()

    def model_values(alpha: float) -> np.ndarray:
        # One fused contraction over branches keeps the 10001-point scan
        # from paying object-construction costs four times per grid point.
        channel = model(alpha)
        probs = np.array([p for p, _ in channel.branches])
        us = np.stack([u for _, u in channel.branches])
        duals = np.einsum("b,bji,kjl,blm->kim", probs, us.conj(), ideal_ops, us)
        ex1, ex2, ey1, ey2 = np.einsum("nd,kde,ne->kn", conj, duals, states).real
        return lam * (ex2 - ex1**2) + mu * (ey2 - ey1**2)

    def loss(alpha: float) -> float:
        return float(np.sum((model_values(alpha) - measured) ** 2))

    grid = np.linspace(0.0, 1.0, scan_points)
    losses = np.array([loss(a) for a in grid])
    # ties resolve to the smaller alpha because argmin takes the first hit
    best = int(np.argmin(losses))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, scan_points - 1)]
    alpha_hat = _golden_section(loss, float(lo), float(hi), refine_tol)
    if loss(alpha_hat) > losses[best]:
        alpha_hat = float(grid[best])
    per_state = (model_values(alpha_hat) - measured) ** 2
    return NoiseFitResult(
        alpha=float(alpha_hat),
        residual=float(np.sum(per_state)),
        per_state_residuals=tuple(float(r) for r in per_state),
    )
