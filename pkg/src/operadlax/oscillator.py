"""Harmonic oscillator flows, Lax matrices, and auxiliary phase-space functions.

The Hamiltonian H(q, p) = (p^2 + w^2 q^2) / 2 generates dq/dt = p,
dp/dt = -w^2 q.  Both the closed-form flow and a fixed-step RK4 integrator
are provided; the classical Lax pair

    L = [[p, w q], [w q, -p]],   M = (w/2) [[0, -1], [1, 0]]

satisfies dL/dt = ML - LM along the flow (checked by finite differences,
never assumed).

The auxiliary functions A+, A-, D+, D- are defined implicitly by

    A+^2 + A-^2 = 2 sqrt(2H),  A+^2 - A-^2 = 2p,  A+ A- = w q,
    D+ = (A+/2)(A+^2 - 3 A-^2),  D- = (A-/2)(3 A+^2 - A-^2),

equivalently D+ + i D- = (A+ + i A-)^3 / 2.  The algebraic system fixes
(A+, A-) only up to a global sign; two evaluations are provided:

* ``aux_algebraic``  - pointwise principal branch, A+ >= 0 (non-smooth on
  the half-line q = 0, p < 0 where A+ hits zero);
* ``aux_exact_flow`` - the smooth dynamic continuation from a t = 0 seed,
  which rotates (A+, A-) at frequency w/2 and (D+, D-) at 3w/2 and is
  4*pi/w periodic (it crosses sign, so it can differ from the pointwise
  branch by an overall sign at later times).

The rotation laws are exactly the vanishing of the residuals

    G(A)+- = dA+-/dt +- (w/2) A-+,   G(D)+- = dD+-/dt +- (3w/2) D-+,

computed by ``g_residuals`` with central differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .multilinear import Operation

__all__ = [
    "OscState",
    "AuxValues",
    "IntegrationError",
    "hamiltonian",
    "hamilton_rhs",
    "exact_flow",
    "rk4_path",
    "rk4_integrate",
    "lax_matrices",
    "classical_lax_residual",
    "aux_algebraic",
    "aux_exact_flow",
    "aux_rhs",
    "g_residuals",
    "g_residuals_along",
]


class IntegrationError(RuntimeError):
    """A trajectory produced a non-finite state."""


@dataclass(frozen=True)
class OscState:
    """Phase-space point (q, p) with fixed angular frequency omega > 0."""

    q: float
    p: float
    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise ValueError(f"non-finite state (q, p) = ({self.q}, {self.p})")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be positive and finite, got {self.omega}")


@dataclass(frozen=True)
class AuxValues:
    """The quadruple (A+, A-, D+, D-); also used for their time rates."""

    a_plus: float
    a_minus: float
    d_plus: float
    d_minus: float


def hamiltonian(s: OscState) -> float:
    return 0.5 * (s.p * s.p + s.omega * s.omega * s.q * s.q)


def hamilton_rhs(s: OscState) -> tuple[float, float]:
    """(dq/dt, dp/dt) = (p, -omega^2 q)."""
    return (s.p, -s.omega * s.omega * s.q)


def exact_flow(s0: OscState, t: float) -> OscState:
    """Closed-form solution: rotation of (q, p/omega) at frequency omega."""
    w = s0.omega
    c, s = math.cos(w * t), math.sin(w * t)
    return OscState(s0.q * c + (s0.p / w) * s, s0.p * c - w * s0.q * s, w)


def rk4_path(rhs: Callable[[np.ndarray], np.ndarray], y0, t_end: float, steps: int):
    """Classical fixed-step RK4 for an autonomous system dy/dt = rhs(y).

    Returns (ts, ys) with ts of length steps+1 including t = 0 and ys of
    shape (steps+1, len(y0)).  Raises IntegrationError naming the step at
    the first non-finite state.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if not math.isfinite(t_end):
        raise ValueError(f"t_end must be finite, got {t_end}")
    y = np.asarray(y0, dtype=float)
    h = t_end / steps
    ts = np.linspace(0.0, t_end, steps + 1)
    ys = np.empty((steps + 1, y.size))
    ys[0] = y
    for k in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        if not np.isfinite(y).all():
            raise IntegrationError(
                f"non-finite state at step {k + 1} (t = {ts[k + 1]:.6g})"
            )
        ys[k + 1] = y
    return ts, ys


def rk4_integrate(s0: OscState, t_end: float, steps: int):
    """RK4 trajectory of Hamilton's equations; list of (t, OscState) samples."""
    w2 = s0.omega * s0.omega

    def rhs(y):
        return np.array([y[1], -w2 * y[0]])

    ts, ys = rk4_path(rhs, [s0.q, s0.p], t_end, steps)
    return [
        (float(t), OscState(float(q), float(p), s0.omega))
        for t, (q, p) in zip(ts, ys)
    ]


def lax_matrices(s: OscState) -> tuple[Operation, Operation]:
    """(L, M) as degree-1 operations on R^2.

    L is symmetric and traceless with tr(L^2) = 4H; M is the constant
    antisymmetric generator (omega/2) [[0, -1], [1, 0]].
    """
    wq = s.omega * s.q
    L = Operation(2, 1, np.array([[s.p, wq], [wq, -s.p]]))
    M = Operation(2, 1, 0.5 * s.omega * np.array([[0.0, -1.0], [1.0, 0.0]]))
    return L, M


def classical_lax_residual(s0: OscState, t: float, h_fd: float = 1e-5) -> float:
    """|| dL/dt - (ML - LM) || at time t along the exact flow.

    dL/dt by second-order central differences, so the residual is O(h_fd^2).
    """
    lp = lax_matrices(exact_flow(s0, t + h_fd))[0].coeffs
    lm = lax_matrices(exact_flow(s0, t - h_fd))[0].coeffs
    lc, mc = (op.coeffs for op in lax_matrices(exact_flow(s0, t)))
    dl = (lp - lm) / (2.0 * h_fd)
    return float(np.linalg.norm(dl - (mc @ lc - lc @ mc)))


def aux_algebraic(s: OscState) -> AuxValues:
    """Pointwise principal-branch auxiliary values at a state.

    A+ = sqrt(sqrt(2H) + p) >= 0 and A- = w q / A+; when A+ falls below
    eps = 1e-12 (1 + sqrt(2H)) the roles swap (A- = sqrt(sqrt(2H) - p),
    A+ = w q / A-) to avoid catastrophic cancellation near p = -sqrt(2H).
    At the origin (H = 0) all four values are 0 by continuity.
    """
    rt = math.sqrt(2.0 * hamiltonian(s))
    if rt == 0.0:
        return AuxValues(0.0, 0.0, 0.0, 0.0)
    wq = s.omega * s.q
    eps = 1e-12 * (1.0 + rt)
    ap = math.sqrt(max(rt + s.p, 0.0))
    if ap > eps:
        am = wq / ap
    else:
        am = math.sqrt(max(rt - s.p, 0.0))
        ap = wq / am
    dp = 0.5 * ap * (ap * ap - 3.0 * am * am)
    dm = 0.5 * am * (3.0 * ap * ap - am * am)
    return AuxValues(ap, am, dp, dm)


def aux_exact_flow(a0: AuxValues, omega: float, t: float) -> AuxValues:
    """Smooth dynamic continuation of a t = 0 seed.

    Rotates (A+, A-) by omega*t/2 and (D+, D-) by 3*omega*t/2; this is the
    unique solution of the rotation laws G = 0 and preserves A+^2 + A-^2
    and D+^2 + D-^2 exactly.
    """
    c1, s1 = math.cos(0.5 * omega * t), math.sin(0.5 * omega * t)
    c3, s3 = math.cos(1.5 * omega * t), math.sin(1.5 * omega * t)
    return AuxValues(
        a0.a_plus * c1 - a0.a_minus * s1,
        a0.a_minus * c1 + a0.a_plus * s1,
        a0.d_plus * c3 - a0.d_minus * s3,
        a0.d_minus * c3 + a0.d_plus * s3,
    )


def aux_rhs(a: AuxValues, omega: float) -> AuxValues:
    """Exact time rates under the rotation laws: dA+- = -+(w/2) A-+, etc."""
    w = 0.5 * omega
    return AuxValues(
        -w * a.a_minus, w * a.a_plus, -3.0 * w * a.d_minus, 3.0 * w * a.d_plus
    )


def g_residuals_along(
    path: Callable[[float], AuxValues], omega: float, t: float, h_fd: float = 1e-5
) -> tuple[float, float, float, float]:
    """The four rotation-law residuals of an arbitrary aux trajectory.

    Time derivatives by central differences on ``path``; returns
    (G(A)+, G(A)-, G(D)+, G(D)-).  Zero up to O(h_fd^2) iff the path obeys
    the rotation laws.
    """
    a = path(t)
    ahi = path(t + h_fd)
    alo = path(t - h_fd)
    inv = 1.0 / (2.0 * h_fd)
    da_p = (ahi.a_plus - alo.a_plus) * inv
    da_m = (ahi.a_minus - alo.a_minus) * inv
    dd_p = (ahi.d_plus - alo.d_plus) * inv
    dd_m = (ahi.d_minus - alo.d_minus) * inv
    w = 0.5 * omega
    return (
        da_p + w * a.a_minus,
        da_m - w * a.a_plus,
        dd_p + 3.0 * w * a.d_minus,
        dd_m - 3.0 * w * a.d_plus,
    )


def g_residuals(
    s0: OscState, t: float, h_fd: float = 1e-5
) -> tuple[float, float, float, float]:
    """Rotation-law residuals along the canonical smooth aux trajectory of s0."""
    seed = aux_algebraic(s0)
    return g_residuals_along(
        lambda tt: aux_exact_flow(seed, s0.omega, tt), s0.omega, t, h_fd
    )
