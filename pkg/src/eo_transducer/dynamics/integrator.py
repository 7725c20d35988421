"""
Embedded Runge-Kutta 5(4) integrator (Dormand-Prince) for complex state vectors.

Step size is chosen by a PI controller on the embedded error estimate. A
fixed-step mode with the same tableau is provided for convergence-order
measurements.
"""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Final

import numpy as np

from eo_transducer.core.errors import DivergenceError

RHS = Callable[[float, np.ndarray], np.ndarray]

# Dormand-Prince 5(4) tableau
C: Final = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A: Final = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
B5: Final = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
E: Final = np.array(
    [
        71 / 57600,
        0.0,
        -71 / 16695,
        71 / 1920,
        -17253 / 339200,
        22 / 525,
        -1 / 40,
    ]
)

ERR_NON_FINITE = "state became non-finite at t={t!r}"
ERR_STEP_UNDERFLOW = "step size underflow at t={t!r}"
ERR_BAD_STEP = "fixed step must be positive, got {h!r}"


@dataclass(frozen=True)
class StepControl:
    """
    Error tolerances and PI controller constants.

    Attributes:
        rtol: relative tolerance on the embedded error estimate
        atol: absolute floor of the error scale
        safety: safety factor applied to every proposed step
        beta: PI memory exponent (0 gives a plain I controller)
        min_factor: smallest allowed step shrink factor
        max_factor: largest allowed step growth factor
    """

    rtol: float = 1e-10
    atol: float = 1e-14
    safety: float = 0.9
    beta: float = 0.04
    min_factor: float = 0.2
    max_factor: float = 10.0
    max_steps: int = 5_000_000


@dataclass
class DormandPrince:
    """Adaptive and fixed-step Dormand-Prince stepping for y' = rhs(t, y)."""

    rhs: RHS
    control: StepControl = StepControl()  # noqa: RUF009
    steps_taken: int = 0
    steps_rejected: int = 0

    def _stages(self, t: float, y: np.ndarray, h: float, k1: np.ndarray) -> list[np.ndarray]:
        k = [k1]
        for i in range(1, 7):
            increment = sum(
                (a_ij * k_j for a_ij, k_j in zip(A[i], k, strict=False) if a_ij != 0.0),
                start=np.zeros_like(y),
            )
            k.append(self.rhs(t + C[i] * h, y + h * increment))
        return k

    def step(
        self, t: float, y: np.ndarray, h: float, k1: np.ndarray | None = None
    ) -> tuple[np.ndarray, np.ndarray, list[np.ndarray]]:
        """One trial step; returns (y_new, error_estimate, stages)."""
        if k1 is None:
            k1 = self.rhs(t, y)
        k = self._stages(t, y, h, k1)
        y_new = y + h * sum((b * kj for b, kj in zip(B5, k, strict=True) if b != 0.0), start=np.zeros_like(y))
        error = h * sum((e * kj for e, kj in zip(E, k, strict=True) if e != 0.0), start=np.zeros_like(y))
        return y_new, error, k

    def _error_norm(self, y: np.ndarray, y_new: np.ndarray, error: np.ndarray) -> float:
        scale = self.control.atol + self.control.rtol * np.maximum(np.abs(y), np.abs(y_new))
        return float(np.sqrt(np.mean((np.abs(error) / scale) ** 2)))

    def advance(
        self, t: float, y: np.ndarray, t_end: float, h: float
    ) -> tuple[np.ndarray, float]:
        """
        Integrate adaptively from t to t_end.

        Returns:
            (state at t_end, suggested next step size)
        """
        ctl = self.control
        expo = 0.2 - 0.75 * ctl.beta
        err_old = 1e-4
        k1 = self.rhs(t, y)
        h_next = h
        while t < t_end:
            if self.steps_taken + self.steps_rejected >= ctl.max_steps:
                raise DivergenceError(ERR_STEP_UNDERFLOW.format(t=t))
            h_try = min(h_next, t_end - t)
            y_new, error, k = self.step(t, y, h_try, k1)
            if not np.all(np.isfinite(y_new)):
                raise DivergenceError(ERR_NON_FINITE.format(t=t))
            err = self._error_norm(y, y_new, error)
            if err <= 1.0:
                factor = ctl.safety * max(err, 1e-10) ** (-expo) * err_old**ctl.beta
                factor = min(ctl.max_factor, max(ctl.min_factor, factor))
                err_old = max(err, 1e-4)
                t += h_try
                y = y_new
                k1 = k[6]  # first-same-as-last
                self.steps_taken += 1
                if h_try == h_next:
                    h_next = h_try * factor
            else:
                factor = max(ctl.min_factor, ctl.safety * err ** (-expo))
                h_next = h_try * factor
                self.steps_rejected += 1
                if t + h_next == t:
                    raise DivergenceError(ERR_STEP_UNDERFLOW.format(t=t))
        return y, h_next

    def fixed(self, t: float, y: np.ndarray, t_end: float, h: float) -> np.ndarray:
        """Integrate from t to t_end with constant steps of h (last one truncated)."""
        if not h > 0.0:
            raise ValueError(ERR_BAD_STEP.format(h=h))
        n_steps = int(np.ceil((t_end - t) / h - 1e-12))
        for i in range(n_steps):
            h_i = min(h, t_end - (t + i * h))
            y, _, _ = self.step(t + i * h, y, h_i)
            if not np.all(np.isfinite(y)):
                raise DivergenceError(ERR_NON_FINITE.format(t=t + i * h))
            self.steps_taken += 1
        return y
