"""Single-chain Langevin transition kernel and step-size/temperature schedules."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .targets import EnergyModel, stochastic_gradient

__all__ = ["ChainState", "Schedule", "DivergenceError", "schedule_value", "sgld_step"]


class DivergenceError(RuntimeError):
    """A trajectory produced a non-finite position; runs abort rather than clip."""


@dataclass(frozen=True)
class ChainState:
    position: float
    step_index: int = 0

    def __post_init__(self) -> None:
        if not math.isfinite(self.position):
            raise ValueError("chain position must be finite")
        if self.step_index < 0:
            raise ValueError("step_index must be >= 0")


@dataclass(frozen=True)
class Schedule:
    """Positive per-step values: constant, truncated exponential decay, or geometric annealing.

    An "epoch" is ``steps_per_epoch`` kernel steps (1 by default, so epochs
    coincide with steps).  Values at epoch e:

    - constant:          v0
    - exponential_decay: max(floor_fraction, factor**e) * v0
    - geometric_anneal:  v0 / divisor**e
    """

    kind: str
    v0: float
    factor: float = 1.0
    floor_fraction: float = 0.0
    divisor: float = 1.0
    steps_per_epoch: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("constant", "exponential_decay", "geometric_anneal"):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.v0 <= 0.0:
            raise ValueError("schedule base value must be positive")
        if self.kind == "exponential_decay" and not (0.0 < self.factor <= 1.0):
            raise ValueError("decay factor must lie in (0, 1]")
        if self.kind == "exponential_decay" and not (0.0 <= self.floor_fraction <= 1.0):
            raise ValueError("floor fraction must lie in [0, 1]")
        if self.kind == "geometric_anneal" and self.divisor <= 0.0:
            raise ValueError("anneal divisor must be positive")
        if self.steps_per_epoch < 1:
            raise ValueError("steps_per_epoch must be >= 1")

    @classmethod
    def constant(cls, v: float) -> "Schedule":
        return cls(kind="constant", v0=float(v))

    @classmethod
    def exponential_decay(
        cls, v0: float, factor: float, floor_fraction: float, steps_per_epoch: int = 1
    ) -> "Schedule":
        return cls(
            kind="exponential_decay",
            v0=float(v0),
            factor=float(factor),
            floor_fraction=float(floor_fraction),
            steps_per_epoch=steps_per_epoch,
        )

    @classmethod
    def geometric_anneal(cls, v0: float, divisor: float, steps_per_epoch: int = 1) -> "Schedule":
        return cls(
            kind="geometric_anneal", v0=float(v0), divisor=float(divisor),
            steps_per_epoch=steps_per_epoch,
        )


def schedule_value(s: Schedule, k: int) -> float:
    """Value of schedule ``s`` at step index ``k`` (k >= 0)."""
    if k < 0:
        raise ValueError("step index must be >= 0")
    if s.kind == "constant":
        return s.v0
    epoch = k // s.steps_per_epoch
    if s.kind == "geometric_anneal":
        return s.v0 / s.divisor**epoch
    return max(s.floor_fraction, s.factor**epoch) * s.v0


def sgld_step(
    state: ChainState,
    model: EnergyModel,
    eta: float,
    tau: float,
    rng: np.random.Generator,
) -> ChainState:
    """One Langevin update x' = x - eta * grad + sqrt(2 eta tau) * xi.

    ``grad`` is a stochastic gradient draw and ``xi`` a standard normal,
    both taken from ``rng`` in that order.  Raises :class:`DivergenceError`
    (naming the offending step) if the new position is non-finite.
    """
    if eta <= 0.0:
        raise ValueError("learning rate must be positive")
    if tau <= 0.0:
        raise ValueError("temperature must be positive")
    g = stochastic_gradient(model, state.position, rng)
    xi = rng.standard_normal()
    new_pos = float(state.position - eta * g + math.sqrt(2.0 * eta * tau) * xi)
    if not math.isfinite(new_pos):
        raise DivergenceError(
            f"non-finite position at step {state.step_index + 1} "
            f"(from {state.position:.6g}, eta={eta:.6g}, tau={tau:.6g})"
        )
    return ChainState(position=new_pos, step_index=state.step_index + 1)
