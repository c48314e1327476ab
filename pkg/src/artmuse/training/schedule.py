"""Cosine-annealed learning-rate cycles with warm restarts.

Within cycle i of length T_i = T0 * T_mult**i:

    lr(t) = lr_min + 0.5 * (peak_i - lr_min) * (1 + cos(pi * t_cur / T_i))

Each restart shrinks the amplitude: peak_{i+1} = lr_min + decay * (peak_i -
lr_min), so the floor stays put while the peaks decay geometrically.
"""

import math
from dataclasses import dataclass


@dataclass
class ScheduleConfig:
    lr_min: float
    lr_max: float
    t0: int
    t_mult: int = 2
    decay: float = 0.85

    def __post_init__(self):
        if self.lr_min <= 0 or self.lr_max <= 0:
            raise ValueError("learning rates must be positive")
        if self.lr_min >= self.lr_max:
            raise ValueError(
                f"lr_min {self.lr_min} must be below lr_max {self.lr_max}"
            )
        if self.t0 < 1:
            raise ValueError(f"t0 must be >= 1, got {self.t0}")
        if self.t_mult < 1:
            raise ValueError(f"t_mult must be >= 1, got {self.t_mult}")
        if not 0.0 < self.decay <= 1.0:
            raise ValueError(f"decay must be in (0, 1], got {self.decay}")


def sgdr_cycle(global_step, config):
    """(cycle index, step within cycle, cycle length) for a global step."""
    if global_step < 0:
        raise ValueError(f"global_step must be >= 0, got {global_step}")
    t = global_step
    length = config.t0
    cycle = 0
    while t >= length:
        t -= length
        length *= config.t_mult
        cycle += 1
    return cycle, t, length


def sgdr_lr(global_step, config):
    """Learning rate at a 0-based global step."""
    cycle, t_cur, length = sgdr_cycle(global_step, config)
    amplitude = (config.lr_max - config.lr_min) * config.decay ** cycle
    return config.lr_min + 0.5 * amplitude * (
        1.0 + math.cos(math.pi * t_cur / length)
    )
