"""Training-side interface: encoder layout, protocol schedule and entry points.

Learning itself is not implemented in this package. The types here pin the
shapes and the schedule so a trainer can be plugged in against them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class Regime(enum.Enum):
    FROZEN = "frozen"
    FINE_TUNED = "fine_tuned"
    SCRATCH = "scratch"


class Paradigm(enum.Enum):
    SAC = "sac"
    TD3 = "td3"
    DDPG = "ddpg"
    A2C = "a2c"


@dataclass(frozen=True)
class EncoderSpec:
    leog_channels: tuple[int, ...] = (8, 16)
    leog_out: int = 64
    raycast_hidden: tuple[int, ...] = (128,)
    raycast_out: int = 64
    rbf_centers: int = 32
    lowdim_out: int = 32
    goal_width: int = 2
    modalities: frozenset[str] = field(default_factory=lambda: frozenset({"closest", "raycast", "leog"}))

    def branch_widths(self) -> dict[str, int]:
        widths = {"leog": self.leog_out, "raycast": self.raycast_out, "closest": self.lowdim_out}
        return {k: v for k, v in widths.items() if k in self.modalities}

    def latent_width(self) -> int:
        """Concatenation of the enabled branches plus the goal features."""
        return sum(self.branch_widths().values()) + self.goal_width


def rbf_expand(x: np.ndarray, low: np.ndarray, high: np.ndarray, centers: int = 32) -> np.ndarray:
    """Fixed Gaussian expansion: `centers` evenly spaced per input dimension,
    width equal to the spacing. Output length is len(x) * centers."""
    x = np.asarray(x, dtype=np.float64)
    low = np.broadcast_to(np.asarray(low, dtype=np.float64), x.shape)
    high = np.broadcast_to(np.asarray(high, dtype=np.float64), x.shape)
    if centers < 2:
        raise ValueError("centers must be >= 2")
    grid = np.linspace(0.0, 1.0, centers)
    c = low[:, None] + (high - low)[:, None] * grid[None, :]
    width = (high - low)[:, None] / (centers - 1)
    return np.exp(-0.5 * ((x[:, None] - c) / width) ** 2).reshape(-1)


@dataclass(frozen=True)
class TrainProtocol:
    train_episodes: int = 700
    eval_every: int = 50
    eval_episodes: int = 20
    runs: int = 5
    window: int = 10
    regime: Regime = Regime.SCRATCH

    def checkpoints(self) -> list[int]:
        if self.eval_every < 1 or self.train_episodes < self.eval_every:
            raise ValueError("eval_every must be in [1, train_episodes]")
        return list(range(self.eval_every, self.train_episodes + 1, self.eval_every))

    def total_test_episodes(self) -> int:
        return len(self.checkpoints()) * self.eval_episodes


def critic_count(paradigm: Paradigm) -> int:
    return {Paradigm.SAC: 2, Paradigm.TD3: 2, Paradigm.DDPG: 1, Paradigm.A2C: 1}[paradigm]


def pretrain_encoder(dataset_path: str, spec: EncoderSpec, epochs: int, seed: int):
    raise NotImplementedError("encoder pretraining is not part of this package")


def build_agent(paradigm: Paradigm, spec: EncoderSpec, regime: Regime, weights=None, **hyperparams):
    if regime in (Regime.FROZEN, Regime.FINE_TUNED) and weights is None:
        raise ValueError(f"{regime.value} regime requires pretrained encoder weights")
    raise NotImplementedError("agent construction is not part of this package")


def train(agent, env_factory, protocol: TrainProtocol, seed: int):
    raise NotImplementedError("training is not part of this package")
