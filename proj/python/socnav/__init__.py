"""Social-navigation simulation engine: environment, sensors, rewards, datasets."""

from ._core import (
    ConfigError,
    DatasetError,
    DatasetReader,
    Env,
    EpisodeFinishedError,
    ScenarioError,
    collect_dataset,
    default_config_json,
    derive_episode_seed,
    evaluate,
    goal_force,
    social_force,
)

__all__ = [
    "ConfigError",
    "DatasetError",
    "DatasetReader",
    "Env",
    "EpisodeFinishedError",
    "ScenarioError",
    "collect_dataset",
    "default_config_json",
    "derive_episode_seed",
    "evaluate",
    "goal_force",
    "social_force",
]
