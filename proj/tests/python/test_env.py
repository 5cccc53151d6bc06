import json
import os
import subprocess
from pathlib import Path

import numpy as np
import pytest

import socnav

CONFIG_DIR = Path(os.environ.get("SOCNAV_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def test_default_observation_shapes():
    env = socnav.Env()
    obs, info = env.reset(seed=0)
    assert info["step"] == 0
    assert obs["leog"].shape == (60, 60)
    assert obs["leog"].dtype == np.uint8
    assert obs["raycast"].shape == (360,)
    assert obs["closest"].shape == (2,)
    assert obs["goal"].shape == (2,)
    assert env.observation_shapes["leog"] == (60, 60)


def test_raycast_only_config_has_no_grid():
    env = socnav.Env(json.dumps({"sensors": {"modalities": ["raycast"]}}))
    obs, _ = env.reset(seed=1)
    assert set(obs) == {"raycast", "goal"}


def test_malformed_config_names_the_field():
    with pytest.raises(socnav.ConfigError, match="sensors.ray_count"):
        socnav.Env(json.dumps({"sensors": {"ray_count": 1}}))
    with pytest.raises(socnav.ConfigError, match="n_humen"):
        socnav.Env(json.dumps({"n_humen": 2}))
    with pytest.raises(ValueError, match="line 1"):
        socnav.Env("{not json")


def test_action_is_clamped():
    cfg = json.dumps({"n_humans": 0})
    a = socnav.Env(cfg)
    b = socnav.Env(cfg)
    a.reset(seed=2)
    b.reset(seed=2)
    a.step((2.0, -7.0))
    b.step((1.0, -1.0))
    assert a.state_json() == b.state_json()
    with pytest.raises(ValueError):
        a.step((float("nan"), 0.0))


def test_goal_reward_and_finished_episode():
    env = socnav.Env(json.dumps({"n_humans": 0}))
    env.reset(seed=3)
    reward = None
    terminated = truncated = False
    while env.active:
        _, reward, terminated, truncated, info = env.step(env.scripted_action())
    assert terminated and not truncated
    assert info["outcome"] == "Success"
    assert reward == 500.0
    assert info["reward"]["terminal"]
    with pytest.raises(socnav.EpisodeFinishedError):
        env.step((0.0, 0.0))


def test_truncation_and_return_identity():
    env = socnav.Env(json.dumps({"n_humans": 0, "max_steps": 30}))
    env.reset(seed=0)
    total = 0.0
    while env.active:
        _, r, terminated, truncated, _ = env.step((0.0, 0.0))
        total += r
    assert truncated and not terminated
    assert env.steps == 30
    assert env.episode_return == total == -150.0


def test_forces():
    assert socnav.goal_force((0, 0), (2, 0)) == (1.0, 0.0)
    assert socnav.social_force((0, 0), [(-0.75, 0)]) == (0.5, 0.0)
    assert socnav.derive_episode_seed(0, 5) != socnav.derive_episode_seed(0, 5, evaluation=True)


def test_render_header():
    env = socnav.Env()
    env.reset(seed=0)
    img = env.render(50.0)
    assert img.startswith(b"P6\n500 500\n255\n")
    assert len(img) == len(b"P6\n500 500\n255\n") + 500 * 500 * 3
    assert img == env.render(50.0)


def test_dataset_round_trip(tmp_path):
    path = tmp_path / "grids.osgd"
    cfg = socnav.default_config_json()
    assert socnav.collect_dataset(cfg, 25, 4, str(path)) == 25
    assert path.stat().st_size == 56 + 25 * 3600
    reader = socnav.DatasetReader(str(path))
    assert reader.header["sample_count"] == 25
    grids = list(reader)
    assert len(grids) == 25
    assert all(g.shape == (60, 60) for g in grids)
    data = path.read_bytes()
    path.write_bytes(data[:-10])
    with pytest.raises(socnav.DatasetError, match="truncated"):
        socnav.DatasetReader(str(path))


def test_evaluate_rates():
    report = socnav.evaluate(json.dumps({"n_humans": 0}), policy="idle", episodes=5)
    assert report["counts"]["truncated"] == 5
    assert report["rates"]["truncated"] == 1.0
    with pytest.raises(ValueError):
        socnav.evaluate("{}", policy="clever")


@pytest.mark.parametrize("name", ["empty.json", "crowd.json", "obstacles.json"])
def test_sample_configs_load(name):
    env = socnav.Env((CONFIG_DIR / name).read_text())
    env.reset(seed=0)
    env.step(env.scripted_action())


@pytest.mark.skipif("SOCNAV_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_trace_matches_bindings():
    cfg_path = CONFIG_DIR / "crowd.json"
    out = subprocess.run(
        [os.environ["SOCNAV_CLI"], "simulate", "--config", str(cfg_path), "--seed", "11",
         "--policy", "scripted", "--trace"],
        check=True, capture_output=True, text=True,
    )
    summary = json.loads(out.stdout)
    env = socnav.Env(cfg_path.read_text())
    env.reset(seed=11)
    rewards = []
    while env.active:
        rewards.append(env.step(env.scripted_action())[1])
    assert summary["rewards"] == rewards
    assert summary["steps"] == env.steps
    assert summary["return"] == env.episode_return
