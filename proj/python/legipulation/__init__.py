"""Hexapod leg manipulation toolkit (Python bindings)."""

import json

from ._core import *  # noqa: F401,F403
from ._core import identify_obstacle, plan_push, run_episode


def describe(points, config_json=""):
    """Obstacle descriptor of a cloud as a dict."""
    return json.loads(identify_obstacle(points, config_json))


def plan(descriptor, config_json=""):
    """Push trajectory for a descriptor dict, as a dict."""
    return json.loads(plan_push(json.dumps(descriptor), config_json))


def episode(config_json="", seed=0):
    """Run one push episode; returns (outcome dict, episode CSV text)."""
    _, outcome, csv = run_episode(config_json, seed)
    return json.loads(outcome), csv
