"""Documented CLI invocations (also listed in the README)."""

import os
import subprocess
import sys

DOCUMENTED = [
    ["eval", "--seq", '{"kind":"tricomi"}', "--x", "1.0"],
    ["eval", "--seq", '{"kind":"ones"}', "--x", "1.0"],
    ["eval", "--seq", '{"kind":"tricomi"}', "--x-grid", "0:2:5", "--output", "csv"],
    ["special", "--function", "tricomi", "--n", "1", "--x-grid", "0:5:6"],
    ["special", "--function", "hybrid", "--n", "4", "--x", "0.5", "--y", "0.25", "--output", "csv"],
    ["coherent", "--alpha", "0.5,0.25", "--m", "1", "--cutoff", "60"],
    ["coherent", "--alpha", "0.5,0.25", "--m", "1", "--output", "csv"],
    ["hermite-states", "--n", "4", "--omega", "0.6,0.2", "--cutoff", "10"],
    ["hermite-states", "--omega", "0.5,0", "--cutoff", "40", "--nh", "30", "--output", "csv"],
    ["evolve", "--seq", '{"kind":"tricomi"}', "--delta", "0.2", "--x-grid", "0:1:3"],
    ["evolve", "--seq", '{"kind":"ones"}', "--delta", "0.1", "--x", "0", "--output", "csv"],
    ["heat", "--g", "0,0,1", "--t-grid", "0:1:11"],
    ["heat", "--g", "0,0,0,0,1", "--t-grid", "0:1:3", "--x-grid", "0:1:3", "--output", "csv"],
    ["transform", "--kind", "laplace", "--seq", '{"kind":"inverse_shifted_factorial","m":1,"p":0}',
     "--nu", "1", "--x", "1", "--output", "csv"],
    ["transform", "--kind", "fourier", "--seq", '{"kind":"tricomi"}', "--x-grid", "0:1:3"],
]


def run_cli(args, env_extra=None):
    env = dict(os.environ)
    env.pop("UMBRA_MAX_TERMS", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "umbra", *args], capture_output=True, env=env, timeout=60)
