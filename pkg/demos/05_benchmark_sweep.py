"""Run a small benchmark sweep and read the CSV it writes.

The bench harness sweeps a grid of problem sizes, runs a fixed number
of seeded trials per cell, and writes one CSV row per cell.  With
timing disabled the output is byte-identical across reruns, which is
what the regression tests rely on.
"""

import pathlib
import tempfile

from sparselcp import ExperimentSpec, GridPoint, run_experiment

out = pathlib.Path(tempfile.mkdtemp()) / "success.csv"
spec = ExperimentSpec(
    experiment="success_vs_r",
    grid=(GridPoint(n=80, s_star=2, r=2.0),
          GridPoint(n=80, s_star=2, r=2.5),
          GridPoint(n=80, s_star=2, r=3.0)),
    output_path=str(out),
    example="sdp_gaussian",
    trials=10,
    base_seed=0,
    measure_time=False,
)

rows = run_experiment(spec)
print(f"wrote {out}")
print()
print(out.read_text(), end="")
print()
print("rerunning writes the identical file:")
before = out.read_bytes()
run_experiment(spec)
print(f"  byte-identical = {out.read_bytes() == before}")
print()
print("the same sweep is available from the command line:")
print('  sparse-lcp bench --experiment success_vs_r --example sdp_gaussian'
      ' \\\n      --grid "80:2:2;80:2:2.5;80:2:3" --trials 10'
      ' --no-timing --out success.csv')
