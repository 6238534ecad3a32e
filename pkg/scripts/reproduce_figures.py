"""Run every figure recipe, write its artifacts and (optionally) render the plots.

    python3 scripts/reproduce_figures.py --out figures/ --plot
"""
import argparse
import os
import subprocess
import sys
import time

from phototopo.cli import ExperimentConfig, run
from phototopo.experiments import FIGURES


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--out", default="figures")
    p.add_argument("--only", nargs="*", choices=sorted(FIGURES), help="subset of figures")
    p.add_argument("--plot", action="store_true", help="execute the emitted plot scripts (needs matplotlib)")
    args = p.parse_args()

    total = time.perf_counter()
    for name in args.only or sorted(FIGURES):
        t0 = time.perf_counter()
        out = os.path.join(args.out, name)
        cfg = ExperimentConfig.from_dict({"task": "figure", "figure": {"name": name}, "output": out})
        run(cfg)
        print(f"{name}: {time.perf_counter() - t0:6.2f} s -> {out}")
        if args.plot:
            env = dict(os.environ, MPLBACKEND="Agg")
            subprocess.run([sys.executable, os.path.join(out, f"plot_{name}.py")], check=True, env=env)
    print(f"total {time.perf_counter() - total:.2f} s")


if __name__ == "__main__":
    main()
