"""Preservation/reversal sweep over the four (Hermitian?, dimension) quadrants.

    python3 scripts/run_table1.py --g-fraction 0.1 --grid 128
"""
import argparse
import time

from phototopo.experiments import table1


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--g-fraction", type=float, default=0.1, help="coupling as a fraction of the bath gap")
    p.add_argument("--grid", type=int, default=None, help="k points per axis (default 256 / 128)")
    args = p.parse_args()

    t0 = time.perf_counter()
    rows = table1(args.g_fraction, args.grid).summary["rows"]
    print(f"{'bath':<14}{'D':>2}{'herm':>6}{'g':>8}{'nu_p':>6}{'nu_a':>6}{'sign':>6}")
    for r in rows:
        print(
            f"{r['model']:<14}{r['dim']:>2}{int(r['hermitian']):>6}{r['g']:>8.4f}"
            f"{r['nu_p']['value']:>6d}{r['nu_a']['value']:>6d}{r['predicted_sign']:>6d}"
            f"  {'PASS' if r['pass'] else 'FAIL'}"
        )
    print(f"{time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
