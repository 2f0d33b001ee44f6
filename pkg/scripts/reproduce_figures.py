"""Write plot-ready CSV data for the utility surfaces and the cooperation-motive map.

    python scripts/reproduce_figures.py --out-dir figures
"""
import argparse
from pathlib import Path

from bistable_games.cli import run

K_VALUES = ("0.5", "0.6", "0.7", "0.8", "0.9", "1")

JOBS = {
    # classical utility over (p, q) per scenario
    "classical_symmetric.csv": ["classical-utility", "--mode", "symmetric"],
    "classical_one_rational.csv": ["classical-utility", "--mode", "one_rational"],
    "classical_complementary.csv": ["classical-utility", "--mode", "complementary"],
    "delta_m.csv": ["delta-m"],
}


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--out-dir", default="figures")
    parser.add_argument("--game", default="PD", choices=("PD", "SH", "CG"))
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    jobs = dict(JOBS)
    for k in K_VALUES:
        jobs[f"quantum_k{k}.csv"] = ["quantum", "--k", k]
    for name, argv in jobs.items():
        path = out / f"{args.game.lower()}_{name}"
        code = run(argv + ["--game", args.game, "--out", str(path)])
        if code:
            raise SystemExit(code)
        print(path)


if __name__ == "__main__":
    main()
