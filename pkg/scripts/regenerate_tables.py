"""Print the equilibrium table (scenario x candidate x satisfied) for each preset game.

    python scripts/regenerate_tables.py --k 0.75 [--quantum]
"""
import argparse
import json

from bistable_games.cli import cmd_ne
from bistable_games.config import build_run_config


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--k", type=float, default=0.75)
    parser.add_argument("--quantum", action="store_true", help="use the quantum grid search")
    args = parser.parse_args()
    for game in ("PD", "SH", "CG"):
        cfg = build_run_config({}, {"game": game, "k": args.k, "engine": "quantum" if args.quantum else "classical"})
        doc = json.loads(cmd_ne(cfg))
        print(f"== {game} {doc['payoffs']}")
        for t in doc["scenarios"]:
            marks = []
            for c in t["candidates"]:
                label = c.get("candidate") or f"({c['theta_a']:.4f}, {c['theta_b']:.4f})"
                ok = c["satisfied"] if "satisfied" in c else c["verdict"]
                marks.append(f"{label}={ok}")
            print(f"  {t['scenario']:<14} k={t['k']:<5g} k'={t['kprime']:<5g} " + "  ".join(marks))


if __name__ == "__main__":
    main()
