"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 numeric domain error,
4 sampling refused in the quasi-probability regime.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from .classical import (
    EquilibriumKind,
    equilibrium_segments,
    find_equilibria,
    find_mixed_ne,
    sweep_classical,
)
from .claims import ClaimContext, verify_claims
from .config import RunConfig, build_run_config, read_config_file, validate_document
from .core import ConfigError, DegenerateError, DomainError, QuasiProbabilityError
from .montecarlo import ClassicalTarget, QuantumTarget, SimulationSpec, simulate
from .quantum import QuantumStrategy, closed_form_candidates, ne_grid_search, sweep_quantum
from .sweep import Axis, SweepSpec, write_csv

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_QUASI = 0, 2, 3, 4
DEFAULT_K = 0.75


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _sweep_fixed(cfg: RunConfig, axes) -> dict:
    fixed = dict(cfg.fixed)
    names = {a.name for a in axes}
    if cfg.k is not None and "k" not in names:
        fixed.setdefault("k", cfg.k)
    if cfg.kprime is not None and "kprime" not in names:
        fixed.setdefault("kprime", cfg.kprime)
    return fixed


def _sweep_output(result, cfg: RunConfig, default_format: str = "csv") -> str:
    if (cfg.format or default_format) == "json":
        return _dump_json({"columns": result.columns, "rows": result.to_records()})
    return result.to_csv()


def _k_axis() -> Axis:
    return Axis("k", (0.5, 0.6, 0.7, 0.8, 0.9, 1.0))


def cmd_classical_utility(cfg: RunConfig) -> str:
    axes = cfg.axes
    if axes is None:
        axes = [_k_axis(), Axis.linspace("p", 0, 1, 21), Axis.linspace("q", 0, 1, 21)]
        if cfg.k is not None:
            axes = axes[1:]
    spec = SweepSpec(tuple(axes), "utility", cfg.payoffs, cfg.scenario_mode, _sweep_fixed(cfg, axes))
    return _sweep_output(sweep_classical(spec), cfg)


def cmd_delta_m(cfg: RunConfig) -> str:
    axes = cfg.axes or [Axis.linspace("k", 0.5, 1, 11), Axis.linspace("b_over_c", 1.1, 10, 90)]
    fixed = _sweep_fixed(cfg, axes)
    if all(a.name != "k" for a in axes):
        fixed.setdefault("k", 1.0)
    spec = SweepSpec(tuple(axes), "delta_m", cfg.payoffs, cfg.scenario_mode, fixed)
    try:
        result = sweep_classical(spec)
    except DomainError as exc:
        name = "fixed.c" if "positive" in str(exc) else "b_over_c"
        raise DomainError(f"field '{name}': {exc}") from exc
    return _sweep_output(result, cfg)


def cmd_quantum(cfg: RunConfig) -> str:
    axes = cfg.axes
    if axes is None:
        theta = Axis.linspace("theta_a", 0, math.pi, cfg.grid.theta_points)
        axes = [_k_axis(), theta, Axis("theta_b", theta.values)]
        if cfg.k is not None:
            axes = axes[1:]
    spec = SweepSpec(tuple(axes), "quantum_utility", cfg.payoffs, cfg.scenario_mode, _sweep_fixed(cfg, axes))
    return _sweep_output(sweep_quantum(spec), cfg)


def _scenarios(cfg: RunConfig) -> list[tuple[str, float, float]]:
    k = DEFAULT_K if cfg.k is None else cfg.k
    rows = [
        ("rational", 1.0, 1.0),
        ("symmetric", k, k),
        ("one_rational", k, 1.0),
        ("complementary", k, 1.0 - k),
    ]
    if cfg.kprime is not None:
        rows.append(("independent", k, cfg.kprime))
    return rows


def _classical_table(cfg: RunConfig) -> list[dict]:
    m = cfg.payoffs
    table = []
    for name, k, kp in _scenarios(cfg):
        eqs = find_equilibria(m, (k, kp))
        everywhere = any(e.kind is EquilibriumKind.EVERYWHERE for e in eqs)
        points = {(e.p_star, e.q_star) for e in eqs if not everywhere}
        candidates = []
        for p, q in ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)):
            candidates.append({
                "candidate": f"({int(p)},{int(q)})", "p": p, "q": q,
                "satisfied": everywhere or (p, q) in points,
            })
        try:
            mixed = find_mixed_ne(m, k, kp)
        except DegenerateError:
            mixed = None
        candidates.append({
            "candidate": "mixed",
            "p": None if mixed is None else mixed.p_star,
            "q": None if mixed is None else mixed.q_star,
            "satisfied": everywhere or mixed is not None,
        })
        table.append({
            "scenario": name, "k": k, "kprime": kp, "everywhere": everywhere,
            "equilibria": [e.as_dict() for e in eqs],
            "segments": [[list(a), list(b)] for a, b in equilibrium_segments(m, (k, kp))],
            "candidates": candidates,
        })
    return table


def _quantum_table(cfg: RunConfig) -> list[dict]:
    m = cfg.payoffs
    table = []
    for name, k, kp in _scenarios(cfg):
        r = ne_grid_search(
            m, k, kp, cfg.grid, include_phase=cfg.include_phase,
            candidates=closed_form_candidates(m), threads=cfg.threads,
        )
        table.append({"scenario": name} | r.as_dict())
    return table


def cmd_ne(cfg: RunConfig) -> str:
    quantum = cfg.engine == "quantum"
    table = _quantum_table(cfg) if quantum else _classical_table(cfg)
    if (cfg.format or "json") == "json":
        doc = {
            "engine": "quantum" if quantum else "classical",
            "game": cfg.game.value,
            "payoffs": cfg.payoffs.as_dict(),
            "scenarios": table,
        }
        return _dump_json(doc)
    if quantum:
        cols = ["scenario", "k", "kprime", "theta_a", "phi_a", "theta_b", "phi_b", "verdict"]
        rows = [
            (t["scenario"], t["k"], t["kprime"], c["theta_a"], c["phi_a"], c["theta_b"], c["phi_b"], c["verdict"])
            for t in table for c in t["candidates"]
        ]
    else:
        cols = ["scenario", "k", "kprime", "candidate", "p", "q", "satisfied"]
        rows = [
            (t["scenario"], t["k"], t["kprime"], c["candidate"], "" if c["p"] is None else c["p"],
             "" if c["q"] is None else c["q"], c["satisfied"])
            for t in table for c in t["candidates"]
        ]
    return write_csv(cols, rows)


def cmd_verify_claims(cfg: RunConfig, text: bool = False) -> str:
    if cfg.format == "csv":
        raise ConfigError("format", "verify-claims emits JSON or, with --text, plain text")
    ctx = ClaimContext(quantum_grid=cfg.grid)
    if "random_payoffs" in cfg.claims:
        ctx.random_payoffs = cfg.claims["random_payoffs"]
    if "payoff_seed" in cfg.claims:
        ctx.payoff_seed = cfg.claims["payoff_seed"]
    report = verify_claims(ctx, cfg.claims.get("ids"))
    if text:
        return report.to_text()
    doc = report.as_dict()
    validate_document(doc, "claim_report")
    return _dump_json(doc)


def cmd_simulate(cfg: RunConfig) -> str:
    if cfg.format == "csv":
        raise ConfigError("format", "simulate emits JSON only")
    sim = cfg.simulation
    k, kp = cfg.resolved_k(1.0)
    trials = sim.get("trials", 100_000)
    target_kind = sim.get("target", "quantum" if cfg.engine == "quantum" else "classical")
    if target_kind == "quantum":
        try:
            alice = QuantumStrategy(sim.get("theta_a", 0.0), sim.get("phi_a", 0.0))
            bob = QuantumStrategy(sim.get("theta_b", 0.0), sim.get("phi_b", 0.0))
        except DomainError as exc:
            raise DomainError(f"simulation strategy: {exc}") from exc
        target = QuantumTarget(alice, bob, k, kp)
    else:
        target = ClassicalTarget(sim.get("p", 1.0), sim.get("q", 1.0), k, kp)
    spec = SimulationSpec(trials, cfg.seed, target, cfg.payoffs)
    report = simulate(spec, threads=cfg.threads)
    doc = report.to_dict() | {"target": _target_dict(target), "payoffs": cfg.payoffs.as_dict()}
    return _dump_json(doc)


def _target_dict(t) -> dict:
    if isinstance(t, ClassicalTarget):
        return {"kind": "classical", "p": t.p, "q": t.q, "k": t.k, "kprime": t.kprime}
    return {
        "kind": "quantum", "theta_a": t.alice.theta, "phi_a": t.alice.phi,
        "theta_b": t.bob.theta, "phi_b": t.bob.phi, "k": t.k, "kprime": t.kprime,
    }


COMMANDS = {
    "classical-utility": cmd_classical_utility,
    "ne": cmd_ne,
    "delta-m": cmd_delta_m,
    "quantum": cmd_quantum,
    "verify-claims": cmd_verify_claims,
    "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, help="random seed, 0 <= seed < 2**64")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--threads", type=int)
    common.add_argument("--game", choices=("PD", "SH", "CG", "custom"))
    common.add_argument("--mode", choices=("independent", "symmetric", "one_rational", "complementary"))
    common.add_argument("--k", type=float)
    common.add_argument("--kprime", type=float)
    common.add_argument("--engine", choices=("classical", "quantum", "monte-carlo"))

    parser = argparse.ArgumentParser(prog="bistable-games", description="Bistable classical and quantum 2x2 games.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify-claims":
            p.add_argument("--text", action="store_true", help="human-readable report instead of JSON")
        if name == "simulate":
            p.add_argument("--trials", type=int)
            p.add_argument("--target", choices=("classical", "quantum"))
        if name in ("ne", "quantum"):
            p.add_argument("--include-phase", action="store_true", default=None)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = read_config_file(args.config) if args.config else {}
        overrides = {
            "seed": args.seed, "format": args.format, "threads": args.threads, "out": args.out,
            "game": args.game, "mode": args.mode, "k": args.k, "kprime": args.kprime, "engine": args.engine,
            "trials": getattr(args, "trials", None), "target": getattr(args, "target", None),
            "include_phase": getattr(args, "include_phase", None),
        }
        if args.game and args.game != "custom" and "payoffs" in doc and doc.get("game") != args.game:
            doc = {k: v for k, v in doc.items() if k != "payoffs"}
        cfg = build_run_config(doc, overrides)
        cmd = COMMANDS[args.command]
        text = cmd(cfg, args.text) if args.command == "verify-claims" else cmd(cfg)
        _emit(text, cfg.out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuasiProbabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUASI
    except (DomainError, DegenerateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        sys.stdout = None
        code = EXIT_OK
    sys.exit(code)
