"""Command line front end: ``isingbath <command> [--config FILE] [--out DIR] ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bath import ChainSpec, SpecError
from .defects import Basis, InvalidStateError, product_state, series_to_standard, evolve_series, write_state_series
from .dephasing import Occupation, dephasing_coefficients
from .entanglement import concurrence_values
from .experiments import (ExperimentConfig, InvariantError, Scenario, convergence_check, first_peak_time,
                          load_config, run_scenario)
from .oracles import FockBathConfig, OracleError, SpinChainConfig, exact_boson_evolution, exact_spin_chain_evolution
from .spectral import dfs_feasibility, node_frequencies

COMMANDS = ["fig1", "fig2", "fig3", "fig4", "oracle", "sweep", "nodes", "converge"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isingbath",
                                     description="Dephasing and entanglement of two defects on a bosonized Ising ring.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, help="flat key = value file with ExperimentConfig fields")
    parser.add_argument("--out", type=Path, default=None, help="output directory (default: out/<command>)")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--convention", choices=["paper", "derived"], default=None,
                        help="coupling prefactor: 2*sqrt(2)*gamma (default) or 2*gamma (derived)")
    parser.add_argument("--occupation", choices=["plus", "minus"], default=None,
                        help="thermal factor 2n+1 (plus) or 2n-1 (minus, audit only)")
    return parser


def _config(args, scenario) -> ExperimentConfig:
    overrides = {"coupling_norm": args.convention, "occupation": args.occupation, "threads": args.threads}
    out = args.out or Path("out") / args.command
    overrides["out_dir"] = str(out)
    if args.config is not None:
        cfg = load_config(args.config, **overrides)
        if scenario is not None and cfg.scenario is Scenario.CUSTOM and args.command != "sweep":
            cfg = load_config(args.config, scenario=scenario, **overrides)
        return cfg
    return ExperimentConfig.for_scenario(scenario or Scenario.CUSTOM,
                                         **{k: v for k, v in overrides.items() if v is not None})


def _fmt_opt(v):
    return "none" if v is None else f"{v:.6g}"


def cmd_figure(args, scenario):
    cfg = _config(args, scenario)
    res = run_scenario(cfg)
    for r in res.records if cfg.scenario is not Scenario.FIG2 else []:
        if cfg.scenario is Scenario.FIG4:
            continue
        p = r.params
        print(f"J={p['J']:.6g} gamma={p['gamma']:.6g} l={p['l']} max_C={r.max_concurrence:.6f} "
              f"t0={r.onset_label} period={_fmt_opt(r.period)}")
    if cfg.scenario is Scenario.FIG2:
        m = res.extras["max_concurrence"]
        print(f"max_C over grid: {m.max():.6f}; min: {m.min():.3e}")
    if cfg.scenario is Scenario.FIG3 and "exponential_fit" in res.extras:
        fit = res.extras["exponential_fit"]
        print(f"log t0 vs l: slope={fit['slope']:.4f} R^2={fit['r_squared']:.4f}")
    if cfg.scenario is Scenario.FIG4:
        for l, d in res.extras["spectra"].items():
            print(f"l={l}: nodes={np.round(d['A'].nodes, 6).tolist()} minima={np.round(d['matched_minima'], 6).tolist()}")
    print(f"wrote {len(res.files)} files to {cfg.out_dir}")
    return 0


def cmd_nodes(args):
    cfg = _config(args, Scenario.FIG4)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = ["l,p,omega,required_h,bosonization_compatible"]
    for l in cfg.l_values:
        spec = ChainSpec(J=cfg.J, gamma=cfg.gamma, N=max(cfg.N, l), l=l)
        report = dfs_feasibility(spec)
        print(report.summary())
        for n in report.nodes:
            rows.append(f"{l},{n['p']},{n['omega']:.17g},{n['required_h']:.17g},{int(n['bosonization_compatible'])}")
        assert len(node_frequencies(spec)) == l
    (out / "nodes.csv").write_text("\n".join(rows) + "\n")
    return 0


def cmd_converge(args):
    cfg = _config(args, Scenario.FIG1)
    rep = convergence_check(cfg)
    for (a, b), d in zip(zip(rep.N_values[:-1], rep.N_values[1:]), rep.differences):
        print(f"N={a} vs N={b}: max |dC| = {d:.3e}")
    print(f"t_max={rep.t_max:.6g}; recurrence times {[round(float(t), 1) for t in rep.recurrence_times]}")
    print("PASS" if rep.passed else f"FAIL: {rep.diagnosis}")
    return 0 if rep.passed else 3


def cmd_oracle(args):
    cfg = _config(args, None)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    occupation = cfg.occupation
    # truncated Fock bath against the analytic map
    spec = ChainSpec(J=0.1, gamma=0.05, T=0.0, N=2, l=1, coupling_norm=cfg.coupling_norm)
    times = np.linspace(0.0, 50.0, 201)
    initial = product_state(0.0, 0.0)
    exact = exact_boson_evolution(FockBathConfig(N_small=2, n_max=4, t_grid=times), spec, initial)
    from .bath import build_bath_modes
    coeffs = dephasing_coefficients(build_bath_modes(spec), times, occupation)
    analytic = series_to_standard(evolve_series(initial, coeffs), spec.placement)
    dev = float(np.abs(analytic - exact.rhos).max())
    write_state_series(out / "oracle_fock_exact.csv", times, exact.rhos, Basis.STANDARD_Z)
    write_state_series(out / "oracle_fock_analytic.csv", times, analytic, Basis.STANDARD_Z)
    print(f"Fock oracle (occupation={occupation.value}): max element deviation {dev:.3e}")
    # original spin ring against the bosonized model
    sc = SpinChainConfig(n_sites=8, J=0.05, gamma=0.02, l=1, t_grid=np.linspace(0.0, 15000.0, 3001))
    chain = exact_spin_chain_evolution(sc, initial)
    bspec = ChainSpec(J=sc.J, gamma=sc.gamma, T=0.0, N=sc.n_sites // 2, l=sc.l, coupling_norm="derived")
    bco = dephasing_coefficients(build_bath_modes(bspec), sc.t_grid)
    Cb = concurrence_values(series_to_standard(evolve_series(initial, bco), bspec.placement))
    Ce = concurrence_values(chain.rhos)
    pb, pe = first_peak_time(sc.t_grid, Cb), first_peak_time(sc.t_grid, Ce)
    write_state_series(out / "oracle_chain_exact.csv", sc.t_grid, chain.rhos, Basis.STANDARD_Z)
    print(f"spin-chain oracle: first peak bosonized={_fmt_opt(pb)} exact={_fmt_opt(pe)}; "
          f"max magnetization deviation {chain.diagnostics['max_magnetization_deviation']:.3e}")
    return 0 if dev <= 1e-3 or occupation is Occupation.MINUS else 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in {"fig1", "fig2", "fig3", "fig4"}:
            return cmd_figure(args, Scenario(args.command))
        if args.command == "sweep":
            return cmd_figure(args, None)
        if args.command == "nodes":
            return cmd_nodes(args)
        if args.command == "converge":
            return cmd_converge(args)
        return cmd_oracle(args)
    except (InvariantError, InvalidStateError) as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2
    except (SpecError, OracleError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
