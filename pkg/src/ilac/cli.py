"""Command-line front end.

Subcommands print one CSV table to stdout (``frontier`` writes a file).
Exit codes: 0 success, 1 validation failure, 2 configuration or range error.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import math
import sys
from pathlib import Path

from . import capacity, crb, oracle, tradeoff
from .config import load_scenario
from .link import ConfigError, DomainError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2

FRONTIER_COLUMNS = [
    "domain",
    "alloc_fraction",
    "tau_L",
    "B_L_hz",
    "capacity_nats",
    "capacity_bits",
    "crb_m2",
    "capacity_loss_nats",
    "crb_loss_ratio",
    "warn_negative_loss",
]


def to_bits(nats: float) -> float:
    return nats / math.log(2.0)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _emit_table(header, rows, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _scenario(args):
    scenario = load_scenario(args.config, args.set or ())
    if args.grid is not None:
        scenario = dataclasses.replace(scenario, grid=args.grid)
    return scenario


def cmd_capacity(args, out) -> int:
    scenario = _scenario(args)
    cfg = scenario.config
    link = scenario.link()
    bw = cfg.total_bandwidth if args.bandwidth_hz is None else args.bandwidth_hz
    if not 0 < bw <= cfg.total_bandwidth:
        raise DomainError(f"communication bandwidth must lie in (0, {cfg.total_bandwidth}], got {bw}")
    tc = cfg.symbols_total if args.symbols_comm is None else args.symbols_comm
    s = capacity.capacity_summary(bw, tc, link, cfg.symbols_total)
    _emit_table(
        ["bandwidth_hz", "symbols_comm", "pilot_continuous", "pilot_integer",
         "capacity_exact_nats", "capacity_exact_bits", "capacity_approx_nats",
         "capacity_approx_bits", "overhead_fraction"],
        [[float(bw), tc, s["pilot_continuous"], s["pilot_integer"],
          s["capacity_exact_nats"], to_bits(s["capacity_exact_nats"]),
          s["capacity_approx_nats"], to_bits(s["capacity_approx_nats"]),
          s["overhead_fraction"]]],
        out,
    )
    return EXIT_OK


def cmd_crb(args, out) -> int:
    scenario = _scenario(args)
    cfg = scenario.config
    link = scenario.link()
    bw = cfg.total_bandwidth if args.bandwidth_hz is None else args.bandwidth_hz
    tau = float(cfg.symbols_total if args.symbols is None else args.symbols)
    pos = crb.crb_position(cfg, link, bw, tau)
    x, y = crb.estimate_position(cfg.anchor, cfg.theta, link.toa)
    _emit_table(
        ["bandwidth_hz", "tau_L", "distance_m", "gamma", "crb_aoa_rad2", "crb_toa_s2",
         "crb_m2", "rmse_m", "x_m", "y_m"],
        [[float(bw), tau, link.distance, link.gamma, crb.crb_aoa(cfg, link, tau),
          crb.crb_toa(cfg, link, bw, tau), pos, math.sqrt(pos), x, y]],
        out,
    )
    return EXIT_OK


def cmd_tradeoff_time(args, out) -> int:
    scenario = _scenario(args)
    cfg = scenario.config
    link = scenario.link()
    if args.loss is not None:
        tau = tradeoff.tau_l_from_capacity_loss(args.loss, link, cfg)
    else:
        tau = float(cfg.symbols_total / 2 if args.tau_l is None else args.tau_l)
    loss = tradeoff.capacity_loss_time(tau, link, cfg)
    approx = float(loss.approx_form)
    _emit_table(
        ["tau_L", "capacity_loss_approx_nats", "capacity_loss_exact_nats",
         "crb_loss_ratio", "closed_form_crb_loss_ratio", "warn_negative_loss"],
        [[float(tau), approx, float(loss.exact_form),
          tradeoff.crb_loss_time(tau, cfg),
          tradeoff.crb_loss_from_time_loss(max(approx, 0.0), link, cfg), approx < 0]],
        out,
    )
    return EXIT_OK


def cmd_tradeoff_freq(args, out) -> int:
    scenario = _scenario(args)
    cfg = scenario.config
    link = scenario.link()
    if args.loss is not None:
        b_l = tradeoff.bandwidth_from_capacity_loss(args.loss, link, cfg)
    else:
        b_l = float(cfg.total_bandwidth / 2 if args.bl_hz is None else args.bl_hz)
    loss = tradeoff.capacity_loss_freq(b_l, link, cfg)
    _emit_table(
        ["B_L_hz", "capacity_loss_nats", "crb_loss_ratio", "closed_form_crb_loss_ratio",
         "alt_form_crb_loss_ratio"],
        [[float(b_l), loss, tradeoff.crb_loss_freq(b_l, link, cfg),
          tradeoff.crb_loss_from_freq_loss(loss, link, cfg),
          tradeoff.crb_loss_freq_alt(b_l, link, cfg)]],
        out,
    )
    return EXIT_OK


def frontier_rows(scenario) -> list[list]:
    cfg = scenario.config
    link = scenario.link()
    rows = []
    for domain in scenario.domains:
        sweep = tradeoff.sweep_frontier(domain, scenario.grid, link, cfg)
        for p in sweep.points:
            rows.append([
                domain.value,
                p.alloc_fraction,
                p.split.tau_l if domain is tradeoff.Domain.TIME else float(cfg.symbols_total),
                p.split.b_l if domain is tradeoff.Domain.FREQUENCY else cfg.total_bandwidth,
                p.capacity,
                to_bits(p.capacity),
                p.crb,
                p.capacity_loss,
                p.crb_loss,
                p.warn_negative_loss,
            ])
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows


def cmd_frontier(args, out) -> int:
    scenario = _scenario(args)
    rows = frontier_rows(scenario)
    out_dir = Path(args.out or ".")
    path = out_dir / args.name
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            _emit_table(FRONTIER_COLUMNS, rows, fh)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc.strerror}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"wrote {len(rows)} rows to {path}", file=out)
    return EXIT_OK


def cmd_validate(args, out) -> int:
    scenario = _scenario(args)
    cfg = scenario.config
    reports = oracle.run_all_audits(scenario.link(), cfg)
    for r in reports:
        print(r.line(), file=out)
    failed = [r.name for r in reports if not r.passed]
    if failed:
        print("failed checks: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scenario file (key = value lines)")
    common.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override a scenario key; repeatable, wins over --config")
    common.add_argument("--out", help="output directory (frontier)")
    common.add_argument("--grid", type=int, help="number of allocation points in a sweep")

    parser = argparse.ArgumentParser(
        prog="ilac", description="Capacity / localization-bound trade-off calculator."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", parents=[common], help="capacity with optimal pilot")
    p.add_argument("--bandwidth-hz", type=float)
    p.add_argument("--symbols-comm", type=int)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("crb", parents=[common], help="localization bounds")
    p.add_argument("--bandwidth-hz", type=float)
    p.add_argument("--symbols", type=float)
    p.set_defaults(func=cmd_crb)

    p = sub.add_parser("tradeoff-time", parents=[common], help="time-domain split")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tau-l", type=float)
    g.add_argument("--loss", type=float, help="capacity loss in nats/s")
    p.set_defaults(func=cmd_tradeoff_time)

    p = sub.add_parser("tradeoff-freq", parents=[common], help="frequency-domain split")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--bl-hz", type=float)
    g.add_argument("--loss", type=float, help="capacity loss in nats/s")
    p.set_defaults(func=cmd_tradeoff_freq)

    p = sub.add_parser("frontier", parents=[common], help="write a frontier sweep CSV")
    p.add_argument("--name", default="frontier.csv", help="output file name")
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("validate", parents=[common], help="run every oracle audit")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    try:
        return args.func(args, out)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
