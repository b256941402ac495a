"""Command-line front end.

Subcommands:
  params   evaluate the bound formulas for a parameter tuple -> JSON/CSV
  encode   build a code from a JSON config and materialise a cluster state
  fail     mark one node as failed in a state file
  repair   rebuild the failed node via the download protocol, report traffic
  verify   cross-check the cluster contents against erasure decoding
  bench    repeated repair trials with per-trial RNG streams -> CSV

Configs are JSON objects; see README for the schema.  The only environment
override is AGREPAIR_OUTPUT_DIR, which re-roots relative output paths.
Exit status: 0 success, 1 verification mismatch, 2 bad config/preconditions.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bounds, codes, repair, sim
from .gf import tower

BENCH_COLUMNS = ("target", "d", "symbols", "bits", "bound_bits", "equal")


class ConfigError(ValueError):
    pass


def _load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _out_path(path) -> Path:
    path = Path(path)
    base = os.environ.get("AGREPAIR_OUTPUT_DIR")
    if base and not path.is_absolute():
        return Path(base) / path
    return path


def code_from_config(cfg: dict) -> codes.EvalCode:
    kind = cfg.get("kind")
    if kind not in ("rs", "hermitian"):
        raise ConfigError(f"kind must be 'rs' or 'hermitian', got {kind!r}")
    try:
        p, t = int(cfg["p"]), int(cfg["t"])
    except KeyError as exc:
        raise ConfigError(f"missing field {exc}") from exc
    tw = tower(p, t)
    if kind == "rs":
        if cfg.get("k") is not None:
            k = int(cfg["k"])
        elif cfg.get("s") is not None:
            k = int(cfg["s"]) + 1
        else:
            raise ConfigError("rs config needs 'k' (or 's')")
        n = int(cfg.get("n") or tw.q)
        return codes.rs_code(tw, k=k, n=n)
    if cfg.get("r") is not None and int(cfg["r"]) ** 2 != tw.q:
        raise ConfigError(f"r={cfg['r']} does not square to q={tw.q}")
    if cfg.get("s") is None:
        raise ConfigError("hermitian config needs 's'")
    curve = codes.hermitian_curve(tw)
    n = int(cfg["n"]) if cfg.get("n") is not None else None
    return codes.hermitian_code(curve, s=int(cfg["s"]), n=n)


def _helper_set(cfg: dict, code: codes.EvalCode, target: int, rng) -> list | None:
    policy = cfg.get("helpers", "full")
    if policy == "full":
        return None
    if isinstance(policy, dict) and policy.get("policy") == "random":
        d = int(policy["d"])
        others = np.asarray([j for j in range(code.n) if j != target])
        if d > others.size:
            raise ConfigError(f"helper count d={d} exceeds n-1={others.size}")
        return sorted(int(x) for x in rng.choice(others, size=d, replace=False))
    raise ConfigError(f"unknown helper policy {policy!r}")


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def cmd_params(args) -> int:
    cfg = _load_config(args.config)
    try:
        report = bounds.bound_report(**cfg)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.format == "json":
        text = json.dumps(report.to_dict(), indent=1, sort_keys=True) + "\n"
    else:
        lines = ["name,value,status,reason"]
        for name, value, status, reason in report.rows():
            lines.append(f"{name},{value},{status},\"{reason}\"")
        text = "\n".join(lines) + "\n"
    if args.out:
        _out_path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_encode(args) -> int:
    cfg = _load_config(args.config)
    code = code_from_config(cfg)
    cluster = sim.make_cluster(code, int(cfg.get("stripes", 1)), int(cfg.get("seed", 0)))
    sim.save_cluster(_out_path(args.state), cluster)
    print(f"encoded {cluster.num_stripes} stripe(s) across {cluster.n} nodes -> {args.state}")
    return 0


def cmd_fail(args) -> int:
    path = _out_path(args.state)
    cluster = sim.load_cluster(path)
    sim.fail_node(cluster, args.node)
    sim.save_cluster(path, cluster)
    print(f"node {args.node} failed; symbols withheld")
    return 0


def cmd_repair(args) -> int:
    path = _out_path(args.state)
    cluster = sim.load_cluster(path)
    if cluster.failed is None:
        raise ConfigError("nothing to repair: no node has failed")
    records = sim.repair_failed(cluster, l=args.l, variant=args.variant)
    sim.save_cluster(path, cluster)
    all_ok = all(r.equal for r in records)
    for r in records:
        print(
            f"stripe {r.stripe}: target={r.target} helpers={r.helper_count} "
            f"symbols={r.symbols} bits={r.bits:g} bound_bits={r.bound_bits:g} equal={r.equal}"
        )
    if args.report:
        tw = cluster.code.tower
        payload = {
            "config": {
                "kind": cluster.code.kind,
                "p": tw.p,
                "t": tw.t,
                "s": cluster.code.s,
                "n": cluster.code.n,
                "l": args.l,
                "variant": args.variant,
            },
            "records": [r.summary() for r in records],
            "transcripts": [repair.transcript_to_json(r.transcript) for r in records],
        }
        _out_path(args.report).write_text(
            json.dumps(payload, indent=1, sort_keys=True) + "\n", encoding="utf-8"
        )
    return 0 if all_ok else 1


def cmd_verify(args) -> int:
    cluster = sim.load_cluster(_out_path(args.state))
    ok = sim.verify_cluster(cluster)
    print("verify:", "ok" if ok else "MISMATCH")
    return 0 if ok else 1


def cmd_bench(args) -> int:
    cfg = _load_config(args.config)
    code = code_from_config(cfg)
    trials = int(cfg.get("trials", 10))
    seed = int(cfg.get("seed", 0))
    l = int(cfg.get("l", 1))
    variant = cfg.get("variant")
    rows = []
    for trial in range(trials):
        rng = np.random.default_rng(np.random.PCG64([seed, trial]))
        target = int(rng.integers(code.n))
        helpers = _helper_set(cfg, code, target, rng)
        msg = rng.integers(0, code.tower.q, size=code.k, dtype=np.int64)
        cw = codes.encode(code, msg)
        scheme = repair.build_scheme(code, target, helpers=helpers, l=l, variant=variant)
        value, transcript = repair.run_repair(scheme, cw.symbols)
        rows.append(
            {
                "target": target,
                "d": len(scheme.helpers),
                "symbols": transcript.total_symbols,
                "bits": transcript.total_bits,
                "bound_bits": repair.bound_symbols(scheme) * scheme.bits_per_symbol(),
                "equal": value.code == int(cw.symbols[target]),
            }
        )
    out = _out_path(args.out) if args.out else None
    fh = open(out, "w", newline="", encoding="utf-8") if out else sys.stdout
    try:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out:
            fh.close()
    if not all(r["equal"] for r in rows):
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agrepair",
        description="Trace repair for Reed-Solomon and Hermitian codes over a simulated cluster.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="evaluate bound formulas")
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("encode", help="encode stripes into a cluster state file")
    p.add_argument("--config", required=True)
    p.add_argument("--state", required=True)
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("fail", help="fail one node")
    p.add_argument("--state", required=True)
    p.add_argument("--node", type=int, required=True)
    p.set_defaults(fn=cmd_fail)

    p = sub.add_parser("repair", help="repair the failed node")
    p.add_argument("--state", required=True)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--variant", choices=(repair.VARIANT_RS, repair.VARIANT_LINE, repair.VARIANT_WEAK))
    p.add_argument("--report")
    p.set_defaults(fn=cmd_repair)

    p = sub.add_parser("verify", help="cross-check stored symbols against erasure decoding")
    p.add_argument("--state", required=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="repeated repair trials, CSV metrics")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, sim.StateFormatError, repair.RepairPreconditionError,
            codes.DualVectorError, codes.DecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
