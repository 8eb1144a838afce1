"""Command-line front end.

Subcommands: build-trellis, complexity-table, decode, simulate, export.
Human-readable tables go to stdout; --json switches to machine output;
diagnostics go to stderr and failures exit nonzero.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .code import CssCode, base_code, builtin_codes, load_code
from .decoder import ChannelModel, css_dml_decode, dml_decode, ndml_decode
from .oracle import brute_dml, brute_dml_sector, brute_ndml
from .sim import SimConfig, default_threads, run_monte_carlo
from .trellis import (Trellis, build_min_trellis, build_multigoal_trellis,
                      MULTIGOAL_METHODS)

# Published reference complexities (V, E, 2E-V) for the bundled codes, used
# by complexity-table to flag divergences.  T_X is the trellis whose
# syndrome comes from the X-type checks (it decodes the Z component), T_Z
# symmetrically.
REFERENCE_COMPLEXITIES = {
    "code422": {"T": (101, 148, 195), "T_X": (19, 22, 25), "T_Z": (19, 22, 25)},
    "steane713": {"T": (185, 293, 401), "T_X": (33, 42, 51), "T_Z": (33, 42, 51)},
    "shor913": {"T": (81, 131, 183), "T_X": (27, 42, 57), "T_Z": (27, 30, 32)},
    "rm1513": {"T": (4773, 8852, 12931), "T_X": (219, 273, 246),
               "T_Z": (219, 374, 529)},
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtrellis",
        description="Minimal trellises and ML decoding for stabilizer codes")
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("build-trellis", help="construct a code trellis")
    p.add_argument("--code", required=True,
                   help=f"built-in name ({', '.join(builtin_codes())}) or file")
    p.add_argument("--multigoal", action="store_true",
                   help="one goal per stabilizer coset (default: single goal)")
    p.add_argument("--method", choices=MULTIGOAL_METHODS,
                   default="extended_shannon")
    p.add_argument("--sector", choices=("x", "z"),
                   help="build one CSS sector trellis instead")
    p.add_argument("--out", help="write trellis JSON here")
    p.add_argument("--dot", help="write Graphviz DOT here")
    p.add_argument("--json", action="store_true",
                   help="print the complexity summary as JSON")
    p.set_defaults(func=cmd_build_trellis)

    p = sub.add_parser("complexity-table",
                       help="T / T_X / T_Z sizes for a list of codes")
    p.add_argument("--codes", default=",".join(builtin_codes()),
                   help="comma-separated names or paths")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_complexity_table)

    p = sub.add_parser("decode", help="decode one syndrome")
    p.add_argument("--code", required=True)
    p.add_argument("--mode", choices=("ndml", "dml", "css"), required=True)
    p.add_argument("--syndrome", required=True,
                   help="bits, MSB = first generator in file order; css mode "
                        "takes x-component/z-component bits separated by '/'")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--tie-break", choices=("canonical", "random"),
                   default="canonical")
    p.add_argument("--seed", type=int, default=0,
                   help="rng seed for --tie-break random")
    p.add_argument("--oracle", action="store_true",
                   help="print brute-force reference values side by side")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte-Carlo logical error rate")
    p.add_argument("--code", required=True)
    p.add_argument("--mode", default="dml",
                   help="ndml, dml, css, all, or comma-separated list")
    p.add_argument("--p", required=True,
                   help="lo:hi:step range or comma-separated values")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: QTRELLIS_THREADS or 1)")
    p.add_argument("--out", help="write a CSV report here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export", help="convert a trellis JSON file")
    p.add_argument("--infile", required=True, metavar="IN",
                   help="trellis JSON produced by build-trellis")
    p.add_argument("--format", choices=("json", "dot"), default="dot")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)
    return parser


def _build_requested(args) -> Trellis:
    code = load_code(args.code)
    if args.sector:
        if not isinstance(code, CssCode):
            raise ValueError("--sector needs a CSS code definition")
        return build_multigoal_trellis(code.sector(args.sector).joint(),
                                       args.method)
    if args.multigoal:
        return build_multigoal_trellis(base_code(code), args.method)
    return build_min_trellis(base_code(code))


def cmd_build_trellis(args) -> int:
    trellis = _build_requested(args)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(trellis.to_json_dict(), fh, indent=1)
            fh.write("\n")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(trellis.to_dot())
    rep = trellis.complexity()
    if args.json:
        print(json.dumps({
            "num_vertices": rep.num_vertices, "num_edges": rep.num_edges,
            "viterbi_cost": rep.viterbi_cost,
            "state_profile": rep.state_profile,
            "edge_profile": rep.edge_profile}))
    else:
        print(f"vertices {rep.num_vertices}  edges {rep.num_edges}  "
              f"cost(2E-V) {rep.viterbi_cost}")
        print("state profile:", ",".join(map(str, rep.state_profile)))
        print("edge profile: ", ",".join(map(str, rep.edge_profile)))
    return 0


def complexity_rows(code_ids) -> list[dict]:
    rows = []
    for cid in code_ids:
        code = load_code(cid)
        entry: dict = {"code": cid}
        entry["T"] = build_multigoal_trellis(
            base_code(code)).complexity().triple()
        if isinstance(code, CssCode):
            # T_X presents the Z-component sector (X-type checks), and
            # vice versa; this matches the published column convention.
            entry["T_X"] = build_multigoal_trellis(
                code.sector_z.joint()).complexity().triple()
            entry["T_Z"] = build_multigoal_trellis(
                code.sector_x.joint()).complexity().triple()
        ref = REFERENCE_COMPLEXITIES.get(cid)
        if ref:
            entry["mismatch"] = sorted(
                col for col in ("T", "T_X", "T_Z")
                if col in entry and entry[col] != ref[col])
        rows.append(entry)
    return rows


def cmd_complexity_table(args) -> int:
    ids = [c for c in args.codes.split(",") if c]
    rows = complexity_rows(ids)
    if args.json:
        print(json.dumps(rows))
        return 0
    cols = ["T", "T_X", "T_Z"]
    header = f"{'code':<12}" + "".join(f"{c + ' (V,E,2E-V)':<22}" for c in cols)
    print(header)
    for row in rows:
        cells = []
        for c in cols:
            if c not in row:
                cells.append(f"{'-':<22}")
                continue
            text = ",".join(map(str, row[c]))
            if row.get("mismatch") and c in row["mismatch"]:
                text += " *"
            cells.append(f"{text:<22}")
        print(f"{row['code']:<12}" + "".join(cells))
    if any(row.get("mismatch") for row in rows):
        print("* differs from the published reference value")
    return 0


def _parse_bits(text: str) -> tuple[int, ...]:
    if set(text) - {"0", "1"}:
        raise ValueError(f"syndrome {text!r} must be over 0/1")
    return tuple(int(b) for b in text)


def cmd_decode(args) -> int:
    code = load_code(args.code)
    base = base_code(code)
    ch = ChannelModel.depolarizing(args.p)
    payload: dict = {"code": args.code, "mode": args.mode, "p": args.p}
    if args.mode == "css":
        if not isinstance(code, CssCode):
            raise ValueError("css mode needs a CSS code definition")
        if "/" not in args.syndrome:
            raise ValueError("css mode takes '<x bits>/<z bits>'")
        sx_text, sz_text = args.syndrome.split("/", 1)
        sx, sz = _parse_bits(sx_text), _parse_bits(sz_text)
        tx = build_multigoal_trellis(code.sector_x.joint())
        tz = build_multigoal_trellis(code.sector_z.joint())
        result = css_dml_decode(tx, tz, code, sx, sz, ch)
        if args.oracle:
            ref_x = brute_dml_sector(code, "x", sx, ch.sector_marginal("X"))
            ref_z = brute_dml_sector(code, "z", sz, ch.sector_marginal("Z"))
            payload["oracle"] = {
                "x": {_bits_str(k): v for k, v in ref_x.items()},
                "z": {_bits_str(k): v for k, v in ref_z.items()}}
    else:
        sigma = _parse_bits(args.syndrome)
        if args.mode == "ndml":
            trellis = build_min_trellis(base)
            rng = np.random.default_rng(args.seed)
            result = ndml_decode(trellis, base, sigma, ch,
                                 tie_break=args.tie_break, rng=rng)
            if args.oracle:
                ref_e, ref_p = brute_ndml(base, sigma, ch)
                payload["oracle"] = {"estimate": str(ref_e),
                                     "max_prob": ref_p}
        else:
            trellis = build_multigoal_trellis(base)
            result = dml_decode(trellis, base, sigma, ch)
            if args.oracle:
                ref = brute_dml(base, sigma, ch)
                payload["oracle"] = {_bits_str(k): v for k, v in ref.items()}
    payload["estimate"] = str(result.error_estimate)
    payload["log_prob"] = result.log_prob
    if result.winning_logical is not None:
        payload["winning_logical"] = _bits_str(result.winning_logical)
    if result.coset_log_probs is not None:
        payload["coset_log_probs"] = {
            _bits_str(k): v for k, v in sorted(result.coset_log_probs.items())}
        payload["op_counts"] = {"mults": result.mults, "adds": result.adds}
    if args.json:
        print(json.dumps(payload))
        return 0
    print(f"estimate: {payload['estimate']}   log-prob {result.log_prob:.6f}")
    if "winning_logical" in payload:
        print(f"winning logical coset: {payload['winning_logical']}")
    if "coset_log_probs" in payload:
        print("coset log-probabilities:")
        for label, lp in payload["coset_log_probs"].items():
            print(f"  {label or '(trivial)'}  {lp:.6f}")
    if "oracle" in payload:
        print("oracle:", json.dumps(payload["oracle"]))
    return 0


def _bits_str(bits) -> str:
    return "".join(map(str, bits))


def _parse_p_range(text: str) -> tuple[float, ...]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("p range must be lo:hi:step")
        lo, hi, step = map(float, parts)
        if step <= 0:
            raise ValueError("p range step must be positive")
        out = []
        value = lo
        while value <= hi + 1e-12:
            out.append(round(value, 12))
            value += step
        return tuple(out)
    return tuple(float(v) for v in text.split(",") if v)


def cmd_simulate(args) -> int:
    modes = ("ndml", "dml", "css") if args.mode == "all" \
        else tuple(m for m in args.mode.split(",") if m)
    threads = args.threads if args.threads is not None else default_threads()
    cfg = SimConfig(code_id=args.code, modes=modes,
                    p_values=_parse_p_range(args.p), trials=args.trials,
                    seed=args.seed, threads=threads)
    report = run_monte_carlo(cfg)
    header = ["code", "mode", "p", "trials", "failures", "rate",
              "ci_lo", "ci_hi"]
    records = [[row.code_id, row.mode, f"{row.p:g}", row.trials,
                row.failures, f"{row.rate:.5f}", f"{row.ci_lo:.5f}",
                f"{row.ci_hi:.5f}"] for row in report.rows]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(records)
    print("  ".join(f"{h:>9}" for h in header))
    for record in records:
        print("  ".join(f"{str(v):>9}" for v in record))
    print(f"wall clock: {report.wall_clock:.2f}s", file=sys.stderr)
    return 0


def cmd_export(args) -> int:
    with open(args.infile) as fh:
        trellis = Trellis.from_json_dict(json.load(fh))
    with open(args.out, "w") as fh:
        if args.format == "dot":
            fh.write(trellis.to_dot())
        else:
            json.dump(trellis.to_json_dict(), fh, indent=1)
            fh.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
