"""Command line: sweep, verify-lemma, chartab, weil.

Exit codes: 0 pass, 1 verdict failure, 2 configuration or cap error.
"""

from __future__ import annotations

import argparse
import inspect
import json
import logging
import sys
from pathlib import Path

from .config import ConfigError, default_config, load_config

log = logging.getLogger("hhcheck")


def _cmd_sweep(args) -> int:
    from .sweep import run_sweep

    try:
        cfg = load_config(args.config) if args.config else default_config()
    except (ConfigError, OSError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    code = run_sweep(cfg, args.out_dir)
    print(f"sweep finished with exit code {code}")
    return code


def _cmd_verify_lemma(args) -> int:
    from .lemmas import LEMMAS, verify_lemma, VERIFIERS

    if args.name not in LEMMAS:
        print(f"unknown lemma {args.name!r}; choose from {', '.join(LEMMAS)}", file=sys.stderr)
        return 2
    given = {k: getattr(args, k) for k in ("q", "p", "b", "n", "eps") if getattr(args, k) is not None}
    accepted = inspect.signature(VERIFIERS[args.name]).parameters
    extra = set(given) - set(accepted)
    if extra:
        print(f"{args.name} does not take {sorted(extra)}", file=sys.stderr)
        return 2
    try:
        rep = verify_lemma(args.name, **given)
    except (ValueError, OverflowError) as e:
        print(f"cannot instantiate: {e}", file=sys.stderr)
        return 2
    print(rep.summary())
    for note in rep.notes:
        print(f"  note: {note}")
    for r in rep.rows if args.verbose else rep.mismatches:
        flag = "ok " if r.ok else "BAD"
        print(f"  {flag} {r.cls:>10} |g|={r.abs_order} o={r.o} {r.char_id} dim={r.dim} deg={r.deg} {r.clause} {r.note}")
    return 0 if rep.ok else 1


def _cmd_chartab(args) -> int:
    from .fixtures import make_fixture

    try:
        fx = make_fixture(args.fixture, args.seed)
        text = fx.table.dumps()
    except (ValueError, OverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    Path(args.out).write_text(text)
    print(f"{args.fixture}: {fx.conj.k} classes, table written to {args.out}")
    return 0


def _cmd_weil(args) -> int:
    from .fixtures import fixture_id, make_fixture
    from .weilchar import export_weil_table

    try:
        fx = make_fixture(fixture_id("GU", args.n, args.q), args.seed)
        doc = export_weil_table(fx.conj, args.q)
    except (ValueError, OverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.i is not None:
        if not 0 <= args.i <= args.q:
            print("i must lie in 0..q", file=sys.stderr)
            return 2
        doc["characters"] = [doc["characters"][args.i]]
    Path(args.out).write_text(json.dumps(doc, indent=1) + "\n")
    print(f"GU{args.n}({args.q}): {len(doc['characters'])} Weil characters written to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hhcheck", description="Minimal-polynomial degree checks for classical groups")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("sweep", help="run the clause checker over a fixture list")
    s.add_argument("--config", type=Path, help="key-value config file (default fixture list when omitted)")
    s.add_argument("--out-dir", type=Path, help="overrides the directory of the configured report paths")
    s.set_defaults(func=_cmd_sweep)

    s = sub.add_parser("verify-lemma", help="check one lemma on a concrete instance")
    s.add_argument("name")
    s.add_argument("--q", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--b", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--eps", choices=["+", "-"])
    s.set_defaults(func=_cmd_verify_lemma)

    s = sub.add_parser("chartab", help="compute and export a fixture's character table")
    s.add_argument("--fixture", required=True)
    s.add_argument("--out", required=True, type=Path)
    s.add_argument("--seed", type=int, default=1)
    s.set_defaults(func=_cmd_chartab)

    s = sub.add_parser("weil", help="export Weil characters of GU_n(q)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--i", type=int)
    s.add_argument("--out", required=True, type=Path)
    s.add_argument("--seed", type=int, default=1)
    s.set_defaults(func=_cmd_weil)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
