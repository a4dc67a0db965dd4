"""Run the clause checker over the default fixtures (or a config) and print a summary."""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from hhcheck.config import default_config, load_config
from hhcheck.sweep import run_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", type=Path)
    ap.add_argument("--out-dir", type=Path, default=Path("sweep_out"))
    args = ap.parse_args()
    cfg = load_config(args.config) if args.config else default_config()
    code = run_sweep(cfg, args.out_dir)
    doc = json.loads((args.out_dir / cfg.json_path.name).read_text())
    clauses = Counter(r["clause"] for r in doc["rows"])
    print(json.dumps(doc["summary"], indent=1))
    for clause, n in sorted(clauses.items()):
        print(f"{clause:>18}: {n}")
    for fid, err in doc["errors"].items():
        print(f"{fid}: {err}")
    print(f"reports in {args.out_dir}, exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
