"""Export character tables and Weil character tables of the small fixtures as JSON."""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from hhcheck.fixtures import get_fixture
from hhcheck.weilchar import export_weil_table

TABLES = ("SL2(4)", "SL2(5)", "SL2(7)", "SL2(8)", "GU2(3)", "GU3(2)", "SL3(2)")
WEIL = (("GU3(2)", 2), ("GU2(3)", 3), ("GU2(4)", 4), ("GU4(2)", 2))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("tables"))
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for fid in TABLES:
        fx = get_fixture(fid)
        (args.out_dir / f"{fid}.json").write_text(fx.table.dumps())
        print(f"{fid}: {fx.conj.k} classes, degrees {fx.table.degrees}")
    for fid, q in WEIL:
        doc = export_weil_table(get_fixture(fid).conj, q)
        (args.out_dir / f"{fid}-weil.json").write_text(json.dumps(doc, indent=1) + "\n")
        print(f"{fid}: Weil degrees {[c['degree'] for c in doc['characters']]}")


if __name__ == "__main__":
    main()
