"""Run the clause checker over a configured list of fixtures and write reports."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .chartab import dixon_table
from .check import ClauseVerdict, FixtureContext, check_fixture, verdicts_csv, verdicts_json, verify_phi_bound
from .config import CheckConfig, FixtureEntry
from .fixtures import make_fixture
from .sselem import classify

log = logging.getLogger(__name__)


@dataclass
class FixtureResult:
    fid: str
    verdicts: list[ClauseVerdict]
    error: str = ""


def _tag_ok(ctx: FixtureContext, cls: int, tags: tuple[str, ...]) -> bool:
    if not tags:
        return True
    try:
        return classify(ctx.conj.rep_matrix(cls), ctx.spec).tag in tags
    except (ValueError, ArithmeticError):
        return False


def run_fixture(entry: FixtureEntry, cfg: CheckConfig) -> FixtureResult:
    try:
        fx = make_fixture(entry.fid, cfg.seed, entry.generator_file)
        if fx.spec.order() > cfg.enum_cap:
            raise OverflowError(f"|G| = {fx.spec.order()} exceeds the enumeration cap {cfg.enum_cap}")
        fx._table = dixon_table(fx.conj, class_cap=cfg.class_cap)
    except OverflowError as e:
        return FixtureResult(entry.fid, [], f"cap exceeded: {e}")
    ctx = FixtureContext(fx)
    vs = [
        v
        for v in check_fixture(ctx)
        if cfg.order_ok(v.o) and _tag_ok(ctx, ctx.conj.names.index(v.cls), cfg.tags)
    ]
    log.info("%s: %d rows", entry.fid, len(vs))
    return FixtureResult(entry.fid, vs)


def _cap_row(fid: str) -> ClauseVerdict:
    return ClauseVerdict(fid, "-", 0, 0, "-", 0, 0, "cap-exceeded", 0, False, "")


def run_sweep(cfg: CheckConfig, out_dir: Path | None = None) -> int:
    """Write the CSV and JSON reports; exit code 0 pass, 1 verdict failure, 2 cap exceeded."""
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as ex:
            results = list(ex.map(run_fixture, cfg.fixtures, [cfg] * len(cfg.fixtures)))
    else:
        results = [run_fixture(e, cfg) for e in cfg.fixtures]
    rows: list[ClauseVerdict] = []
    errors = {}
    for r in results:
        if r.error:
            errors[r.fid] = r.error
            rows.append(_cap_row(r.fid))
        rows.extend(r.verdicts)
    summary = verify_phi_bound([v for v in rows if v.clause != "cap-exceeded"])
    csv_path, json_path = cfg.csv_path, cfg.json_path
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        csv_path, json_path = out_dir / csv_path.name, out_dir / json_path.name
    csv_path.write_text(verdicts_csv(rows))
    extra = {
        "errors": errors,
        "summary": {
            "rows": summary.total,
            "failures": len(summary.failures),
            "sharpness_witnesses": len(summary.witnesses),
            "tabulated_below_bound": len(summary.below_bound_M),
        },
    }
    json_path.write_text(verdicts_json(rows, extra))
    if errors:
        return 2
    return 0 if summary.ok else 1
