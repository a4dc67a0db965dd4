"""Sweep configuration: a dataclass plus a small key-value parser.

Grammar (one setting per line, '#' starts a comment, blank lines ignored):

    fixtures = SL2(4), SL2(5), GU3(2)     # comma separated, may repeat
    fixture = GO-4(3)                      # single fixture, may repeat
    generators.GU3(2) = gens/gu32.txt      # generator file for one fixture
    ell = 0
    min_order = 2                          # bounds on o(g)
    max_order = 0                          # 0 means no upper bound
    tags = irreducible, torus-diagonal     # empty means every class
    csv = sweep.csv
    json = sweep.json
    enum_cap = 2000000
    class_cap = 200
    workers = 1
    seed = 1

Relative paths are resolved against the config file's directory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .chartab import CLASS_CAP, ENUM_CAP
from .fixtures import DEFAULT_FIXTURES, parse_fixture_id
from .sselem import TAGS

SUPPORTED_FAMILIES = ("GL", "SL", "GU", "SU", "Sp", "GO")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FixtureEntry:
    fid: str
    family: str
    n: int
    q: int
    eps: str | None
    generator_file: Path | None = None


@dataclass
class CheckConfig:
    fixtures: list[FixtureEntry] = field(default_factory=list)
    ell: int = 0
    min_order: int = 2
    max_order: int = 0
    tags: tuple[str, ...] = ()
    csv_path: Path = Path("sweep.csv")
    json_path: Path = Path("sweep.json")
    enum_cap: int = ENUM_CAP
    class_cap: int = CLASS_CAP
    workers: int = 1
    seed: int = 1

    def validate(self) -> None:
        if self.ell != 0:
            raise ConfigError("only ell = 0 is supported")
        for name in ("enum_cap", "class_cap", "workers", "seed"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.min_order < 1 or self.max_order < 0:
            raise ConfigError("order bounds must be nonnegative")
        bad = [t for t in self.tags if t not in TAGS]
        if bad:
            raise ConfigError(f"unknown tags {bad}; choose from {TAGS}")
        if not self.fixtures:
            raise ConfigError("no fixtures")

    def order_ok(self, o: int) -> bool:
        return o >= self.min_order and (self.max_order == 0 or o <= self.max_order)


def fixture_entry(fid: str, generator_file: Path | None = None) -> FixtureEntry:
    try:
        fam, n, q, eps = parse_fixture_id(fid.strip())
    except ValueError as e:
        raise ConfigError(str(e)) from None
    if fam not in SUPPORTED_FAMILIES:
        raise ConfigError(f"unknown family {fam!r} in {fid!r}")
    if fam == "GO" and n % 2 == 0 and eps not in ("+", "-"):
        raise ConfigError(f"{fid!r}: even-dimensional orthogonal groups need a sign")
    return FixtureEntry(fid.strip(), fam, n, q, eps, generator_file)


def default_config() -> CheckConfig:
    return CheckConfig(fixtures=[fixture_entry(f) for f in DEFAULT_FIXTURES])


def parse_config(text: str, base: Path = Path(".")) -> CheckConfig:
    cfg = CheckConfig()
    fids: list[str] = []
    gens: dict[str, Path] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = key.strip(), value.strip()
        try:
            if key == "fixtures":
                fids += [v.strip() for v in value.split(",") if v.strip()]
            elif key == "fixture":
                fids.append(value)
            elif key.startswith("generators."):
                gens[key[len("generators.") :]] = base / value
            elif key in ("ell", "min_order", "max_order", "enum_cap", "class_cap", "workers", "seed"):
                setattr(cfg, key, int(value))
            elif key == "tags":
                cfg.tags = tuple(v.strip() for v in value.split(",") if v.strip())
            elif key == "csv":
                cfg.csv_path = base / value
            elif key == "json":
                cfg.json_path = base / value
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: {e}") from None
    unknown = set(gens) - set(fids)
    if unknown:
        raise ConfigError(f"generator files for fixtures not listed: {sorted(unknown)}")
    cfg.fixtures = [fixture_entry(f, gens.get(f)) for f in fids]
    cfg.validate()
    return cfg


def load_config(path: Path) -> CheckConfig:
    path = Path(path)
    return parse_config(path.read_text(), path.parent)
