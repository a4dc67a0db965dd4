"""Fixture groups: seeded generators, cached enumeration, classes and tables."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import ffmat as fm
from .chartab import CharacterTable, ConjData, GroupEnum, conjugacy, dixon_table, enumerate_group
from .classgrp import GroupSpec, make_group, random_member

DEFAULT_FIXTURES = (
    "SL2(4)", "SL2(5)", "SL2(7)", "SL2(8)", "SL2(9)", "SL2(11)", "SL2(13)",
    "GU2(2)", "GU2(3)", "GU2(4)",
    "GU3(2)", "GU3(3)", "GU4(2)",
    "SL3(2)", "SL3(3)",
    "Sp4(3)", "Sp6(2)",
    "GO-4(3)",
)  # fmt: skip


def parse_fixture_id(fid: str) -> tuple[str, int, int, str | None]:
    """'SL2(5)' -> ('SL', 2, 5, None); 'GO-4(3)' -> ('GO', 4, 3, '-')."""
    head, _, rest = fid.partition("(")
    if not rest.endswith(")"):
        raise ValueError(f"bad fixture id {fid!r}")
    q = int(rest[:-1])
    eps = None
    fam = head.rstrip("0123456789")
    n = int(head[len(fam) :])
    if fam and fam[-1] in "+-":
        eps = fam[-1]
        fam = fam[:-1]
    return fam, n, q, eps


def fixture_id(family: str, n: int, q: int, eps: str | None = None) -> str:
    e = eps if eps in ("+", "-") else ""
    return f"{family}{e}{n}({q})"


def write_matrices(path: Path, mats: list[np.ndarray]) -> None:
    """One matrix per block, rows as space-separated field codes, blank line between blocks."""
    blocks = ["\n".join(" ".join(str(int(x)) for x in row) for row in M) for M in mats]
    Path(path).write_text("\n\n".join(blocks) + "\n")


def read_matrices(path: Path) -> list[np.ndarray]:
    out = []
    for block in Path(path).read_text().strip().split("\n\n"):
        rows = [list(map(int, line.split())) for line in block.strip().splitlines() if line.strip()]
        if rows:
            out.append(np.array(rows, dtype=np.int64))
    return out


def find_generators(G: GroupSpec, seed: int = 1, max_tries: int = 50) -> list[np.ndarray]:
    """Seeded random members, adding more until they generate a group of the full order."""
    rng = random.Random(seed)
    target = G.order()
    gens = [random_member(G, rng), random_member(G, rng)]
    for _ in range(max_tries):
        E = enumerate_group(gens, G.field, cap=target)
        if E.size == target:
            return gens
        gens.append(random_member(G, rng))
    raise RuntimeError(f"could not generate {G}")


@dataclass(eq=False)
class Fixture:
    fid: str
    spec: GroupSpec
    gens: list[np.ndarray]
    _enum: GroupEnum | None = None
    _conj: ConjData | None = None
    _table: CharacterTable | None = None
    extra: dict = field(default_factory=dict)

    @property
    def group(self) -> GroupEnum:
        if self._enum is None:
            self._enum = enumerate_group(self.gens, self.spec.field, cap=max(self.spec.order(), 1), name=self.fid)
            if self._enum.size != self.spec.order():
                raise RuntimeError(f"{self.fid}: generators give {self._enum.size} elements")
        return self._enum

    @property
    def conj(self) -> ConjData:
        if self._conj is None:
            self._conj = conjugacy(self.group)
        return self._conj

    @property
    def table(self) -> CharacterTable:
        if self._table is None:
            self._table = dixon_table(self.conj)
        return self._table


def make_fixture(fid: str, seed: int = 1, generator_file: Path | None = None) -> Fixture:
    fam, n, q, eps = parse_fixture_id(fid)
    G = make_group(fam, n, q, eps, name=fid)
    if generator_file is not None:
        gens = read_matrices(generator_file)
        for g in gens:
            if g.shape != (n, n) or not G.contains(g):
                raise ValueError(f"{generator_file}: generator not in {fid}")
    else:
        gens = find_generators(G, seed)
    return Fixture(fid, G, gens)


@lru_cache(maxsize=None)
def get_fixture(fid: str, seed: int = 1) -> Fixture:
    """Process-wide cache so tests share enumerations and tables."""
    return make_fixture(fid, seed)


def block_embed(n_big: int, K_pad: int = 1):
    """Embedding h -> diag(h, 1, ..., 1) into dimension n_big."""

    def embed(h: np.ndarray) -> np.ndarray:
        M = fm.identity(n_big)
        k = h.shape[0]
        M[:k, :k] = h
        return M

    return embed
