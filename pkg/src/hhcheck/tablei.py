"""Small-degree data for the classical groups with exceptional Schur
multiplier, stored as read-only rows.

Each row: simple quotient, |Theta(Z_0)| (None when blank), condition on the
representation characteristic as printed, element orders, class names, the
dimension entry and the degree entry.  Dimension entries are strings in the
printed form ('1<d<5', 'd=3,4,6', '8', ...); degree entries are 'd', '|g|-1',
a number, or a lower bound '>=k'.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Table1Row:
    group: str
    z0: int | None
    ell: str
    orders: tuple[int, ...]
    names: tuple[str, ...]
    dim: str
    deg: str

    @property
    def modular_only(self) -> bool:
        """Rows whose content needs an l-modular representation."""
        e = self.ell.replace(" ", "")
        return e.startswith("p=l") or e in ("l=3",) or (e.isdigit())

    def dim_matches(self, d: int) -> bool:
        s = self.dim.replace(" ", "")
        if not s:
            return False
        if s.startswith("1<d<"):
            return 1 < d < int(s[4:])
        if s.startswith("d="):
            return d in {int(x) for x in s[2:].split(",")}
        return d == int(s)

    def deg_value(self, d: int, g_order: int) -> int | None:
        s = self.deg.replace(" ", "")
        if s == "d":
            return d
        if s == "|g|-1":
            return g_order - 1
        if s.startswith(">="):
            return None
        return int(s)

    def ell_allows_zero(self) -> bool:
        """Whether the row applies to characteristic-zero representations."""
        e = self.ell.replace(" ", "")
        if e == "":
            return True
        if e.startswith("!=") or e.startswith("l!="):
            return True
        return False


def _r(group, z0, ell, orders, names, dim, deg):
    return Table1Row(group, z0, ell, tuple(orders), tuple(names), dim, deg)


TABLE_I: tuple[Table1Row, ...] = (
    _r("PSL2(4)", 2, "", [5], ["5A", "5B"], "1<d<5", "d"),
    _r("PSL2(4)", 2, "", [3], ["3A"], "2", "2"),
    _r("PSL2(9)", 3, "5", [4, 5], ["4A", "5A", "5B"], "3", "3"),
    _r("PSL3(2)", 2, "7", [7], ["7A", "7B"], "1<d<7", "d"),
    _r("PSL3(2)", 2, "7", [3], ["3A"], "2", "2"),
    _r("PSL3(2)", None, "!=7", [7], ["7A", "7B"], "d=3,4,6", "d"),
    _r("PSL3(2)", None, "!=7", [3], ["3A"], "4", "2"),
    _r("PSL3(4)", 16, "", [7], ["7A", "7B"], "6", "6"),
    _r("PSU4(2)", 2, "", [3], ["3C"], "4", "2"),
    _r("PSU4(2)", 2, "", [5, 9], ["5A", "9A", "9B"], "4", "4"),
    _r("PSU4(2)", 1, "", [9], ["9A", "9B"], "5", "5"),
    _r("PSU4(2)", None, "l!=3", [9], ["9A", "9B"], "6", "6"),
    _r("PSU4(2)", 1, "", [9], ["9A", "9B"], "10", "7"),
    _r("PSU4(2)", None, "l=3", [9], ["9A", "9B"], "16", "8"),
    _r("PSU4(2)", None, "l!=3", [9], ["9A", "9B"], "20", "8"),
    _r("PSL4(2)", 2, "", [3, 5], ["3A", "5A"], "8", "|g|-1"),
    _r("PSp6(2)", 2, "", [3, 5, 9], ["3A", "5A", "9A"], "8", "|g|-1"),
    _r("PSp6(2)", 1, "", [9], ["9A"], "7", "7"),
    _r("PSU4(3)", 3, "", [4, 7], ["4A", "7A", "7B"], "6", "|g|-1"),
    _r("PSU4(3)", 3, "", [8], ["8A"], "6", "6"),
    _r("O8+(2)", 2, "", [3, 5, 9], ["3A", "3B", "5A", "5B", "9B", "9C"], "8", "|g|-1"),
    _r("O7(3)", 3, "p=l=2", [4, 8], ["4A", "8A", "8B"], "", ">=3,>=5"),
    _r("PSU6(2)", 2, "p=l=3", [9], ["9A"], "9", ">=7"),
)


def rows_for(group: str) -> list[Table1Row]:
    return [r for r in TABLE_I if r.group == group]


def match_row(group: str, g_order: int, dim: int, deg: int) -> Table1Row | None:
    """A characteristic-zero row of the table consistent with (|g|, dim, deg)."""
    for r in rows_for(group):
        if not r.ell_allows_zero() or g_order not in r.orders or not r.dim_matches(dim):
            continue
        v = r.deg_value(dim, g_order)
        if v is not None and v == deg:
            return r
    return None
