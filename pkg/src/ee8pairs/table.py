"""The verification table: expected invariants for the eleven pair classes.

Row names encode the dihedral order r and the rank s as DIHr(s); the two
rank-16 order-8 rows are told apart by the isometry type of ann_M(N).  Two
published discriminant entries are dimensionally inconsistent with their
stated ranks and are carried here as flagged notes rather than expectations;
the computed Smith chain is authoritative for those rows.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TableRow:
    name: str
    dihedral_order: int
    rank: int
    smith_expected: tuple[int, ...] | None
    smith_note: str | None
    contains: tuple[str, ...]
    contains_isometric: bool
    intersection: str | None  # expected M cap N type; None = computed/reported
    ann_type: str | None  # expected ann_M(N) type for the order-8 rows
    in_leech: bool
    # index of (M^N + ann_M(N) + ann_N(M)) in L for the order-4 rows; fixed
    # by determinant arithmetic: idx^2 = det(parts)/det(L)
    decomposition_index: int | None = None

    def __post_init__(self):
        r, s = parse_name(self.name)
        if r != self.dihedral_order or s != self.rank:
            raise ValueError(f"name {self.name} disagrees with order/rank")


def parse_name(name: str) -> tuple[int, int]:
    """DIHr(s[,P]) -> (r, s)."""
    body = name[name.index("H") + 1 :]
    r, rest = body.split("(", 1)
    s = rest.rstrip(")").split(",")[0]
    return int(r), int(s)


def normalize_name(name: str) -> str:
    """Accept DIH6_16, dih6(16), DIH8_16_DD4 etc.; return canonical form."""
    s = name.strip().upper().replace(" ", "")
    if "(" in s:
        return s
    parts = s.split("_")
    if len(parts) == 2:
        return f"{parts[0]}({parts[1]})"
    if len(parts) == 3:
        return f"{parts[0]}({parts[1]},{parts[2]})"
    raise ValueError(f"cannot parse row name {name!r}")


TABLE: tuple[TableRow, ...] = (
    TableRow("DIH4(12)", 4, 12, (1,) * 4 + (2,) * 6 + (4,) * 2, None,
             ("DD4", "DD4", "DD4"), False, "DD4", None, True,
             decomposition_index=16),
    TableRow("DIH4(14)", 4, 14, (1,) * 4 + (2,) * 8 + (4,) * 2, None,
             ("AA1", "AA1", "DD6", "DD6"), False, "AA1+AA1", None, True,
             decomposition_index=16),
    TableRow("DIH4(15)", 4, 15, None,
             "published entry 1^2 2^14 lists 16 invariants for a rank-15 "
             "lattice; computed chain reported instead",
             ("AA1", "EE7", "EE7"), False, "AA1", None, False,
             decomposition_index=4),
    TableRow("DIH4(16)", 4, 16, (2,) * 16, None,
             ("EE8", "EE8"), True, "0", None, True,
             decomposition_index=1),
    TableRow("DIH6(14)", 6, 14, (1,) * 9 + (3, 3, 3, 6, 6),
             "published table entry 1^7 3^3 6^2 lists 12 invariants for a "
             "rank-14 lattice; the in-text sequence 1^9 3^3 6^2 is used",
             ("AA2", "A2*E6"), False, "AA2", None, True),
    TableRow("DIH6(16)", 6, 16, (1,) * 8 + (3,) * 8, None,
             ("A2*E8",), True, "0", None, True),
    TableRow("DIH8(15)", 8, 15, (1,) * 10 + (4,) * 5, None,
             ("AA1",) * 7 + ("EE8",), False, None, None, True),
    TableRow("DIH8(16,DD4)", 8, 16, (1,) * 8 + (2,) * 4 + (4,) * 4, None,
             ("DD4", "DD4", "EE8"), False, "0", "DD4", True),
    TableRow("DIH8(16,0)", 8, 16, (1,) * 8 + (2,) * 8, None,
             ("BW16",), True, "0", "0", True),
    TableRow("DIH10(16)", 10, 16, (1,) * 12 + (5,) * 4, None,
             ("A4*A4",), False, "0", None, True),
    TableRow("DIH12(16)", 12, 16, (1,) * 12 + (6,) * 4, None,
             ("AA2", "AA2", "A2*E6"), False, "0", None, True),
)


def row_by_name(name: str) -> TableRow:
    canon = normalize_name(name)
    for row in TABLE:
        if row.name == canon:
            return row
    raise KeyError(f"no table row named {name!r}")
