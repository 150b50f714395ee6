"""Known values of eff(X) for Picard-rank-one spaces, and a runner that recomputes them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cohomology import eff
from .coset import parse_descriptor, space_from_descriptor
from .errors import HsxError


@dataclass(frozen=True)
class Row:
    label: str
    descriptor: str
    rule: str            # "0", "1", "2", "dim-8", ...
    big: bool = False

    def expected(self, dim: int) -> int:
        if self.rule.startswith("dim-"):
            return dim - int(self.rule[4:])
        return int(self.rule)


def _rows() -> list[Row]:
    rows = []
    for n in range(1, 9):
        rows.append(Row(f"P^{n}", f"A{n}/P1", "0" if n % 2 == 0 else "1"))
    for m in range(3, 11):
        if m % 2:
            rows.append(Row(f"Q^{m}", f"B{(m + 1) // 2}/P1", "1"))
        else:
            rows.append(Row(f"Q^{m}", f"D{m // 2 + 1}/P1", "0" if m % 4 == 0 else "2"))
    for n in range(4, 9):
        rows.append(Row(f"G(2,{n})", f"A{n - 1}/P2", "0"))
    for n in range(2, 6):
        rows.append(Row(f"G_w(2,{2 * n})", f"C{n}/P2", "1"))
    for n in range(2, 5):
        rows.append(Row(f"G_Q(2,{2 * n + 1})", f"B{n}/P2", "1"))
    rows.append(Row("G_Q(2,8)", "D4/P2", "1"))
    rows.append(Row("G_Q(2,10)", "D5/P2", "9"))
    rows += [
        Row("F4/P1", "F4/P1", "1"),
        Row("F4/P4", "F4/P4", "1"),
        Row("G2/P1", "G2/P1", "dim-4"),
        Row("G2/P2", "G2/P2", "dim-4"),
        Row("E6/P1", "E6/P1", "0"),
    ]
    # a few spaces outside the exception list, where dim - 4 is the rule
    for d in ("A5/P3", "C3/P3", "D5/P5", "D5/P3", "E6/P2", "F4/P2"):
        rows.append(Row(f"{d} (generic)", d, "dim-4"))
    rows += [
        Row("E7/P1", "E7/P1", "1", big=True),
        Row("E7/P6", "E7/P6", "dim-8", big=True),
        Row("E7/P7", "E7/P7", "dim-8", big=True),
        Row("E8/P1", "E8/P1", "dim-12", big=True),
        Row("E8/P7", "E8/P7", "dim-8", big=True),
        Row("E8/P8", "E8/P8", "1", big=True),
    ]
    return rows


EFF_ROWS = _rows()


def default_rows(big: bool = False) -> list[Row]:
    return [r for r in EFF_ROWS if big or not r.big]


def row_for(descriptor: str) -> Row:
    """Row for a descriptor; spaces outside the list fall back to ``dim - 4``."""
    series, rank, nodes = parse_descriptor(descriptor)
    key = f"{series}{rank}/P{','.join(map(str, nodes))}"
    for r in EFF_ROWS:
        if r.descriptor == key:
            return r
    return Row(key, key, "dim-4")


@dataclass
class Result:
    row: Row
    dim: int | None
    reps: int | None
    computed: int | None
    expected: int | None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.computed == self.expected

    def to_dict(self) -> dict:
        return {
            "label": self.row.label, "space": self.row.descriptor, "dim": self.dim,
            "reps": self.reps, "eff": self.computed, "expected": self.expected,
            "rule": self.row.rule, "status": "PASS" if self.passed else "FAIL",
            "error": self.error,
        }


def run_row(row: Row, progress: Callable | None = None) -> Result:
    try:
        space = space_from_descriptor(row.descriptor)
        k, _ = eff(space, progress)
    except HsxError as exc:
        return Result(row, None, None, None, None, f"{type(exc).__name__}: {exc}")
    return Result(row, space.dim, len(space), k, row.expected(space.dim))


def _run_quiet(row: Row) -> Result:
    return run_row(row)


def run_table(rows: list[Row], progress: Callable | None = None, workers: int = 1) -> list[Result]:
    """Results in the order of ``rows``; ``workers > 1`` spreads rows over processes."""
    if workers <= 1 or len(rows) <= 1:
        return [run_row(r, progress) for r in rows]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_quiet, rows))
