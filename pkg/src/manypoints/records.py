"""Interval table for N_q(g), the maximal number of rational places.

The builtin table ships the rows that the reproduced constructions improve;
a complete table can be loaded from CSV lines ``q,g,lower,upper`` where an
empty ``lower`` means that no curve was known.
"""

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional


class MissingEntry(KeyError):
    pass


@dataclass(frozen=True)
class Interval:
    lower: Optional[int]
    upper: int

    def __str__(self):
        lo = "" if self.lower is None else str(self.lower)
        return f"[{lo},{self.upper}]"


# (q, g, new N, old lower, old upper)
BUILTIN_ROWS = [
    (2, 17, 18, 17, 18),
    (2, 45, 36, 33, 37),
    (2, 46, 36, 34, 38),
    (2, 48, 35, 34, 39),
    (3, 17, 28, 25, 30),
    (3, 22, 33, 30, 36),
    (3, 33, 48, 46, 49),
    (3, 46, 60, 55, 63),
    (4, 41, 72, 65, 78),
    (5, 8, 24, 22, 28),
    (5, 10, 31, 27, 33),
    (5, 12, 36, 33, 38),
    (5, 26, 60, None, 68),
    (5, 35, 72, 68, 85),
    (5, 37, 80, 72, 89),
    (5, 40, 72, None, 94),
    (5, 45, 96, 88, 104),
    (5, 46, 81, 75, 106),
]


def serre_upper(q: int, g: int) -> int:
    """q + 1 + g * floor(2 sqrt q), computed exactly."""
    return q + 1 + g * math.isqrt(4 * q)


@dataclass
class RecordTable:
    entries: dict = field(default_factory=dict)

    @classmethod
    def builtin(cls):
        return cls({(q, g): Interval(lo, up) for q, g, _n, lo, up in BUILTIN_ROWS})

    @classmethod
    def from_csv(cls, text: str):
        entries = {}
        for row in csv.reader(io.StringIO(text)):
            if not row or not row[0].strip() or row[0].lstrip().startswith("#"):
                continue
            if row[0].strip() == "q":
                continue
            q, g, lo, up = (c.strip() for c in row)
            entries[(int(q), int(g))] = Interval(int(lo) if lo else None, int(up))
        return cls(entries)

    @classmethod
    def load(cls, path=None):
        if path is None:
            return cls.builtin()
        return cls.from_csv(Path(path).read_text())

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["q", "g", "lower", "upper"])
        for (q, g), iv in sorted(self.entries.items()):
            w.writerow([q, g, "" if iv.lower is None else iv.lower, iv.upper])
        return out.getvalue()

    def save(self, path):
        Path(path).write_text(self.to_csv())

    def query(self, q: int, g: int) -> Interval:
        try:
            return self.entries[(q, g)]
        except KeyError:
            raise MissingEntry(f"no record entry for q={q}, g={g}") from None

    def is_improvement(self, q: int, g: int, n: int) -> bool:
        iv = self.query(q, g)
        return (iv.lower is None or n > iv.lower) and n <= iv.upper

    def meets_upper(self, q: int, g: int, n: int) -> bool:
        return n == self.query(q, g).upper

    def genera(self, q: int):
        return sorted(g for (qq, g) in self.entries if qq == q)

    def update(self, q: int, g: int, n: int) -> bool:
        """Raise the lower bound to n if that is an improvement."""
        if not self.is_improvement(q, g, n):
            return False
        self.entries[(q, g)] = Interval(n, self.entries[(q, g)].upper)
        return True

    def check(self):
        for (q, g), iv in self.entries.items():
            if iv.lower is not None and iv.lower > iv.upper:
                raise ValueError(f"lower > upper at q={q}, g={g}")
            if iv.upper > serre_upper(q, g):
                raise ValueError(f"upper exceeds the Serre bound at q={q}, g={g}")


def max_points_cap(q: int, g_max: int, table: RecordTable) -> int:
    """Largest upper bound over the table rows with g <= g_max."""
    ups = [iv.upper for (qq, g), iv in table.entries.items() if qq == q and g <= g_max]
    if not ups:
        raise MissingEntry(f"no record entries for q={q} up to genus {g_max}")
    return max(ups)
