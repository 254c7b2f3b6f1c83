"""Dataset CSV ingestion and report serialization."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path

from .decomposition import GroupedPopulation, parse_label
from .distribution import WeightedDistribution
from .errors import InconsistentHierarchy, MissingGroupColumn, ValidationError

log = logging.getLogger(__name__)

KNOWN_COLUMNS = ("income", "weight", "group")


class DatasetError(ValidationError):
    pass


@dataclass(frozen=True, eq=False)
class Dataset:
    incomes: list
    weights: list
    groups: list | None
    source: str = "<memory>"

    def distribution(self) -> WeightedDistribution:
        return WeightedDistribution.from_arrays(self.incomes, self.weights)

    def grouped(self) -> GroupedPopulation:
        if self.groups is None:
            raise MissingGroupColumn(f"{self.source}: no 'group' column")
        return GroupedPopulation.from_records(self.incomes, self.weights, self.groups)


def _number(text: str, what: str, where: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DatasetError(f"{where}: {what} {text!r} is not a number") from None
    if not math.isfinite(value):
        raise DatasetError(f"{where}: {what} {text!r} is not finite")
    return value


def parse_dataset(text: str, source: str = "<memory>") -> Dataset:
    """Parse dataset CSV text. Lines starting with ``#`` are comments."""
    lines = [(no, line) for no, line in enumerate(text.splitlines(), start=1)
             if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise DatasetError(f"{source}: no header row")
    header_no, header = lines[0]
    names = [h.strip().lower() for h in next(csv.reader([header]))]
    if "income" not in names:
        raise DatasetError(f"{source}:{header_no}: missing required 'income' column")
    for name in names:
        if name not in KNOWN_COLUMNS:
            log.warning("%s:%d: ignoring unknown column %r", source, header_no, name)
    col = {name: names.index(name) for name in KNOWN_COLUMNS if name in names}
    incomes, weights, groups = [], [], [] if "group" in col else None
    depth = None
    for no, line in lines[1:]:
        where = f"{source}:{no}"
        row = next(csv.reader([line]))
        if len(row) != len(names):
            raise DatasetError(f"{where}: expected {len(names)} fields, got {len(row)}")
        x = _number(row[col["income"]].strip(), "income", where)
        if x < 0:
            raise DatasetError(f"{where}: income {x!r} is negative")
        w = 1.0
        if "weight" in col and row[col["weight"]].strip():
            w = _number(row[col["weight"]].strip(), "weight", where)
            if not w > 0:
                raise DatasetError(f"{where}: weight {w!r} must be positive")
        if groups is not None:
            try:
                label = parse_label(row[col["group"]])
            except InconsistentHierarchy as exc:
                raise InconsistentHierarchy(f"{where}: {exc}") from None
            if depth is None:
                depth = len(label)
            elif len(label) != depth:
                raise InconsistentHierarchy(
                    f"{where}: group {row[col['group']]!r} has depth {len(label)}, earlier rows have {depth}"
                )
            groups.append("/".join(label))
        incomes.append(x)
        weights.append(w)
    if not incomes:
        raise DatasetError(f"{source}: no data rows")
    return Dataset(incomes, weights, groups, source)


def read_dataset(path) -> Dataset:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"{path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise DatasetError(f"{path}: not valid UTF-8") from None
    return parse_dataset(text, str(path))


def _clean(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return _clean(obj.item())
    return obj


def dumps_report(report: dict) -> str:
    """JSON with shortest round-trip float repr; non-finite values become null."""
    return json.dumps(_clean(report), indent=2, sort_keys=False, allow_nan=False) + "\n"


def dumps_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    fields = []
    for r in rows:
        fields.extend(k for k in r if k not in fields)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: ("" if v is None else repr(v) if isinstance(v, float) else v)
                         for k, v in _clean(r).items()})
    return buf.getvalue()
