"""Per-instance verification rows and their JSON / CSV / text encodings."""

from __future__ import annotations

import csv
import io
import json
from typing import Dict, Iterable

from .boolfun import algebraic_degree, is_bent, rank, truth_table, walsh_spectrum
from .constructions import (construct_hu, construct_li, construct_ma, construct_new,
                            hu_criterion, li_criterion, ma_criterion)
from .field import Field

FIELDS = ("family", "n", "params", "predicted", "verified", "rank", "degree", "digest")


def construct(family: str, F: Field, params, strict: bool = False):
    """(trace form, criterion verdict) for one family instance."""
    if family == "ma":
        return construct_ma(params, F), ma_criterion(params)
    if family == "hu":
        return construct_hu(params), hu_criterion(params, strict=strict)
    if family == "li":
        return construct_li(params, F), li_criterion(params)
    if family == "new":
        # the non-cube hypothesis is checked by NewParams; bentness is predicted
        return construct_new(params), True
    raise ValueError(f"unknown family {family!r}")


def instance_row(family: str, F: Field, params, strict: bool = False) -> Dict:
    r, predicted = construct(family, F, params, strict=strict)
    f = truth_table(r)
    spectrum = walsh_spectrum(f, F)
    return {
        "family": family,
        "n": F.n,
        "params": params.label(),
        "predicted": predicted,
        "verified": is_bent(f, F, spectrum),
        "rank": rank(f, F),
        "degree": algebraic_degree(f),
        "digest": f.digest(),
        "repr": str(r),
    }


def _flat_params(p: Dict) -> str:
    parts = []
    for k, v in p.items():
        if isinstance(v, (list, tuple)):
            v = " ".join(str(x) for x in v)
        parts.append(f"{k}={v}")
    return ";".join(parts)


class RowWriter:
    """Streams rows as JSON lines, CSV or ``key=value`` text."""

    def __init__(self, fh, fmt: str = "text", fields=FIELDS):
        if fmt not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {fmt!r}")
        self.fh = fh
        self.fmt = fmt
        self.fields = tuple(fields)
        self._csv = None

    def write(self, row: Dict):
        if self.fmt == "json":
            self.fh.write(json.dumps(row, sort_keys=False) + "\n")
        elif self.fmt == "csv":
            if self._csv is None:
                self._csv = csv.DictWriter(self.fh, fieldnames=self.fields, extrasaction="ignore",
                                           lineterminator="\n")
                self._csv.writeheader()
            flat = dict(row)
            if isinstance(flat.get("params"), dict):
                flat["params"] = _flat_params(flat["params"])
            self._csv.writerow(flat)
        else:
            items = []
            for k in self.fields:
                if k in row:
                    v = row[k]
                    if isinstance(v, dict):
                        v = _flat_params(v)
                    items.append(f"{k}={v}")
            self.fh.write(" ".join(items) + "\n")
        self.fh.flush()


def rows_to_string(rows: Iterable[Dict], fmt: str = "text", fields=FIELDS) -> str:
    buf = io.StringIO()
    w = RowWriter(buf, fmt, fields)
    for row in rows:
        w.write(row)
    return buf.getvalue()
