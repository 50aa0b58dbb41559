"""Tensor JSON files and residual-history CSV files."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import ShapeMismatch
from .tensor_core import DenseTensor, Shape


def to_json_obj(t: DenseTensor) -> dict:
    return {
        "row_dims": list(t.row_dims),
        "col_dims": list(t.col_dims),
        "data": [[float(z.real), float(z.imag)] for z in t.data],
    }


def from_json_obj(obj: dict) -> DenseTensor:
    try:
        row_dims = [int(d) for d in obj["row_dims"]]
        col_dims = [int(d) for d in obj.get("col_dims", [])]
        pairs = obj["data"]
    except (KeyError, TypeError) as exc:
        raise ShapeMismatch(f"malformed tensor object: {exc}") from None
    shape = Shape(tuple(row_dims), tuple(col_dims))
    expected = shape.row_count * shape.col_count
    if len(pairs) != expected:
        raise ShapeMismatch(
            f"tensor {shape} needs {expected} entries, file has {len(pairs)}"
        )
    data = np.empty(expected, dtype=np.complex128)
    for n, pair in enumerate(pairs):
        if len(pair) != 2:
            raise ShapeMismatch(f"entry {n} is not a [re, im] pair")
        data[n] = complex(float(pair[0]), float(pair[1]))
    return DenseTensor(data, row_dims, col_dims)


def dumps(t: DenseTensor) -> str:
    return json.dumps(to_json_obj(t))


def loads(text: str) -> DenseTensor:
    return from_json_obj(json.loads(text))


def write_tensor(t: DenseTensor, path) -> None:
    Path(path).write_text(dumps(t))


def read_tensor(path) -> DenseTensor:
    return loads(Path(path).read_text())


def write_residual_csv(residuals: Iterable[float], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iter", "residual"])
        for k, r in enumerate(residuals):
            writer.writerow([k, f"{float(r):.17g}"])


def read_residual_csv(path) -> list[float]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["iter", "residual"]:
            raise ValueError(f"unexpected header {header}")
        return [float(row[1]) for row in reader]
