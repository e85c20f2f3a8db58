"""Dense symbol arrays and the plain-text array file format."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .errors import BadInput


@dataclass(eq=False)
class SymbolArray:
    """N x k array over the alphabet [0, v-1], one byte per symbol."""

    data: np.ndarray = field(repr=False)
    v: int

    def __post_init__(self):
        self.data = np.ascontiguousarray(self.data, dtype=np.uint8)
        if self.data.ndim != 2:
            raise BadInput("array data must be two-dimensional")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymbolArray) and self.v == other.v
                and np.array_equal(self.data, other.data))

    def restrict(self, columns) -> "SymbolArray":
        return SymbolArray(self.data[:, list(columns)], self.v)


def as_symbol_array(array, v: int | None = None) -> SymbolArray:
    if isinstance(array, SymbolArray):
        return array
    data = np.asarray(array)
    if v is None:
        v = int(data.max()) + 1 if data.size else 1
    return SymbolArray(data, v)


def write_array(array: SymbolArray, out: TextIO) -> None:
    out.write(f"ca {array.rows} {array.cols} {array.v}\n")
    for row in array.data:
        out.write(" ".join(map(str, row.tolist())) + "\n")


def dumps_array(array: SymbolArray) -> str:
    buf = io.StringIO()
    write_array(array, buf)
    return buf.getvalue()


def read_array(src: TextIO | str) -> SymbolArray:
    text = src if isinstance(src, str) else src.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise BadInput("empty array file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "ca":
        raise BadInput("array file must start with 'ca N k v'")
    try:
        n, k, v = map(int, head[1:])
    except ValueError as exc:
        raise BadInput(f"bad header: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != n:
        raise BadInput(f"header declares {n} rows, found {len(body)}")
    try:
        data = np.array([list(map(int, ln.split())) for ln in body], dtype=np.int64).reshape(n, k)
    except ValueError as exc:
        raise BadInput("rows must contain exactly k integer symbols") from exc
    if data.size and (data.min() < 0 or data.max() >= v):
        raise BadInput(f"symbols must lie in [0, {v - 1}]")
    return SymbolArray(data, v)
