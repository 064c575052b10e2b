"""Text file formats for tensors and polynomials.

Tensor files (UTF-8, LF line endings):

    CQT1
    order <d>
    dims <n1> <n2> ... <nd>
    <i1> <i2> ... <id> <re> <im_i> <im_j> <im_k>

Indices are 1-based; entries not listed are zero; listing the same index
tuple twice is an error. Polynomial files replace the first three lines by
``CQP1``, ``degree <d>`` and ``dim <n>``, and every index tuple must be
sorted nondecreasing; duplicate tuples sum into one coefficient.

Writers emit entries in lexicographic index order with shortest round-trip
float representations and skip exact zeros, so parse followed by serialize
is byte-identical on canonical files.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import CQuat
from .forms import PolyProblem
from .linalg import CQTensor

TENSOR_MAGIC = "CQT1"
POLY_MAGIC = "CQP1"


class ParseError(ValueError):
    """Malformed input file; the message carries the offending line number."""

    def __init__(self, source: str, lineno: int, message: str):
        super().__init__(f"{source}:{lineno}: {message}")
        self.source = source
        self.lineno = lineno


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            yield lineno, line


def _parse_floats(source: str, lineno: int, tokens: list[str]) -> list[float]:
    values = []
    for tok in tokens:
        try:
            values.append(float(tok))
        except ValueError:
            raise ParseError(source, lineno, f"expected a number, got {tok!r}") from None
    return values


def _parse_ints(source: str, lineno: int, tokens: list[str]) -> list[int]:
    values = []
    for tok in tokens:
        try:
            values.append(int(tok))
        except ValueError:
            raise ParseError(source, lineno, f"expected an integer, got {tok!r}") from None
    return values


def loads_tensor(text: str, source: str = "<string>") -> CQTensor:
    lines = _lines(text)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(source, 1, "empty file") from None
    if line != TENSOR_MAGIC:
        raise ParseError(source, lineno, f"expected header {TENSOR_MAGIC!r}, got {line!r}")
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(source, lineno + 1, "missing order line") from None
    tokens = line.split()
    if len(tokens) != 2 or tokens[0] != "order":
        raise ParseError(source, lineno, f"expected 'order <d>', got {line!r}")
    (order,) = _parse_ints(source, lineno, tokens[1:])
    if order < 1:
        raise ParseError(source, lineno, f"order must be at least 1, got {order}")
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(source, lineno + 1, "missing dims line") from None
    tokens = line.split()
    if len(tokens) != order + 1 or tokens[0] != "dims":
        raise ParseError(source, lineno, f"expected 'dims' with {order} sizes, got {line!r}")
    dims = _parse_ints(source, lineno, tokens[1:])
    if any(n < 1 for n in dims):
        raise ParseError(source, lineno, f"dimensions must be positive, got {dims}")
    data = np.zeros(tuple(dims) + (4,))
    seen: set[tuple[int, ...]] = set()
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != order + 4:
            raise ParseError(
                source, lineno, f"expected {order} indices and 4 components, got {len(tokens)} tokens"
            )
        idx = tuple(_parse_ints(source, lineno, tokens[:order]))
        for k, (i, n) in enumerate(zip(idx, dims)):
            if not 1 <= i <= n:
                raise ParseError(source, lineno, f"index {i} out of range 1..{n} in slot {k + 1}")
        if idx in seen:
            raise ParseError(source, lineno, f"duplicate entry for indices {' '.join(map(str, idx))}")
        seen.add(idx)
        data[tuple(i - 1 for i in idx)] = _parse_floats(source, lineno, tokens[order:])
    return CQTensor(data)


def dumps_tensor(tensor: CQTensor) -> str:
    lines = [TENSOR_MAGIC, f"order {tensor.order}", "dims " + " ".join(map(str, tensor.dims))]
    for idx in np.ndindex(*tensor.dims):
        comps = tensor.data[idx]
        if not comps.any():
            continue
        head = " ".join(str(i + 1) for i in idx)
        tail = " ".join(repr(float(c)) for c in comps)
        lines.append(f"{head} {tail}")
    return "\n".join(lines) + "\n"


def read_tensor(path) -> CQTensor:
    path = Path(path)
    return loads_tensor(path.read_text(encoding="utf-8"), source=str(path))


def write_tensor(tensor: CQTensor, path) -> None:
    Path(path).write_text(dumps_tensor(tensor), encoding="utf-8", newline="\n")


def loads_poly(text: str, source: str = "<string>") -> PolyProblem:
    lines = _lines(text)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(source, 1, "empty file") from None
    if line != POLY_MAGIC:
        raise ParseError(source, lineno, f"expected header {POLY_MAGIC!r}, got {line!r}")
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(source, lineno + 1, "missing degree line") from None
    tokens = line.split()
    if len(tokens) != 2 or tokens[0] != "degree":
        raise ParseError(source, lineno, f"expected 'degree <d>', got {line!r}")
    (degree,) = _parse_ints(source, lineno, tokens[1:])
    if degree < 1:
        raise ParseError(source, lineno, f"degree must be at least 1, got {degree}")
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(source, lineno + 1, "missing dim line") from None
    tokens = line.split()
    if len(tokens) != 2 or tokens[0] != "dim":
        raise ParseError(source, lineno, f"expected 'dim <n>', got {line!r}")
    (dim,) = _parse_ints(source, lineno, tokens[1:])
    if dim < 1:
        raise ParseError(source, lineno, f"dim must be at least 1, got {dim}")
    poly = PolyProblem(degree=degree, dim=dim)
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != degree + 4:
            raise ParseError(
                source, lineno, f"expected {degree} indices and 4 components, got {len(tokens)} tokens"
            )
        idx = _parse_ints(source, lineno, tokens[:degree])
        if any(i < 1 or i > dim for i in idx):
            raise ParseError(source, lineno, f"indices out of range 1..{dim}: {idx}")
        if any(a > b for a, b in zip(idx, idx[1:])):
            raise ParseError(source, lineno, f"index tuple must be sorted nondecreasing: {idx}")
        comps = _parse_floats(source, lineno, tokens[degree:])
        poly.add_term(idx, CQuat(*comps))
    return poly


def dumps_poly(poly: PolyProblem) -> str:
    lines = [POLY_MAGIC, f"degree {poly.degree}", f"dim {poly.dim}"]
    for idx, coeff in poly.terms():
        comps = coeff.components()
        if comps == (0.0, 0.0, 0.0, 0.0):
            continue
        head = " ".join(map(str, idx))
        tail = " ".join(repr(float(c)) for c in comps)
        lines.append(f"{head} {tail}")
    return "\n".join(lines) + "\n"


def read_poly(path) -> PolyProblem:
    path = Path(path)
    return loads_poly(path.read_text(encoding="utf-8"), source=str(path))


def write_poly(poly: PolyProblem, path) -> None:
    Path(path).write_text(dumps_poly(poly), encoding="utf-8", newline="\n")
