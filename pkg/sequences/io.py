import re
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from core.errors import LossFileError
from core.types import LossMatrix
from sequences.generators import BinarySequence

PathLike = Union[str, Path]

HEADER_PATTERN = re.compile(r"^#\s*m\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s*$")


def save_losses(path: PathLike, losses: LossMatrix) -> None:
    """One round per line; repr() keeps every float bit-exact on reload"""
    lines = [f"# m={losses.m} n={losses.n}"]
    lines.extend(",".join(repr(float(v)) for v in row) for row in losses.entries)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_losses(path: PathLike) -> LossMatrix:
    declared_m: Optional[int] = None
    declared_n: Optional[int] = None
    rows: List[List[float]] = []

    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = HEADER_PATTERN.match(line)
            if match is None or rows or declared_m is not None:
                raise LossFileError(f"unexpected comment or header '{line}'", line_no)
            declared_m, declared_n = int(match.group(1)), int(match.group(2))
            continue

        try:
            row = [float(field) for field in line.split(",")]
        except ValueError:
            raise LossFileError(f"could not parse '{line}' as comma-separated numbers", line_no) from None
        width = declared_m if declared_m is not None else (len(rows[0]) if rows else len(row))
        if len(row) != width:
            raise LossFileError(f"expected {width} losses, found {len(row)}", line_no)
        bad = [v for v in row if not 0.0 <= v <= 1.0]
        if bad:
            raise LossFileError(f"loss {bad[0]!r} is outside [0, 1]", line_no)
        rows.append(row)

    if not rows:
        raise LossFileError("file contains no loss rows")
    if declared_n is not None and declared_n != len(rows):
        raise LossFileError(f"header declares n={declared_n} but the file has {len(rows)} rows")
    if len(rows[0]) < 2:
        raise LossFileError(f"need at least two experts, found {len(rows[0])}")
    return LossMatrix(np.asarray(rows, dtype=np.float64))


def save_bits(path: PathLike, y: BinarySequence) -> None:
    Path(path).write_text(y.to_string() + "\n", encoding="utf-8")


def load_bits(path: PathLike) -> BinarySequence:
    lines = [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines()]
    lines = [(i, line) for i, line in enumerate(lines, start=1) if line]
    if len(lines) != 1:
        raise LossFileError(f"a bit file holds exactly one non-empty line, found {len(lines)}")
    line_no, text = lines[0]
    stray = re.search(r"[^01]", text)
    if stray:
        raise LossFileError(f"unexpected character '{stray.group()}' at column {stray.start() + 1}", line_no)
    return BinarySequence.from_string(text)
