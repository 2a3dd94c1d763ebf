"""Exact rank of rational matrices via fraction-free (Bareiss) elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import ToolError


class LinalgError(ToolError):
    code = "linalg.invalid"


def _integer_rows(rows) -> list:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    width = None
    for row in rows:
        fr = [Fraction(x) for x in row]
        if width is None:
            width = len(fr)
        elif len(fr) != width:
            raise LinalgError("ragged matrix")
        scale = lcm(*(f.denominator for f in fr)) if fr else 1
        out.append([int(f * scale) for f in fr])
    return out


def exact_rank(rows) -> int:
    """Rank over Q, computed without fractions after an initial row scaling.

    One-step Bareiss: every intermediate entry is a minor of the scaled
    integer matrix, so the divisions below are exact.
    """
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank]
        p = lead[col]
        for r in range(rank + 1, len(m)):
            row = m[r]
            f = row[col]
            for c in range(col + 1, ncols):
                num = p * row[c] - f * lead[c]
                q, rem = divmod(num, prev)
                if rem:
                    raise LinalgError("fraction-free elimination lost exactness")
                row[c] = q
            row[col] = 0
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def matrix_to_csv(rows) -> str:
    """Exact rational CSV (one row per line, entries like ``-2/3``)."""
    lines = []
    for row in rows:
        lines.append(",".join(str(Fraction(x)) for x in row))
    return "\n".join(lines) + ("\n" if lines else "")
