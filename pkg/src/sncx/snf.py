"""Exact integer matrix normal forms.

Everything here runs on arbitrary-precision Python integers; no floats.
Pivoting picks the smallest nonzero magnitude with a positional
tie-break, which keeps coefficient growth tame at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def as_int_matrix(rows) -> np.ndarray:
    """Copy input into an object-dtype array of Python ints."""
    if isinstance(rows, np.ndarray):
        data = rows.tolist()
    else:
        data = [list(r) for r in rows]
    m = len(data)
    n = len(data[0]) if m else 0
    out = np.empty((m, n), dtype=object)
    for i in range(m):
        if len(data[i]) != n:
            raise ValueError("ragged matrix")
        for j in range(n):
            out[i, j] = int(data[i][j])
    return out


@dataclass(frozen=True)
class SNFResult:
    invariant_factors: tuple
    rank: int


def _swap_pivot_to_corner(A, top, left, m, n):
    """Move the smallest-magnitude nonzero block entry to (top, left)."""
    piv = None
    best = None
    for i in range(top, m):
        row = A[i]
        for j in range(left, n):
            v = row[j]
            if v != 0 and (best is None or abs(v) < best):
                best = abs(v)
                piv = (i, j)
    if piv is None:
        return False
    pi, pj = piv
    if pi != top:
        A[top], A[pi] = A[pi], A[top]
    if pj != left:
        for row in A:
            row[left], row[pj] = row[pj], row[left]
    return True


def smith_normal_form(matrix) -> SNFResult:
    """Invariant factors d1 | d2 | ... and the rank of an integer matrix."""
    a = as_int_matrix(matrix)
    m, n = a.shape
    A = [list(row) for row in a.tolist()] if m else []
    diag = []
    top = 0
    left = 0
    while top < m and left < n:
        if not _swap_pivot_to_corner(A, top, left, m, n):
            break
        while True:
            p = A[top][left]
            dirty = False
            prow = A[top]
            for i in range(top + 1, m):
                v = A[i][left]
                if v:
                    q = v // p
                    row = A[i]
                    for j in range(left, n):
                        row[j] -= q * prow[j]
                    if row[left]:
                        dirty = True
            for j in range(left + 1, n):
                v = prow[j]
                if v:
                    q = v // p
                    for i in range(top, m):
                        A[i][j] -= q * A[i][left]
                    if prow[j]:
                        dirty = True
            if not dirty:
                break
            # a residue strictly smaller than |p| exists; re-pick and repeat
            _swap_pivot_to_corner(A, top, left, m, n)
        diag.append(abs(A[top][left]))
        top += 1
        left += 1

    # a diagonal matrix is equivalent to its divisibility-sorted form via
    # repeated (a, b) -> (gcd, lcm) on pairs
    k = len(diag)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a_, b_ = diag[i], diag[i + 1]
            if b_ % a_:
                g = math.gcd(a_, b_)
                diag[i], diag[i + 1] = g, a_ * b_ // g
                changed = True
    return SNFResult(tuple(diag), k)


def matrix_rank(matrix) -> int:
    return smith_normal_form(matrix).rank
