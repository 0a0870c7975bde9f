"""
Smith normal form of integer matrices.

Elimination pivots on the smallest nonzero |entry|; entries are Python ints in
object arrays so nothing overflows.
"""

from typing import Optional, Tuple

import numpy as np


class SmithNormalForm:
    """
    Compute U, D, V with U @ A @ V = D, D diagonal with d1 | d2 | ...,
    and U, V unimodular.

    Args:
        matrix: integer array of shape (m, n)
    """

    def __init__(self, matrix):
        self.original = np.array(matrix, dtype=object)
        if self.original.ndim != 2:
            self.original = self.original.reshape(0, 0)
        self.work = self.original.copy()
        self.left = _eye(self.work.shape[0])
        self.right = _eye(self.work.shape[1])

    @property
    def num_rows(self) -> int:
        return self.work.shape[0]

    @property
    def num_cols(self) -> int:
        return self.work.shape[1]

    def compute(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        s = 0
        while s < min(self.work.shape):
            if not self._reduce_at(s):
                break
            s += 1
        return self.left, self.work, self.right

    def _reduce_at(self, s: int) -> bool:
        """Clear row and column s around a pivot dividing the rest; False if nothing is left"""
        while True:
            row, col = _nonzero_min_abs(self.work, s)
            if row is None:
                return False
            self._swap_rows(s, row)
            self._swap_cols(s, col)
            pivot = self.work[s, s]
            for i in range(s + 1, self.num_rows):
                if self.work[i, s] != 0:
                    self._add_row(i, s, -(self.work[i, s] // pivot))
            for j in range(s + 1, self.num_cols):
                if self.work[s, j] != 0:
                    self._add_col(j, s, -(self.work[s, j] // pivot))
            if any(self.work[i, s] != 0 for i in range(s + 1, self.num_rows)) or \
                    any(self.work[s, j] != 0 for j in range(s + 1, self.num_cols)):
                continue
            bad_row = self._find_non_divisible(s)
            if bad_row is not None:
                # pull the offending row into row s and eliminate again
                self._add_row(s, bad_row, 1)
                continue
            if self.work[s, s] < 0:
                self._negate_row(s)
            return True

    def _find_non_divisible(self, s: int) -> Optional[int]:
        pivot = self.work[s, s]
        for i in range(s + 1, self.num_rows):
            for j in range(s + 1, self.num_cols):
                if self.work[i, j] % pivot != 0:
                    return i
        return None

    def _swap_rows(self, a: int, b: int):
        if a != b:
            self.left[[a, b]] = self.left[[b, a]]
            self.work[[a, b]] = self.work[[b, a]]

    def _swap_cols(self, a: int, b: int):
        if a != b:
            self.right[:, [a, b]] = self.right[:, [b, a]]
            self.work[:, [a, b]] = self.work[:, [b, a]]

    def _negate_row(self, a: int):
        self.left[a] = -self.left[a]
        self.work[a] = -self.work[a]

    def _add_row(self, target: int, source: int, k):
        """row target += k * row source"""
        self.left[target] = self.left[target] + self.left[source] * k
        self.work[target] = self.work[target] + self.work[source] * k

    def _add_col(self, target: int, source: int, k):
        self.right[:, target] = self.right[:, target] + self.right[:, source] * k
        self.work[:, target] = self.work[:, target] + self.work[:, source] * k


def _eye(n: int) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=object)
    for i in range(n):
        matrix[i, i] = 1
    return matrix


def _nonzero_min_abs(matrix: np.ndarray, s: int) -> Tuple[Optional[int], Optional[int]]:
    best = (None, None)
    smallest = None
    for i in range(s, matrix.shape[0]):
        for j in range(s, matrix.shape[1]):
            value = matrix[i, j]
            if value == 0:
                continue
            if smallest is None or abs(value) < smallest:
                best = (i, j)
                smallest = abs(value)
    return best


def snf(matrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(U, D, V) with U A V = D"""
    return SmithNormalForm(matrix).compute()


def invariant_factors(matrix) -> Tuple[int, ...]:
    """Nonzero diagonal entries of the Smith form"""
    m = np.array(matrix, dtype=object)
    if m.size == 0:
        return ()
    _, diagonal, _ = snf(m)
    return tuple(int(diagonal[i, i]) for i in range(min(diagonal.shape)) if diagonal[i, i] != 0)


def determinant(matrix) -> int:
    """Exact integer determinant by fraction-free elimination (Bareiss)"""
    m = [[int(x) for x in row] for row in np.array(matrix, dtype=object)]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]
