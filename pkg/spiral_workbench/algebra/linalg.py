"""
Exact linear algebra over F_p on int64 numpy arrays.

Vectors are columns.  Every routine reduces modulo p on entry, and all basis
choices come from row reduction with a fixed pivot order, so results are
reproducible.  Entries stay below p < 2^16, so products fit in int64.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..resource.errors import NonExactSequence


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(a: np.ndarray, b: np.ndarray, prime: int) -> np.ndarray:
    if a.shape[1] == 0 or b.shape[0] == 0:
        return zeros(a.shape[0], b.shape[1])
    a = a.astype(np.int64) % prime
    b = b.astype(np.int64) % prime
    # float64 products are exact while every partial sum stays below 2^53
    if a.shape[1] * (prime - 1) ** 2 < 2 ** 53:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % prime
    return (a @ b) % prime


def is_zero(matrix: np.ndarray, prime: int) -> bool:
    return matrix.size == 0 or not np.any(matrix % prime)


def rref(matrix: np.ndarray, prime: int, column_order: Optional[Sequence[int]] = None) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form; pivots are taken in `column_order` (default left to right)"""
    reduced = np.array(matrix, dtype=np.int64) % prime
    rows, cols = reduced.shape
    order = range(cols) if column_order is None else column_order
    pivots: List[int] = []
    r = 0
    for c in order:
        if r == rows:
            break
        candidates = np.nonzero(reduced[r:, c])[0]
        if candidates.size == 0:
            continue
        k = r + int(candidates[0])
        if k != r:
            reduced[[r, k]] = reduced[[k, r]]
        inverse = pow(int(reduced[r, c]), -1, prime)
        reduced[r] = (reduced[r] * inverse) % prime
        others = np.nonzero(reduced[:, c])[0]
        others = others[others != r]
        if others.size:
            reduced[others] = (reduced[others] - np.outer(reduced[others, c], reduced[r])) % prime
        pivots.append(c)
        r += 1
    return reduced, pivots


def rank(matrix: np.ndarray, prime: int) -> int:
    if matrix.size == 0:
        return 0
    return len(rref(matrix, prime)[1])


def nullspace(matrix: np.ndarray, prime: int) -> np.ndarray:
    """Basis of the kernel as columns"""
    rows, cols = matrix.shape
    if rows == 0:
        return identity(cols)
    reduced, pivots = rref(matrix, prime)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, p in enumerate(pivots):
            basis[p, k] = (-reduced[row, f]) % prime
    return basis


def column_basis(matrix: np.ndarray, prime: int) -> Tuple[np.ndarray, List[int]]:
    """Independent columns of `matrix` chosen greedily left to right"""
    if matrix.shape[1] == 0 or matrix.shape[0] == 0:
        return zeros(matrix.shape[0], 0), []
    _, pivots = rref(matrix, prime)
    return matrix[:, pivots] % prime, pivots


def solve(matrix: np.ndarray, rhs: np.ndarray, prime: int,
          column_order: Optional[Sequence[int]] = None) -> Optional[np.ndarray]:
    """A particular X with A X = B (free variables zero), or None if inconsistent"""
    rows, cols = matrix.shape
    rhs = rhs.reshape(rows, -1) if rhs.ndim == 1 else rhs
    if rhs.shape[1] == 0:
        return zeros(cols, 0)
    if rows == 0:
        return zeros(cols, rhs.shape[1])
    augmented = np.concatenate([matrix % prime, rhs % prime], axis=1)
    order = list(range(cols)) if column_order is None else list(column_order)
    reduced, pivots = rref(augmented, prime, order)
    r = len(pivots)
    if np.any(reduced[r:, cols:]):
        return None
    solution = zeros(cols, rhs.shape[1])
    for row, p in enumerate(pivots):
        solution[p] = reduced[row, cols:]
    return solution


def solve_or_raise(matrix: np.ndarray, rhs: np.ndarray, prime: int, what: str,
                   column_order: Optional[Sequence[int]] = None) -> np.ndarray:
    solution = solve(matrix, rhs, prime, column_order)
    if solution is None:
        raise NonExactSequence(f"No solution while {what}")
    return solution


def in_span(basis: np.ndarray, vectors: np.ndarray, prime: int) -> bool:
    if vectors.shape[1] == 0:
        return True
    return solve(basis, vectors, prime) is not None


def inverse(matrix: np.ndarray, prime: int) -> np.ndarray:
    n = matrix.shape[0]
    solution = solve(matrix, identity(n), prime)
    if solution is None or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("Matrix is not invertible")
    return solution


def intersection(first: np.ndarray, second: np.ndarray, prime: int) -> np.ndarray:
    """Basis of span(first) ∩ span(second)"""
    if first.shape[1] == 0 or second.shape[1] == 0:
        return zeros(first.shape[0], 0)
    kernel = nullspace(np.concatenate([first, (-second) % prime], axis=1), prime)
    combos = mat_mul(first, kernel[: first.shape[1]], prime)
    return column_basis(combos, prime)[0]


def kernel_of_stack(matrices: Sequence[np.ndarray], cols: int, prime: int) -> np.ndarray:
    """Common kernel of several maps out of the same space"""
    nonempty = [m for m in matrices if m.shape[0]]
    if not nonempty:
        return identity(cols)
    return nullspace(np.concatenate(nonempty, axis=0), prime)


def random_invertible(rng: np.random.Generator, n: int, prime: int) -> np.ndarray:
    while True:
        candidate = rng.integers(0, prime, size=(n, n), dtype=np.int64)
        if rank(candidate, prime) == n:
            return candidate


@dataclass
class Subquotient:
    """span(kill + reps) / span(kill) inside F_p^ambient, with `reps` a basis of the quotient"""
    prime: int
    kill: np.ndarray
    reps: np.ndarray

    @property
    def ambient(self) -> int:
        return self.reps.shape[0]

    @property
    def dim(self) -> int:
        return self.reps.shape[1]

    @classmethod
    def of(cls, numerator: np.ndarray, denominator: np.ndarray, prime: int) -> "Subquotient":
        """Quotient span(numerator)/span(denominator); the denominator must lie in the numerator"""
        ambient = numerator.shape[0]
        kill, _ = column_basis(denominator, prime) if denominator.shape[1] else (zeros(ambient, 0), [])
        if numerator.shape[1] == 0:
            return cls(prime, kill, zeros(ambient, 0))
        stacked = np.concatenate([kill, numerator], axis=1)
        _, pivots = rref(stacked, prime) if stacked.shape[0] else (None, [])
        chosen = [p - kill.shape[1] for p in pivots if p >= kill.shape[1]]
        return cls(prime, kill, numerator[:, chosen] % prime)

    def coords(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of vectors (in the numerator) with respect to `reps`"""
        vectors = vectors.reshape(self.ambient, -1) if vectors.ndim == 1 else vectors
        if vectors.shape[1] == 0:
            return zeros(self.dim, 0)
        if self.dim == 0:
            if not in_span(self.kill, vectors, self.prime):
                raise NonExactSequence("Vector is not in the numerator of a zero subquotient")
            return zeros(0, vectors.shape[1])
        basis = np.concatenate([self.kill, self.reps], axis=1)
        solution = solve(basis, vectors, self.prime)
        if solution is None:
            raise NonExactSequence("Vector lies outside the subquotient's numerator")
        return solution[self.kill.shape[1]:] % self.prime

    def contains(self, vectors: np.ndarray) -> bool:
        return in_span(np.concatenate([self.kill, self.reps], axis=1), vectors, self.prime)

    def lift(self, coordinates: np.ndarray) -> np.ndarray:
        return mat_mul(self.reps, coordinates, self.prime)
