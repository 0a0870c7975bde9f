"""
First-quadrant bicomplexes over F_p.

Squares commute (dh dv = dv dh); the sign enters only at totalization, where
the differential on column n is dh + (-1)^n dv.  Random instances are glued
from elementary pieces and then scrambled by a per-bidegree change of basis,
so the shape of every page is known in advance.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..resource.artifact_io import bidegree_key, parse_bidegree, parse_matrix, require_keys
from ..resource.errors import BoundaryNotZero, IndexOutOfRange, SchemaViolation
from .chain_complex import ChainComplex, induced_map
from .linalg import Subquotient, identity, inverse, mat_mul, nullspace, random_invertible, rank, zeros

Bidegree = Tuple[int, int]


@dataclass
class Bicomplex:
    """dh[(n, q)]: X_(n,q) -> X_(n-1,q) and dv[(n, q)]: X_(n,q) -> X_(n,q-1)"""
    prime: int
    dims: Dict[Bidegree, int]
    dh: Dict[Bidegree, np.ndarray] = field(default_factory=dict)
    dv: Dict[Bidegree, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        for (n, q), d in self.dims.items():
            if n < 0 or q < 0 or d < 0:
                raise IndexOutOfRange(f"Bicomplex entry at ({n},{q}) leaves the first quadrant")
        self.dims = {key: int(d) for key, d in self.dims.items() if d}
        self.dh = {key: np.asarray(m, dtype=np.int64).reshape(self.dim(key[0] - 1, key[1]), self.dim(*key)) % self.prime
                   for key, m in self.dh.items()}
        self.dv = {key: np.asarray(m, dtype=np.int64).reshape(self.dim(key[0], key[1] - 1), self.dim(*key)) % self.prime
                   for key, m in self.dv.items()}
        self.validate()

    def dim(self, n: int, q: int) -> int:
        return self.dims.get((n, q), 0)

    @property
    def max_n(self) -> int:
        return max((n for n, _ in self.dims), default=0)

    @property
    def max_q(self) -> int:
        return max((q for _, q in self.dims), default=0)

    def bidegrees(self) -> List[Bidegree]:
        return sorted(self.dims)

    def horizontal(self, n: int, q: int) -> np.ndarray:
        if (n, q) in self.dh:
            return self.dh[(n, q)]
        return zeros(self.dim(n - 1, q), self.dim(n, q))

    def vertical(self, n: int, q: int) -> np.ndarray:
        if (n, q) in self.dv:
            return self.dv[(n, q)]
        return zeros(self.dim(n, q - 1), self.dim(n, q))

    def validate(self) -> None:
        p = self.prime
        for n, q in self.bidegrees():
            if np.any(mat_mul(self.horizontal(n - 1, q), self.horizontal(n, q), p)):
                raise BoundaryNotZero(f"dh o dh != 0 at ({n},{q})", {"bidegree": [n, q]})
            if np.any(mat_mul(self.vertical(n, q - 1), self.vertical(n, q), p)):
                raise BoundaryNotZero(f"dv o dv != 0 at ({n},{q})", {"bidegree": [n, q]})
            square = mat_mul(self.horizontal(n, q - 1), self.vertical(n, q), p) - \
                mat_mul(self.vertical(n - 1, q), self.horizontal(n, q), p)
            if np.any(square % p):
                raise BoundaryNotZero(f"Square at ({n},{q}) does not commute", {"bidegree": [n, q]})

    def column(self, n: int) -> ChainComplex:
        """Column n as a chain complex in q with the sign it carries inside the total complex"""
        sign = -1 if n % 2 else 1
        dims = {q: self.dim(n, q) for q in range(self.max_q + 1)}
        diffs = {q: sign * self.vertical(n, q) for q in range(1, self.max_q + 1)}
        return ChainComplex(self.prime, dims, diffs)

    def transpose(self) -> "Bicomplex":
        """Swap the two directions"""
        return Bicomplex(self.prime, {(q, n): d for (n, q), d in self.dims.items()},
                         {(q, n): m for (n, q), m in self.dv.items()},
                         {(q, n): m for (n, q), m in self.dh.items()})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.prime,
            "dims": {bidegree_key(n, q): d for (n, q), d in sorted(self.dims.items())},
            "dh": {bidegree_key(n, q): self.dh[(n, q)] for n, q in sorted(self.dh) if self.dh[(n, q)].size},
            "dv": {bidegree_key(n, q): self.dv[(n, q)] for n, q in sorted(self.dv) if self.dv[(n, q)].size},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Bicomplex":
        require_keys(data, ("p", "dims"), "Bicomplex")
        try:
            dims = {parse_bidegree(key): int(d) for key, d in data["dims"].items()}
        except (TypeError, ValueError, AttributeError):
            raise SchemaViolation("Bicomplex dims must map 'n,q' to integers")

        def dim(n: int, q: int) -> int:
            return dims.get((n, q), 0)

        dh, dv = {}, {}
        for key, raw in data.get("dh", {}).items():
            n, q = parse_bidegree(key)
            dh[(n, q)] = parse_matrix(raw, dim(n - 1, q), dim(n, q), f"dh at {key}")
        for key, raw in data.get("dv", {}).items():
            n, q = parse_bidegree(key)
            dv[(n, q)] = parse_matrix(raw, dim(n, q - 1), dim(n, q), f"dv at {key}")
        return cls(int(data["p"]), dims, dh, dv)


# Totalization ---------------------------------------------------------------

def total_layout(B: Bicomplex, t: int, max_column: Optional[int] = None) -> List[Tuple[int, int, int, int]]:
    """(n, q, offset, dim) blocks of total degree t, columns ascending"""
    top = B.max_n if max_column is None else max_column
    blocks, offset = [], 0
    for n in range(0, min(t, top) + 1):
        d = B.dim(n, t - n)
        if d:
            blocks.append((n, t - n, offset, d))
            offset += d
    return blocks


def _total_block_matrix(B: Bicomplex, t: int, max_column: Optional[int]) -> np.ndarray:
    source = total_layout(B, t, max_column)
    target = total_layout(B, t - 1, max_column)
    rows = sum(block[3] for block in target)
    cols = sum(block[3] for block in source)
    matrix = zeros(rows, cols)
    where = {(n, q): (offset, d) for n, q, offset, d in target}
    for n, q, col, width in source:
        sign = -1 if n % 2 else 1
        if (n - 1, q) in where:
            row, height = where[(n - 1, q)]
            matrix[row:row + height, col:col + width] += B.horizontal(n, q)
        if (n, q - 1) in where:
            row, height = where[(n, q - 1)]
            matrix[row:row + height, col:col + width] += sign * B.vertical(n, q)
    return matrix % B.prime


def total(B: Bicomplex, max_column: Optional[int] = None) -> ChainComplex:
    """Total complex, optionally truncated to columns <= max_column (a subcomplex)"""
    top_degree = B.max_n + B.max_q
    dims = {t: sum(block[3] for block in total_layout(B, t, max_column)) for t in range(top_degree + 1)}
    diffs = {t: _total_block_matrix(B, t, max_column) for t in range(1, top_degree + 1)}
    return ChainComplex(B.prime, dims, diffs)


# Homology of the directions ---------------------------------------------------

def vertical_homology(B: Bicomplex) -> Dict[Bidegree, Subquotient]:
    """E^1 of the column filtration with recorded bases"""
    p = B.prime
    result = {}
    for n in range(B.max_n + 1):
        for q in range(B.max_q + 1):
            cycles = nullspace(B.vertical(n, q), p) if B.dim(n, q - 1) else identity(B.dim(n, q))
            result[(n, q)] = Subquotient.of(cycles, B.vertical(n, q + 1), p)
    return result


def double_homology(B: Bicomplex) -> Dict[Bidegree, int]:
    """dim H^h_n H^v_q, the E^2 term of the column filtration"""
    p = B.prime
    vh = vertical_homology(B)
    induced = {}
    for (n, q), basis in vh.items():
        if n >= 1:
            induced[(n, q)] = induced_map(B.horizontal(n, q), basis, vh[(n - 1, q)])
    result = {}
    for (n, q), basis in vh.items():
        outgoing = rank(induced[(n, q)], p) if (n, q) in induced else 0
        incoming = rank(induced[(n + 1, q)], p) if (n + 1, q) in induced else 0
        dim = basis.dim - outgoing - incoming
        if dim:
            result[(n, q)] = dim
    return result


# Random instances -------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """Elementary bicomplex: "dot", "vertical", "square" or "zigzag" (with `length`) anchored at (n, q)"""
    kind: str
    n: int
    q: int
    length: int = 1

    def cells(self) -> List[Bidegree]:
        n, q = self.n, self.q
        if self.kind == "dot":
            return [(n, q)]
        if self.kind == "vertical":
            return [(n, q), (n, q - 1)]
        if self.kind == "square":
            return [(n, q), (n - 1, q), (n, q - 1), (n - 1, q - 1)]
        if self.kind == "zigzag":
            r = self.length
            xs = [(n - k, q + k) for k in range(r)]
            ys = [(n - k, q + k - 1) for k in range(1, r)]
            return xs + ys + [(n - r, q + r - 1)]
        raise SchemaViolation(f"Unknown piece kind {self.kind!r}")

    def fits(self, max_n: int, max_q: int) -> bool:
        return all(0 <= a <= max_n and 0 <= b <= max_q for a, b in self.cells())

    def arrows(self) -> Iterator[Tuple[str, int, int]]:
        """(direction, source index, target index) into cells()"""
        if self.kind == "vertical":
            yield "v", 0, 1
        elif self.kind == "square":
            yield "h", 0, 1
            yield "v", 0, 2
            yield "h", 2, 3
            yield "v", 1, 3
        elif self.kind == "zigzag":
            r = self.length
            # x_k at index k, y_k at index r + k - 1, the end z at index 2r - 1
            for k in range(r):
                target = r + k if k < r - 1 else 2 * r - 1
                yield "h", k, target
                if k >= 1:
                    yield "v", k, r + k - 1


def bicomplex_from_pieces(prime: int, pieces: List[Piece]) -> Bicomplex:
    """Direct sum of elementary pieces in the standard bases"""
    dims: Dict[Bidegree, int] = {}
    slots: List[List[Tuple[Bidegree, int]]] = []
    for piece in pieces:
        placed = []
        for cell in piece.cells():
            placed.append((cell, dims.get(cell, 0)))
            dims[cell] = dims.get(cell, 0) + 1
        slots.append(placed)
    dh = {key: zeros(dims.get((key[0] - 1, key[1]), 0), d) for key, d in dims.items()}
    dv = {key: zeros(dims.get((key[0], key[1] - 1), 0), d) for key, d in dims.items()}
    for piece, placed in zip(pieces, slots):
        for direction, source, target in piece.arrows():
            (src_cell, src_index), (tgt_cell, tgt_index) = placed[source], placed[target]
            table = dh if direction == "h" else dv
            table[src_cell][tgt_index, src_index] = 1
    return Bicomplex(prime, dims, dh, dv)


def change_basis(B: Bicomplex, rng: np.random.Generator) -> Bicomplex:
    """d' = P_target d P_source^-1 with an independent random P at every bidegree"""
    p = B.prime
    forward = {key: random_invertible(rng, d, p) for key, d in sorted(B.dims.items())}
    backward = {key: inverse(m, p) for key, m in forward.items()}

    def conjugate(matrix: np.ndarray, source: Bidegree, target: Bidegree) -> np.ndarray:
        if matrix.size == 0:
            return matrix
        return mat_mul(mat_mul(forward[target], matrix, p), backward[source], p)

    dh = {(n, q): conjugate(m, (n, q), (n - 1, q)) for (n, q), m in B.dh.items()}
    dv = {(n, q): conjugate(m, (n, q), (n, q - 1)) for (n, q), m in B.dv.items()}
    return Bicomplex(p, dict(B.dims), dh, dv)


def random_pieces(rng: np.random.Generator, max_n: int, max_q: int, dim_cap: int,
                  attempts: int = 12) -> List[Piece]:
    kinds = ("dot", "vertical", "square", "zigzag")
    chosen: List[Piece] = []
    load: Dict[Bidegree, int] = {}
    for _ in range(attempts):
        kind = kinds[int(rng.integers(0, len(kinds)))]
        n = int(rng.integers(0, max_n + 1))
        q = int(rng.integers(0, max_q + 1))
        length = int(rng.integers(1, max(max_n, 1) + 1)) if kind == "zigzag" else 1
        piece = Piece(kind, n, q, length)
        if not piece.fits(max_n, max_q):
            continue
        if any(load.get(cell, 0) + 1 > dim_cap for cell in piece.cells()):
            continue
        for cell in piece.cells():
            load[cell] = load.get(cell, 0) + 1
        chosen.append(piece)
    return chosen


def random_bicomplex(rng: np.random.Generator, prime: int = 2, max_n: int = 3, max_q: int = 3,
                     dim_cap: int = 2) -> Bicomplex:
    """Seeded instance: random elementary pieces, then a random change of basis"""
    pieces = random_pieces(rng, max_n, max_q, dim_cap)
    return change_basis(bicomplex_from_pieces(prime, pieces), rng)
