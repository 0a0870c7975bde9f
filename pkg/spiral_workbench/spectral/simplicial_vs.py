"""
Simplicial and bisimplicial F_p-vector spaces, truncated at a top level.

Faces d_i: X_n -> X_(n-1) and degeneracies s_j: X_n -> X_(n+1) are stored as
matrices.  Homotopy groups are always homology of the normalized (Moore)
complex N_n = ∩_(i>=1) ker d_i with differential d_0.  The inverse Dold-Kan
construction builds instances with
    Gamma(C)_n = ⊕ over surjections sigma: [n] -> [k] of C_k
in both directions of a bicomplex.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.bicomplex import Bicomplex
from ..algebra.chain_complex import ChainComplex, homology
from ..algebra.linalg import identity, is_zero, kernel_of_stack, mat_mul, rank, solve, zeros
from ..resource.artifact_io import bidegree_key, parse_bidegree, parse_matrix, require_keys
from ..resource.errors import NotASubcomplex, ObjectMismatch, SchemaViolation, SimplicialIdentityError
from ..resource.logger import LoggerFactory

Bidegree = Tuple[int, int]
Surjection = Tuple[int, ...]

logger = LoggerFactory.get_logger("simplicial_vs")


# Maps of Delta as value tuples ------------------------------------------------

def coface(n: int, i: int) -> Tuple[int, ...]:
    """delta^i: [n-1] -> [n], skipping i"""
    return tuple(x if x < i else x + 1 for x in range(n))


def codegeneracy(n: int, j: int) -> Tuple[int, ...]:
    """sigma^j: [n+1] -> [n], hitting j twice"""
    return tuple(x if x <= j else x - 1 for x in range(n + 2))


def surjections(n: int) -> List[Surjection]:
    """Surjections [n] -> [k] for all k, identity first, then by descending k and jump set"""
    result = []
    for k in range(n, -1, -1):
        for jumps in combinations(range(1, n + 1), k):
            values, level = [], 0
            for x in range(n + 1):
                if x in jumps:
                    level += 1
                values.append(level)
            result.append(tuple(values))
    return result


def epi_mono(values: Sequence[int]) -> Tuple[Surjection, Tuple[int, ...]]:
    """Factor a monotone map as a surjection followed by the inclusion of its image"""
    image = tuple(sorted(set(values)))
    position = {v: k for k, v in enumerate(image)}
    return tuple(position[v] for v in values), image


# Simplicial vector spaces ---------------------------------------------------

@dataclass
class SimplicialVS:
    """faces[n] = [d_0 .. d_n] out of X_n (n >= 1); degeneracies[n] = [s_0 .. s_n] out of X_n (n < top)"""
    prime: int
    dims: Dict[int, int]
    faces: Dict[int, List[np.ndarray]] = field(default_factory=dict)
    degeneracies: Dict[int, List[np.ndarray]] = field(default_factory=dict)
    validate_on_init: bool = True

    def __post_init__(self):
        self.dims = {int(n): int(d) for n, d in self.dims.items()}
        if sorted(self.dims) != list(range(len(self.dims))):
            raise SchemaViolation("Simplicial levels must be 0..top without gaps")
        p = self.prime
        self.faces = {int(n): [np.asarray(m, dtype=np.int64).reshape(self.dim(n - 1), self.dim(n)) % p for m in ms]
                      for n, ms in self.faces.items()}
        self.degeneracies = {int(n): [np.asarray(m, dtype=np.int64).reshape(self.dim(n + 1), self.dim(n)) % p
                                      for m in ms]
                             for n, ms in self.degeneracies.items()}
        for n in range(1, self.top + 1):
            if len(self.faces.get(n, [])) != n + 1:
                raise SchemaViolation(f"Level {n} needs {n + 1} face maps")
        for n in range(self.top):
            if len(self.degeneracies.get(n, [])) != n + 1:
                raise SchemaViolation(f"Level {n} needs {n + 1} degeneracy maps")
        if self.validate_on_init:
            self.validate()

    @property
    def top(self) -> int:
        return max(self.dims, default=0)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def face(self, n: int, i: int) -> np.ndarray:
        return self.faces[n][i]

    def degeneracy(self, n: int, j: int) -> np.ndarray:
        return self.degeneracies[n][j]

    def validate(self) -> None:
        check_simplicial_identities(self.prime, self.top, self.face, self.degeneracy, "")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.prime,
            "dims": {str(n): d for n, d in sorted(self.dims.items())},
            "face": {str(n): ms for n, ms in sorted(self.faces.items())},
            "degen": {str(n): ms for n, ms in sorted(self.degeneracies.items())},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SimplicialVS":
        require_keys(data, ("p", "dims", "face", "degen"), "SimplicialVS")
        try:
            dims = {int(n): int(d) for n, d in data["dims"].items()}
            faces = {int(n): [parse_matrix(m, dims.get(int(n) - 1, 0), dims.get(int(n), 0), f"face at {n}")
                              for m in ms] for n, ms in data["face"].items()}
            degens = {int(n): [parse_matrix(m, dims.get(int(n) + 1, 0), dims.get(int(n), 0), f"degeneracy at {n}")
                               for m in ms] for n, ms in data["degen"].items()}
        except (TypeError, ValueError, AttributeError):
            raise SchemaViolation("SimplicialVS levels must be keyed by integers")
        try:
            return cls(int(data["p"]), dims, faces, degens)
        except SimplicialIdentityError as e:
            raise SchemaViolation(f"SimplicialVS violates the simplicial identities: {str(e)}", e.witness)


def _equal(first: np.ndarray, second: np.ndarray, prime: int) -> bool:
    return first.shape == second.shape and is_zero((first - second) % prime, prime)


def check_simplicial_identities(prime: int, top: int,
                                face: Callable[[int, int], np.ndarray],
                                degeneracy: Callable[[int, int], np.ndarray],
                                where: str) -> None:
    """Raise SimplicialIdentityError at the first failing identity"""
    p = prime

    def fail(identity_name: str, n: int, i: int, j: int) -> None:
        raise SimplicialIdentityError(f"{identity_name} fails at level {n}{where} (i={i}, j={j})",
                                      {"identity": identity_name, "level": n, "i": i, "j": j, "where": where})

    for n in range(2, top + 1):
        for j in range(1, n + 1):
            for i in range(j):
                if not _equal(mat_mul(face(n - 1, i), face(n, j), p), mat_mul(face(n - 1, j - 1), face(n, i), p), p):
                    fail("d_i d_j = d_(j-1) d_i", n, i, j)
    for n in range(top):
        for j in range(n + 1):
            s = degeneracy(n, j)
            for i in range(n + 2):
                lhs = mat_mul(face(n + 1, i), s, p)
                if i in (j, j + 1):
                    rhs = identity(lhs.shape[1])
                elif i < j:
                    rhs = mat_mul(degeneracy(n - 1, j - 1), face(n, i), p)
                else:
                    rhs = mat_mul(degeneracy(n - 1, j), face(n, i - 1), p)
                if not _equal(lhs, rhs, p):
                    fail("d_i s_j", n, i, j)
            if n + 1 < top:
                for i in range(j + 1):
                    lhs = mat_mul(degeneracy(n + 1, i), s, p)
                    rhs = mat_mul(degeneracy(n + 1, j + 1), degeneracy(n, i), p)
                    if not _equal(lhs, rhs, p):
                        fail("s_i s_j = s_(j+1) s_i", n, i, j)


def normalized_basis(X: SimplicialVS, n: int) -> np.ndarray:
    """Columns spanning N_n = ∩_(i>=1) ker d_i"""
    if n == 0:
        return identity(X.dim(0))
    return kernel_of_stack([X.face(n, i) for i in range(1, n + 1)], X.dim(n), X.prime)


def restricted_complex(prime: int, bases: Dict[int, np.ndarray],
                       differential: Callable[[int], np.ndarray]) -> ChainComplex:
    """The chain complex on span(bases[n]) cut out by `differential(n)` in ambient coordinates"""
    dims = {n: basis.shape[1] for n, basis in bases.items()}
    diffs = {}
    for n, basis in bases.items():
        if n - 1 not in bases or basis.shape[1] == 0 or bases[n - 1].shape[1] == 0:
            continue
        image = mat_mul(differential(n), basis, prime)
        coords = solve(bases[n - 1], image, prime)
        if coords is None:
            raise NotASubcomplex(f"Differential leaves the chosen subspaces in degree {n}", {"degree": n})
        diffs[n] = coords
    return ChainComplex(prime, dims, diffs)


def normalize(X: SimplicialVS) -> ChainComplex:
    """Moore complex N X with differential d_0"""
    bases = {n: normalized_basis(X, n) for n in range(X.top + 1)}
    return restricted_complex(X.prime, bases, lambda n: X.face(n, 0))


def homotopy_groups(X: SimplicialVS) -> Dict[int, int]:
    """dim pi_n X = dim H_n(N X); the top level is reported too and is only a bound"""
    return {n: group.rank for n, group in homology(normalize(X)).items()}


def sub_simplicial(X: SimplicialVS, bases: Dict[int, np.ndarray]) -> SimplicialVS:
    """Restrict X to levelwise subspaces closed under every face and degeneracy"""
    p = X.prime

    def restrict(matrix: np.ndarray, source: np.ndarray, target: np.ndarray, what: str) -> np.ndarray:
        if source.shape[1] == 0 or target.shape[1] == 0:
            if source.shape[1] and np.any(mat_mul(matrix, source, p)):
                raise NotASubcomplex(f"{what} leaves the subspace")
            return zeros(target.shape[1], source.shape[1])
        coords = solve(target, mat_mul(matrix, source, p), p)
        if coords is None:
            raise NotASubcomplex(f"{what} leaves the subspace")
        return coords

    dims = {n: bases[n].shape[1] for n in range(X.top + 1)}
    faces = {n: [restrict(X.face(n, i), bases[n], bases[n - 1], f"d_{i} at level {n}") for i in range(n + 1)]
             for n in range(1, X.top + 1)}
    degens = {n: [restrict(X.degeneracy(n, j), bases[n], bases[n + 1], f"s_{j} at level {n}") for j in range(n + 1)]
              for n in range(X.top)}
    return SimplicialVS(p, dims, faces, degens, validate_on_init=False)


# Inverse Dold-Kan ------------------------------------------------------------

Block = Tuple[Tuple[Surjection, ...], Tuple[int, ...], int, int]


def gamma_layout(levels: Tuple[int, ...], dim_of: Callable[[Tuple[int, ...]], int]) -> List[Block]:
    """(labels, ks, offset, dim) for every product of surjections out of `levels`"""
    blocks, offset = [], 0
    for labels in product(*(surjections(n) for n in levels)):
        ks = tuple(label[-1] for label in labels)
        d = dim_of(ks)
        if d:
            blocks.append((labels, ks, offset, d))
            offset += d
    return blocks


def layout_size(layout: List[Block]) -> int:
    return sum(block[3] for block in layout)


def _gamma_operator(source: List[Block], target: List[Block], theta: Sequence[int], axis: int,
                    boundary: Callable[[Tuple[int, ...]], np.ndarray]) -> np.ndarray:
    """Matrix of theta^* acting on the `axis` index: sigma o theta = eta o tau, eta^* is id, d_0 or zero"""
    where = {block[0]: block for block in target}
    matrix = zeros(layout_size(target), layout_size(source))
    for labels, ks, col, width in source:
        sigma = labels[axis]
        tau, image = epi_mono([sigma[x] for x in theta])
        k = ks[axis]
        new_labels = labels[:axis] + (tau,) + labels[axis + 1:]
        if new_labels not in where:
            continue
        _, _, row, height = where[new_labels]
        if image == tuple(range(k + 1)):
            matrix[row:row + height, col:col + width] = identity(width)
        elif image == tuple(range(1, k + 1)):
            matrix[row:row + height, col:col + width] = boundary(ks)
    return matrix


def dold_kan(C: ChainComplex, top: Optional[int] = None) -> SimplicialVS:
    """Gamma(C) truncated at `top` (default: the top degree of C)"""
    if not C.is_field:
        raise ObjectMismatch("Dold-Kan instances are built over F_p")
    top = max(C.degrees(), default=0) if top is None else top
    layouts = {n: gamma_layout((n,), lambda ks: C.dim(ks[0])) for n in range(top + 1)}

    def boundary(ks: Tuple[int, ...]) -> np.ndarray:
        return C.differential(ks[0])

    dims = {n: layout_size(layout) for n, layout in layouts.items()}
    faces = {n: [_gamma_operator(layouts[n], layouts[n - 1], coface(n, i), 0, boundary) for i in range(n + 1)]
             for n in range(1, top + 1)}
    degens = {n: [_gamma_operator(layouts[n], layouts[n + 1], codegeneracy(n, j), 0, boundary)
                  for j in range(n + 1)] for n in range(top)}
    return SimplicialVS(C.ring, dims, faces, degens)


# Bisimplicial vector spaces -----------------------------------------------------

@dataclass
class BisimplicialVS:
    """X_(n,q) for n <= N (external, horizontal) and q <= Q (internal, vertical).

    hface[(n, q)] = [d^h_0 .. d^h_n] out of X_(n,q); hdeg[(n, q)] for n < N;
    vface and vdeg likewise in q.
    """
    prime: int
    N: int
    Q: int
    dims: Dict[Bidegree, int]
    hface: Dict[Bidegree, List[np.ndarray]] = field(default_factory=dict)
    hdeg: Dict[Bidegree, List[np.ndarray]] = field(default_factory=dict)
    vface: Dict[Bidegree, List[np.ndarray]] = field(default_factory=dict)
    vdeg: Dict[Bidegree, List[np.ndarray]] = field(default_factory=dict)
    validate_on_init: bool = True

    def __post_init__(self):
        p = self.prime
        self.dims = {(n, q): int(self.dims.get((n, q), 0)) for n in range(self.N + 1) for q in range(self.Q + 1)}

        def shaped(table: Dict[Bidegree, List[np.ndarray]], step: Bidegree) -> Dict[Bidegree, List[np.ndarray]]:
            return {(n, q): [np.asarray(m, dtype=np.int64).reshape(self.dim(n + step[0], q + step[1]),
                                                                   self.dim(n, q)) % p for m in ms]
                    for (n, q), ms in table.items()}

        self.hface = shaped(self.hface, (-1, 0))
        self.hdeg = shaped(self.hdeg, (1, 0))
        self.vface = shaped(self.vface, (0, -1))
        self.vdeg = shaped(self.vdeg, (0, 1))
        for n, q in self.dims:
            if n >= 1 and len(self.hface.get((n, q), [])) != n + 1:
                raise SchemaViolation(f"X_({n},{q}) needs {n + 1} horizontal faces")
            if q >= 1 and len(self.vface.get((n, q), [])) != q + 1:
                raise SchemaViolation(f"X_({n},{q}) needs {q + 1} vertical faces")
            if n < self.N and len(self.hdeg.get((n, q), [])) != n + 1:
                raise SchemaViolation(f"X_({n},{q}) needs {n + 1} horizontal degeneracies")
            if q < self.Q and len(self.vdeg.get((n, q), [])) != q + 1:
                raise SchemaViolation(f"X_({n},{q}) needs {q + 1} vertical degeneracies")
        if self.validate_on_init:
            self.validate()

    def dim(self, n: int, q: int) -> int:
        return self.dims.get((n, q), 0)

    def dh(self, n: int, q: int, i: int) -> np.ndarray:
        return self.hface[(n, q)][i]

    def sh(self, n: int, q: int, j: int) -> np.ndarray:
        return self.hdeg[(n, q)][j]

    def dv(self, n: int, q: int, i: int) -> np.ndarray:
        return self.vface[(n, q)][i]

    def sv(self, n: int, q: int, j: int) -> np.ndarray:
        return self.vdeg[(n, q)][j]

    def column(self, n: int) -> SimplicialVS:
        """X_(n, .) with the vertical structure"""
        return SimplicialVS(self.prime, {q: self.dim(n, q) for q in range(self.Q + 1)},
                            {q: self.vface[(n, q)] for q in range(1, self.Q + 1)},
                            {q: self.vdeg[(n, q)] for q in range(self.Q)}, validate_on_init=False)

    def row(self, q: int) -> SimplicialVS:
        """X_(., q) with the horizontal structure"""
        return SimplicialVS(self.prime, {n: self.dim(n, q) for n in range(self.N + 1)},
                            {n: self.hface[(n, q)] for n in range(1, self.N + 1)},
                            {n: self.hdeg[(n, q)] for n in range(self.N)}, validate_on_init=False)

    def validate(self) -> None:
        p = self.prime
        for q in range(self.Q + 1):
            check_simplicial_identities(p, self.N, lambda n, i: self.dh(n, q, i),
                                        lambda n, j: self.sh(n, q, j), f" of row {q}")
        for n in range(self.N + 1):
            check_simplicial_identities(p, self.Q, lambda q, i: self.dv(n, q, i),
                                        lambda q, j: self.sv(n, q, j), f" of column {n}")
        self._check_commuting()

    def _check_commuting(self) -> None:
        p = self.prime

        def fail(kind: str, n: int, q: int, i: int, j: int) -> None:
            raise SimplicialIdentityError(f"Horizontal and vertical {kind} do not commute at ({n},{q})",
                                          {"kind": kind, "bidegree": [n, q], "i": i, "j": j})

        for n, q in sorted(self.dims):
            h_ops = [("d", self.dh(n, q, i), (n - 1, q), i) for i in range(n + 1) if n >= 1]
            h_ops += [("s", self.sh(n, q, i), (n + 1, q), i) for i in range(n + 1) if n < self.N]
            v_ops = [("d", self.dv(n, q, j), (n, q - 1), j) for j in range(q + 1) if q >= 1]
            v_ops += [("s", self.sv(n, q, j), (n, q + 1), j) for j in range(q + 1) if q < self.Q]
            for h_kind, h, (hn, hq), i in h_ops:
                for v_kind, v, (vn, vq), j in v_ops:
                    after_h = self.dv(hn, hq, j) if v_kind == "d" else self.sv(hn, hq, j)
                    after_v = self.dh(vn, vq, i) if h_kind == "d" else self.sh(vn, vq, i)
                    if not _equal(mat_mul(after_h, h, p), mat_mul(after_v, v, p), p):
                        fail(f"{h_kind}^h/{v_kind}^v", n, q, i, j)

    def to_dict(self) -> Dict[str, Any]:
        def table(ops: Dict[Bidegree, List[np.ndarray]]) -> Dict[str, Any]:
            return {bidegree_key(n, q): ms for (n, q), ms in sorted(ops.items())}

        return {
            "p": self.prime,
            "N": self.N,
            "Q": self.Q,
            "dims": {bidegree_key(n, q): d for (n, q), d in sorted(self.dims.items()) if d},
            "dh_face": table(self.hface),
            "dh_degen": table(self.hdeg),
            "dv_face": table(self.vface),
            "dv_degen": table(self.vdeg),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BisimplicialVS":
        require_keys(data, ("p", "dims", "dh_face", "dh_degen", "dv_face", "dv_degen"), "BisimplicialVS")
        try:
            dims = {parse_bidegree(key): int(d) for key, d in data["dims"].items()}
        except (TypeError, ValueError, AttributeError):
            raise SchemaViolation("BisimplicialVS dims must map 'n,q' to integers")
        N = int(data.get("N", max((n for n, _ in dims), default=0)))
        Q = int(data.get("Q", max((q for _, q in dims), default=0)))

        def dim(n: int, q: int) -> int:
            return dims.get((n, q), 0)

        def read(name: str, step: Bidegree) -> Dict[Bidegree, List[np.ndarray]]:
            table = {}
            for key, ms in data[name].items():
                n, q = parse_bidegree(key)
                table[(n, q)] = [parse_matrix(m, dim(n + step[0], q + step[1]), dim(n, q), f"{name} at {key}")
                                 for m in ms]
            return table

        try:
            return cls(int(data["p"]), N, Q, dims, read("dh_face", (-1, 0)), read("dh_degen", (1, 0)),
                       read("dv_face", (0, -1)), read("dv_degen", (0, 1)))
        except SimplicialIdentityError as e:
            raise SchemaViolation(f"BisimplicialVS violates the simplicial identities: {str(e)}", e.witness)


def dold_kan_inverse2(B: Bicomplex, max_n: Optional[int] = None, max_q: Optional[int] = None) -> BisimplicialVS:
    """Gamma applied in both directions; the result is validated and normalizes back to B exactly"""
    N = B.max_n if max_n is None else max_n
    Q = B.max_q if max_q is None else max_q
    layouts = {(n, q): gamma_layout((n, q), lambda ks: B.dim(*ks)) for n in range(N + 1) for q in range(Q + 1)}

    def horizontal(ks: Tuple[int, ...]) -> np.ndarray:
        return B.horizontal(*ks)

    def vertical(ks: Tuple[int, ...]) -> np.ndarray:
        return B.vertical(*ks)

    dims = {key: layout_size(layout) for key, layout in layouts.items()}
    hface, hdeg, vface, vdeg = {}, {}, {}, {}
    for (n, q), layout in layouts.items():
        if n >= 1:
            hface[(n, q)] = [_gamma_operator(layout, layouts[(n - 1, q)], coface(n, i), 0, horizontal)
                             for i in range(n + 1)]
        if n < N:
            hdeg[(n, q)] = [_gamma_operator(layout, layouts[(n + 1, q)], codegeneracy(n, j), 0, horizontal)
                            for j in range(n + 1)]
        if q >= 1:
            vface[(n, q)] = [_gamma_operator(layout, layouts[(n, q - 1)], coface(q, i), 1, vertical)
                             for i in range(q + 1)]
        if q < Q:
            vdeg[(n, q)] = [_gamma_operator(layout, layouts[(n, q + 1)], codegeneracy(q, j), 1, vertical)
                            for j in range(q + 1)]
    X = BisimplicialVS(B.prime, N, Q, dims, hface, hdeg, vface, vdeg)
    # the identity-by-identity block sits first at every bidegree
    leading = {key: identity(X.dim(*key))[:, :B.dim(*key)] for key in X.dims}
    recovered = double_moore(X, leading)
    for n, q in B.bidegrees():
        if n > N or q > Q:
            continue
        if not (_equal(recovered.horizontal(n, q), B.horizontal(n, q), B.prime)
                and _equal(recovered.vertical(n, q), B.vertical(n, q), B.prime)):
            raise ObjectMismatch(f"Normalization does not recover the bicomplex at ({n},{q})", {"bidegree": [n, q]})
    logger.debug("Built bisimplicial instance", {"N": N, "Q": Q, "total_dim": sum(dims.values())})
    return X


# Normalizations and the diagonal -------------------------------------------------

def vertical_normalized_basis(X: BisimplicialVS, n: int, q: int) -> np.ndarray:
    """∩_(j>=1) ker d^v_j inside X_(n,q)"""
    if q == 0:
        return identity(X.dim(n, 0))
    return kernel_of_stack([X.dv(n, q, j) for j in range(1, q + 1)], X.dim(n, q), X.prime)


def double_moore_basis(X: BisimplicialVS, n: int, q: int) -> np.ndarray:
    """∩_(i>=1) ker d^h_i ∩ ∩_(j>=1) ker d^v_j inside X_(n,q)"""
    maps = [X.dh(n, q, i) for i in range(1, n + 1)] + [X.dv(n, q, j) for j in range(1, q + 1)]
    return kernel_of_stack(maps, X.dim(n, q), X.prime)


def double_moore(X: BisimplicialVS, bases: Optional[Dict[Bidegree, np.ndarray]] = None) -> Bicomplex:
    """Normalize both directions: the bicomplex with d^h_0 and d^v_0 on the double Moore subspaces.

    Given `bases`, they must span exactly those subspaces.
    """
    p = X.prime
    expected = {key: double_moore_basis(X, *key) for key in X.dims}
    if bases is None:
        bases = expected
    else:
        for key, basis in bases.items():
            if basis.shape[1] != expected[key].shape[1] or rank(basis, p) != basis.shape[1] or \
                    solve(expected[key], basis, p) is None:
                raise NotASubcomplex(f"Supplied basis does not span the normalized part at {key}",
                                     {"bidegree": list(key)})

    def coords(matrix: np.ndarray, source: Bidegree, target: Bidegree) -> np.ndarray:
        if bases[source].shape[1] == 0 or bases[target].shape[1] == 0:
            return zeros(bases[target].shape[1], bases[source].shape[1])
        solution = solve(bases[target], mat_mul(matrix, bases[source], p), p)
        if solution is None:
            raise NotASubcomplex(f"d_0 leaves the normalized part from {source}", {"bidegree": list(source)})
        return solution

    dims = {key: basis.shape[1] for key, basis in bases.items()}
    dh = {(n, q): coords(X.dh(n, q, 0), (n, q), (n - 1, q)) for n, q in X.dims if n >= 1}
    dv = {(n, q): coords(X.dv(n, q, 0), (n, q), (n, q - 1)) for n, q in X.dims if q >= 1}
    return Bicomplex(p, dims, dh, dv)


def diag(X: BisimplicialVS) -> SimplicialVS:
    """diag(X)_k = X_(k,k) with d_i = d^h_i d^v_i and s_i = s^h_i s^v_i"""
    p = X.prime
    top = min(X.N, X.Q)
    dims = {k: X.dim(k, k) for k in range(top + 1)}
    faces = {k: [mat_mul(X.dh(k, k - 1, i), X.dv(k, k, i), p) for i in range(k + 1)] for k in range(1, top + 1)}
    degens = {k: [mat_mul(X.sh(k, k + 1, j), X.sv(k, k, j), p) for j in range(k + 1)] for k in range(top)}
    return SimplicialVS(p, dims, faces, degens)


def constant_bisimplicial(prime: int, dim: int, N: int, Q: int) -> BisimplicialVS:
    """Every X_(n,q) = F_p^dim with identity structure maps"""
    one = Bicomplex(prime, {(0, 0): dim})
    return dold_kan_inverse2(one, N, Q)
