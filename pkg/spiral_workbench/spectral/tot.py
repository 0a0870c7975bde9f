"""
The homotopy spectral sequence of a cosimplicial simplicial F_p-vector space.

X^n_q carries cofaces d^i: X^(n-1) -> X^n, codegeneracies s^j: X^(n+1) -> X^n
and an internal simplicial structure in q.  Normalizing both directions gives
a cochain bicomplex B''_(k,q) = N^k ∩ (vertical Moore part) with
delta = Σ(-1)^i d^i and the vertical d_0.  The Tot tower is

    Tot^n_t = ⊕_(k <= n) B''_(k, t+k),   D = delta + (-1)^k d_0,

with fibres F^n = B''_(n, . + n) in 0 -> F^n -> Tot^n -> Tot^(n-1) -> 0.
The couple uses D_(n,p) = H_p(Tot^n) and E_(n,p) = H_p(F^n):

    gamma: E_(n,p) -> D_(n,p)       degree (0, 0),  inclusion
    alpha: D_(n,p) -> D_(n-1,p)     degree (-1, 0), projection
    beta:  D_(n,p) -> E_(n+1,p-1)   degree (1, -1), connecting map

so d_r runs E_(n,p) -> E_(n+r,p-1).
"""

from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.bicomplex import Bicomplex
from ..algebra.chain_complex import (ChainComplex, ShortExactSequence, connecting_map, homology,
                                     homology_basis, induced_map)
from ..algebra.exact_couple import ExactCouple, Page, pages, require_exact
from ..algebra.linalg import identity, is_zero, kernel_of_stack, mat_mul, solve, zeros
from ..algebra.staircase import FilteredComplex, extend_representative, staircase_pages
from ..resource.artifact_io import bidegree_key, parse_bidegree, parse_matrix, require_keys
from ..resource.errors import (BoundaryNotZero, ClassDoesNotSurvive, IndexOutOfRange, NotASubcomplex,
                               ObjectMismatch, SchemaViolation, SimplicialIdentityError)
from ..resource.logger import LoggerFactory
from .simplicial_vs import (Block, SimplicialVS, check_simplicial_identities, codegeneracy, coface,
                            epi_mono, gamma_layout, layout_size, sub_simplicial, _gamma_operator)
from .spiral import compare_pages

Bidegree = Tuple[int, int]

logger = LoggerFactory.get_logger("tot")


@dataclass
class CochainBicomplex:
    """delta[(k, q)]: C^k_q -> C^(k+1)_q and dv[(k, q)]: C^k_q -> C^k_(q-1), commuting"""
    prime: int
    dims: Dict[Bidegree, int]
    delta: Dict[Bidegree, np.ndarray] = field(default_factory=dict)
    dv: Dict[Bidegree, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        p = self.prime
        for (k, q), d in self.dims.items():
            if k < 0 or q < 0 or d < 0:
                raise IndexOutOfRange(f"Cochain bicomplex entry at ({k},{q}) leaves the first quadrant")
        self.dims = {key: int(d) for key, d in self.dims.items() if d}
        self.delta = {key: np.asarray(m, dtype=np.int64).reshape(self.dim(key[0] + 1, key[1]), self.dim(*key)) % p
                      for key, m in self.delta.items()}
        self.dv = {key: np.asarray(m, dtype=np.int64).reshape(self.dim(key[0], key[1] - 1), self.dim(*key)) % p
                   for key, m in self.dv.items()}
        self.validate()

    def dim(self, k: int, q: int) -> int:
        return self.dims.get((k, q), 0)

    @property
    def max_k(self) -> int:
        return max((k for k, _ in self.dims), default=0)

    @property
    def max_q(self) -> int:
        return max((q for _, q in self.dims), default=0)

    def coboundary(self, k: int, q: int) -> np.ndarray:
        if (k, q) in self.delta:
            return self.delta[(k, q)]
        return zeros(self.dim(k + 1, q), self.dim(k, q))

    def vertical(self, k: int, q: int) -> np.ndarray:
        if (k, q) in self.dv:
            return self.dv[(k, q)]
        return zeros(self.dim(k, q - 1), self.dim(k, q))

    def validate(self) -> None:
        p = self.prime
        for k, q in sorted(self.dims):
            if np.any(mat_mul(self.coboundary(k + 1, q), self.coboundary(k, q), p)):
                raise BoundaryNotZero(f"delta o delta != 0 at ({k},{q})", {"bidegree": [k, q]})
            if np.any(mat_mul(self.vertical(k, q - 1), self.vertical(k, q), p)):
                raise BoundaryNotZero(f"dv o dv != 0 at ({k},{q})", {"bidegree": [k, q]})
            square = mat_mul(self.coboundary(k, q - 1), self.vertical(k, q), p) - \
                mat_mul(self.vertical(k + 1, q), self.coboundary(k, q), p)
            if np.any(square % p):
                raise BoundaryNotZero(f"Square at ({k},{q}) does not commute", {"bidegree": [k, q]})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.prime,
            "dims": {bidegree_key(k, q): d for (k, q), d in sorted(self.dims.items())},
            "delta": {bidegree_key(k, q): m for (k, q), m in sorted(self.delta.items()) if m.size},
            "dv": {bidegree_key(k, q): m for (k, q), m in sorted(self.dv.items()) if m.size},
        }


def cosimplicial_from_bicomplex(B: Bicomplex, N: Optional[int] = None) -> CochainBicomplex:
    """Read a bicomplex backwards: C^n_q = B_(N-n, q) with delta = d^h"""
    N = B.max_n if N is None else N
    dims = {(N - n, q): d for (n, q), d in B.dims.items() if n <= N}
    delta = {(N - n, q): m for (n, q), m in B.dh.items() if 1 <= n <= N}
    dv = {(N - n, q): m for (n, q), m in B.dv.items() if n <= N}
    return CochainBicomplex(B.prime, dims, delta, dv)


# Cosimplicial simplicial vector spaces ------------------------------------------

@dataclass
class CosimplicialSVS:
    """X^n_q for n <= N, q <= Q.

    coface[(n, q)] = [d^0 .. d^n]: X^(n-1)_q -> X^n_q for n >= 1;
    codegen[(n, q)] = [s^0 .. s^n]: X^(n+1)_q -> X^n_q for n < N;
    vface / vdeg are the internal faces and degeneracies of each X^n.
    """
    prime: int
    N: int
    Q: int
    dims: Dict[Bidegree, int]
    coface: Dict[Bidegree, List[np.ndarray]] = field(default_factory=dict)
    codegen: Dict[Bidegree, List[np.ndarray]] = field(default_factory=dict)
    vface: Dict[Bidegree, List[np.ndarray]] = field(default_factory=dict)
    vdeg: Dict[Bidegree, List[np.ndarray]] = field(default_factory=dict)
    validate_on_init: bool = True

    def __post_init__(self):
        p = self.prime
        self.dims = {(n, q): int(self.dims.get((n, q), 0)) for n in range(self.N + 1) for q in range(self.Q + 1)}

        def shaped(table, target, source):
            return {(n, q): [np.asarray(m, dtype=np.int64).reshape(self.dim(*target(n, q)), self.dim(*source(n, q))) % p
                             for m in ms] for (n, q), ms in table.items()}

        self.coface = shaped(self.coface, lambda n, q: (n, q), lambda n, q: (n - 1, q))
        self.codegen = shaped(self.codegen, lambda n, q: (n, q), lambda n, q: (n + 1, q))
        self.vface = shaped(self.vface, lambda n, q: (n, q - 1), lambda n, q: (n, q))
        self.vdeg = shaped(self.vdeg, lambda n, q: (n, q + 1), lambda n, q: (n, q))
        for n, q in self.dims:
            if n >= 1 and len(self.coface.get((n, q), [])) != n + 1:
                raise SchemaViolation(f"X^{n}_{q} needs {n + 1} cofaces")
            if n < self.N and len(self.codegen.get((n, q), [])) != n + 1:
                raise SchemaViolation(f"X^{n}_{q} needs {n + 1} codegeneracies")
            if q >= 1 and len(self.vface.get((n, q), [])) != q + 1:
                raise SchemaViolation(f"X^{n}_{q} needs {q + 1} internal faces")
            if q < self.Q and len(self.vdeg.get((n, q), [])) != q + 1:
                raise SchemaViolation(f"X^{n}_{q} needs {q + 1} internal degeneracies")
        if self.validate_on_init:
            self.validate()

    def dim(self, n: int, q: int) -> int:
        return self.dims.get((n, q), 0)

    def d(self, n: int, q: int, i: int) -> np.ndarray:
        """d^i: X^(n-1)_q -> X^n_q"""
        return self.coface[(n, q)][i]

    def s(self, n: int, q: int, j: int) -> np.ndarray:
        """s^j: X^(n+1)_q -> X^n_q"""
        return self.codegen[(n, q)][j]

    def dv_(self, n: int, q: int, i: int) -> np.ndarray:
        return self.vface[(n, q)][i]

    def sv(self, n: int, q: int, j: int) -> np.ndarray:
        return self.vdeg[(n, q)][j]

    def level(self, n: int) -> SimplicialVS:
        """The simplicial vector space X^n"""
        return SimplicialVS(self.prime, {q: self.dim(n, q) for q in range(self.Q + 1)},
                            {q: self.vface[(n, q)] for q in range(1, self.Q + 1)},
                            {q: self.vdeg[(n, q)] for q in range(self.Q)}, validate_on_init=False)

    def validate(self) -> None:
        p = self.prime
        # transposes of cofaces and codegeneracies obey the simplicial identities exactly
        # when the originals obey the cosimplicial ones
        for q in range(self.Q + 1):
            try:
                check_simplicial_identities(p, self.N, lambda n, i: self.d(n, q, i).T,
                                            lambda n, j: self.s(n, q, j).T, f" of row {q}")
            except SimplicialIdentityError as e:
                raise SimplicialIdentityError(f"Cosimplicial identity fails: {e.message}", e.witness)
        for n in range(self.N + 1):
            check_simplicial_identities(p, self.Q, lambda q, i: self.dv_(n, q, i),
                                        lambda q, j: self.sv(n, q, j), f" of level {n}")
        self._check_commuting()

    def _check_commuting(self) -> None:
        p = self.prime
        for n, q in sorted(self.dims):
            outer = [("d", self.d(n + 1, q, i), n + 1, i) for i in range(n + 2) if n < self.N]
            outer += [("s", self.s(n - 1, q, j), n - 1, j) for j in range(n) if n >= 1]
            inner = [("d", self.dv_(n, q, i), q - 1, i) for i in range(q + 1) if q >= 1]
            inner += [("s", self.sv(n, q, j), q + 1, j) for j in range(q + 1) if q < self.Q]
            for o_kind, o, o_level, i in outer:
                for v_kind, v, v_level, j in inner:
                    after_outer = self.dv_(o_level, q, j) if v_kind == "d" else self.sv(o_level, q, j)
                    after_inner = self.d(n + 1, v_level, i) if o_kind == "d" else self.s(n - 1, v_level, i)
                    if not is_zero((mat_mul(after_outer, o, p) - mat_mul(after_inner, v, p)) % p, p):
                        raise SimplicialIdentityError(
                            f"Cosimplicial and internal operators do not commute at ({n},{q})",
                            {"kind": f"{o_kind}/{v_kind}", "bidegree": [n, q], "i": i, "j": j})

    def to_dict(self) -> Dict[str, Any]:
        def table(ops: Dict[Bidegree, List[np.ndarray]]) -> Dict[str, Any]:
            return {bidegree_key(n, q): ms for (n, q), ms in sorted(ops.items())}

        return {
            "p": self.prime,
            "N": self.N,
            "Q": self.Q,
            "dims": {bidegree_key(n, q): d for (n, q), d in sorted(self.dims.items()) if d},
            "coface": table(self.coface),
            "codegen": table(self.codegen),
            "dv_face": table(self.vface),
            "dv_degen": table(self.vdeg),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CosimplicialSVS":
        require_keys(data, ("p", "dims", "coface", "codegen", "dv_face", "dv_degen"), "CosimplicialSVS")
        try:
            dims = {parse_bidegree(key): int(d) for key, d in data["dims"].items()}
        except (TypeError, ValueError, AttributeError):
            raise SchemaViolation("CosimplicialSVS dims must map 'n,q' to integers")
        N = int(data.get("N", max((n for n, _ in dims), default=0)))
        Q = int(data.get("Q", max((q for _, q in dims), default=0)))

        def dim(n: int, q: int) -> int:
            return dims.get((n, q), 0)

        def read(name: str, target: Bidegree, source: Bidegree) -> Dict[Bidegree, List[np.ndarray]]:
            result = {}
            for key, ms in data[name].items():
                n, q = parse_bidegree(key)
                rows, cols = dim(n + target[0], q + target[1]), dim(n + source[0], q + source[1])
                result[(n, q)] = [parse_matrix(m, rows, cols, f"{name} at {key}") for m in ms]
            return result

        try:
            return cls(int(data["p"]), N, Q, dims,
                       read("coface", (0, 0), (-1, 0)), read("codegen", (0, 0), (1, 0)),
                       read("dv_face", (0, -1), (0, 0)), read("dv_degen", (0, 1), (0, 0)))
        except SimplicialIdentityError as e:
            raise SchemaViolation(f"CosimplicialSVS violates its identities: {str(e)}", e.witness)


def _cogamma_operator(source: List[Block], target: List[Block], theta: Sequence[int],
                      coboundary) -> np.ndarray:
    """theta_* on the cosimplicial index: row sigma reads column tau where sigma o theta = eta o tau"""
    where = {block[0]: block for block in source}
    matrix = zeros(layout_size(target), layout_size(source))
    for labels, ks, row, height in target:
        sigma = labels[0]
        tau, image = epi_mono([sigma[x] for x in theta])
        k = ks[0]
        source_labels = (tau,) + labels[1:]
        if source_labels not in where:
            continue
        _, source_ks, col, width = where[source_labels]
        if image == tuple(range(k + 1)):
            matrix[row:row + height, col:col + width] = identity(width)
        elif image == tuple(range(1, k + 1)):
            matrix[row:row + height, col:col + width] = coboundary(source_ks)
    return matrix


def dual_dold_kan(C: CochainBicomplex, N: Optional[int] = None, Q: Optional[int] = None) -> CosimplicialSVS:
    """X^n_q = ⊕ over sigma: [n] -> [k] and tau: [q] -> [b] of C^k_b; normalizes back to C"""
    N = C.max_k if N is None else N
    Q = C.max_q if Q is None else Q
    layouts = {(n, q): gamma_layout((n, q), lambda ks: C.dim(*ks)) for n in range(N + 1) for q in range(Q + 1)}

    def coboundary(ks: Tuple[int, ...]) -> np.ndarray:
        return C.coboundary(*ks)

    def vertical(ks: Tuple[int, ...]) -> np.ndarray:
        return C.vertical(*ks)

    dims = {key: layout_size(layout) for key, layout in layouts.items()}
    cofaces, codegens, vface, vdeg = {}, {}, {}, {}
    for (n, q), layout in layouts.items():
        if n >= 1:
            cofaces[(n, q)] = [_cogamma_operator(layouts[(n - 1, q)], layout, coface(n, i), coboundary)
                               for i in range(n + 1)]
        if n < N:
            codegens[(n, q)] = [_cogamma_operator(layouts[(n + 1, q)], layout, codegeneracy(n, j), coboundary)
                                for j in range(n + 1)]
        if q >= 1:
            vface[(n, q)] = [_gamma_operator(layout, layouts[(n, q - 1)], coface(q, i), 1, vertical)
                             for i in range(q + 1)]
        if q < Q:
            vdeg[(n, q)] = [_gamma_operator(layout, layouts[(n, q + 1)], codegeneracy(q, j), 1, vertical)
                            for j in range(q + 1)]
    X = CosimplicialSVS(C.prime, N, Q, dims, cofaces, codegens, vface, vdeg)
    leading = {key: identity(X.dim(*key))[:, :C.dim(*key)] for key in X.dims}
    recovered = normalized_bicomplex(X, leading)
    for k, q in C.dims:
        if k > N or q > Q:
            continue
        same = is_zero((recovered.coboundary(k, q) - C.coboundary(k, q)) % C.prime, C.prime) \
            if k < N else True
        if not same or not is_zero((recovered.vertical(k, q) - C.vertical(k, q)) % C.prime, C.prime):
            raise ObjectMismatch(f"Normalization does not recover the cochain bicomplex at ({k},{q})")
    logger.debug("Built cosimplicial instance", {"N": N, "Q": Q, "total_dim": sum(dims.values())})
    return X


# Normalization ------------------------------------------------------------------

def normalized_cochain_basis(X: CosimplicialSVS, n: int, q: int) -> np.ndarray:
    """N^n = ∩_(i<n) ker(s^i: X^n -> X^(n-1)); N^0 = X^0"""
    if n == 0:
        return identity(X.dim(0, q))
    return kernel_of_stack([X.s(n - 1, q, i) for i in range(n)], X.dim(n, q), X.prime)


def normalized_cochain(X: CosimplicialSVS, n: int) -> SimplicialVS:
    """N^n with its internal simplicial structure"""
    if not 0 <= n <= X.N:
        raise IndexOutOfRange(f"Cosimplicial level {n} is outside 0..{X.N}", {"n": n})
    return sub_simplicial(X.level(n), {q: normalized_cochain_basis(X, n, q) for q in range(X.Q + 1)})


def alternating_coface(X: CosimplicialSVS, n: int, q: int) -> np.ndarray:
    """Σ(-1)^i d^i: X^n_q -> X^(n+1)_q"""
    p = X.prime
    total_map = zeros(X.dim(n + 1, q), X.dim(n, q))
    for i in range(n + 2):
        total_map = (total_map + (-1) ** i * X.d(n + 1, q, i)) % p
    return total_map


def cochain_differential(X: CosimplicialSVS, n: int, q: int) -> np.ndarray:
    """The alternating coface sum N^n_q -> N^(n+1)_q in the recorded bases"""
    p = X.prime
    source, target = normalized_cochain_basis(X, n, q), normalized_cochain_basis(X, n + 1, q)
    image = mat_mul(alternating_coface(X, n, q), source, p)
    if target.shape[1] == 0:
        if np.any(image):
            raise NotASubcomplex(f"Alternating coface sum leaves the normalized cochains at ({n},{q})")
        return zeros(0, source.shape[1])
    coords = solve(target, image, p)
    if coords is None:
        raise NotASubcomplex(f"Alternating coface sum leaves the normalized cochains at ({n},{q})")
    return coords


def double_normalized_basis(X: CosimplicialSVS, n: int, q: int) -> np.ndarray:
    maps = [X.s(n - 1, q, i) for i in range(n)] + [X.dv_(n, q, j) for j in range(1, q + 1)]
    return kernel_of_stack(maps, X.dim(n, q), X.prime)


def normalized_bicomplex(X: CosimplicialSVS, bases: Optional[Dict[Bidegree, np.ndarray]] = None) -> CochainBicomplex:
    """B''_(k,q) = N^k ∩ internal Moore part, delta = Σ(-1)^i d^i, vertical d_0"""
    p = X.prime
    expected = {key: double_normalized_basis(X, *key) for key in X.dims}
    if bases is None:
        bases = expected
    else:
        for key, basis in bases.items():
            if basis.shape[1] != expected[key].shape[1] or \
                    (basis.shape[1] and solve(expected[key], basis, p) is None):
                raise NotASubcomplex(f"Supplied basis does not span the normalized part at {key}")

    def coords(matrix: np.ndarray, source: Bidegree, target: Bidegree) -> np.ndarray:
        if bases[source].shape[1] == 0 or bases[target].shape[1] == 0:
            return zeros(bases[target].shape[1], bases[source].shape[1])
        solution = solve(bases[target], mat_mul(matrix, bases[source], p), p)
        if solution is None:
            raise NotASubcomplex(f"Normalized part is not preserved from {source}", {"bidegree": list(source)})
        return solution

    dims = {key: basis.shape[1] for key, basis in bases.items()}
    delta = {(n, q): coords(alternating_coface(X, n, q), (n, q), (n + 1, q)) for n, q in X.dims if n < X.N}
    dv = {(n, q): coords(X.dv_(n, q, 0), (n, q), (n, q - 1)) for n, q in X.dims if q >= 1}
    return CochainBicomplex(p, dims, delta, dv)


def splitting_check(X: CosimplicialSVS) -> Dict[str, Any]:
    """dim X^n_q = Σ_k C(n, k) dim N^k_q: every level splits as normalized plus degenerate parts"""
    rows, passed = [], True
    for n, q in sorted(X.dims):
        expected = sum(comb(n, k) * normalized_cochain_basis(X, k, q).shape[1] for k in range(n + 1))
        ok = expected == X.dim(n, q)
        passed = passed and ok
        if not ok:
            rows.append({"n": n, "q": q, "dim": X.dim(n, q), "split": expected})
    return {"passed": passed, "failures": rows}


# The Tot tower -------------------------------------------------------------------

@dataclass
class TotTower:
    bicomplex: CochainBicomplex
    N: int
    Q: int
    tots: Dict[int, ChainComplex]
    fibres: Dict[int, ChainComplex]
    sequences: Dict[int, ShortExactSequence]

    @property
    def prime(self) -> int:
        return self.bicomplex.prime

    def layout(self, n: int, t: int) -> List[Tuple[int, int, int]]:
        return tot_layout(self.bicomplex, n, t)

    def embed(self, n: int, k: int, t: int, vector: np.ndarray) -> np.ndarray:
        size = sum(block[2] for block in self.layout(n, t))
        result = zeros(size, 1)
        for column, offset, d in self.layout(n, t):
            if column == k:
                result[offset:offset + d] = np.asarray(vector, dtype=np.int64).reshape(d, 1)
        return result

    def block(self, n: int, k: int, t: int, vector: np.ndarray) -> np.ndarray:
        for column, offset, d in self.layout(n, t):
            if column == k:
                return vector[offset:offset + d]
        return zeros(0, vector.shape[1])

    def fibre_basis(self, n: int, p: int):
        return homology_basis(self.fibres[n], p)


def tot_layout(B: CochainBicomplex, n: int, t: int) -> List[Tuple[int, int, int]]:
    """(k, offset, dim) blocks of Tot^n in degree t, k ascending"""
    blocks, offset = [], 0
    for k in range(n + 1):
        d = B.dim(k, t + k)
        if d:
            blocks.append((k, offset, d))
            offset += d
    return blocks


def _tot_complex(B: CochainBicomplex, n: int, Q: int) -> ChainComplex:
    p = B.prime
    degrees = range(-n, Q + 1)

    def layout(t: int) -> List[Tuple[int, int, int]]:
        return tot_layout(B, n, t)

    dims = {t: sum(block[2] for block in layout(t)) for t in degrees}
    diffs = {}
    for t in degrees:
        source, target = layout(t), layout(t - 1)
        where = {k: (offset, d) for k, offset, d in target}
        matrix = zeros(sum(block[2] for block in target), dims[t])
        for k, col, width in source:
            q = t + k
            if k + 1 in where:
                row, height = where[k + 1]
                matrix[row:row + height, col:col + width] += B.coboundary(k, q)
            if k in where:
                row, height = where[k]
                matrix[row:row + height, col:col + width] += (-1) ** k * B.vertical(k, q)
        diffs[t] = matrix % p
    return ChainComplex(p, dims, diffs)


def _fibre_complex(B: CochainBicomplex, n: int, Q: int) -> ChainComplex:
    sign = -1 if n % 2 else 1
    dims = {t: B.dim(n, t + n) for t in range(-n, Q - n + 1)}
    diffs = {t: sign * B.vertical(n, t + n) for t in range(-n + 1, Q - n + 1)}
    return ChainComplex(B.prime, dims, diffs)


def tower_of_cochains(B: CochainBicomplex, N: int, Q: int) -> TotTower:
    p = B.prime
    tots = {n: _tot_complex(B, n, Q) for n in range(N + 1)}
    fibres = {n: _fibre_complex(B, n, Q) for n in range(N + 1)}
    sequences = {}
    for n in range(N + 1):
        middle = tots[n]
        quotient = tots[n - 1] if n >= 1 else ChainComplex(p, {})
        inclusion, projection = {}, {}
        for t in middle.dims:
            a, c = fibres[n].dim(t), quotient.dim(t)
            inclusion[t] = np.concatenate([zeros(c, a), identity(a)], axis=0)
            projection[t] = np.concatenate([identity(c), zeros(c, a)], axis=1)
        sequences[n] = ShortExactSequence(fibres[n], middle, quotient, inclusion, projection)
    return TotTower(B, N, Q, tots, fibres, sequences)


def tot_tower(X: CosimplicialSVS, n_max: Optional[int] = None) -> TotTower:
    """Tot^0 <- Tot^1 <- ... <- Tot^n_max of the double normalization"""
    N = X.N if n_max is None else min(n_max, X.N)
    return tower_of_cochains(normalized_bicomplex(X), N, X.Q)


def couple_of_tot(tower: TotTower) -> ExactCouple:
    p = tower.prime
    d_bases, e_bases = {}, {}
    for n in range(tower.N + 1):
        for t in tower.tots[n].dims:
            d_bases[(n, t)] = homology_basis(tower.tots[n], t)
        for t in tower.fibres[n].dims:
            e_bases[(n, t)] = homology_basis(tower.fibres[n], t)
    alpha, beta, gamma = {}, {}, {}
    for (n, t), basis in d_bases.items():
        ses = tower.sequences[n]
        if (n - 1, t) in d_bases:
            alpha[(n, t)] = induced_map(ses.j(t), basis, d_bases[(n - 1, t)])
        if (n + 1, t - 1) in e_bases and basis.dim and e_bases[(n + 1, t - 1)].dim:
            upper = tower.sequences[n + 1]
            beta[(n, t)] = connecting_map(upper, t, {t - 1: e_bases[(n + 1, t - 1)]}, {t: basis})
    for (n, t), basis in e_bases.items():
        gamma[(n, t)] = induced_map(tower.sequences[n].i(t), basis, d_bases[(n, t)])
    couple = ExactCouple(p, {key: b.dim for key, b in d_bases.items()}, {key: b.dim for key, b in e_bases.items()},
                         alpha, beta, gamma, a=(-1, 0), b=(1, -1), g=(0, 0),
                         tail_in=frozenset(key for key in d_bases if key[0] == tower.N))
    logger.debug("Tot couple", {"N": tower.N, "e_support": couple.e_support()})
    return couple


def tot_couple(X: CosimplicialSVS, n_max: Optional[int] = None) -> ExactCouple:
    couple = couple_of_tot(tot_tower(X, n_max))
    require_exact(couple)
    return couple


def tot_pages(X: CosimplicialSVS, r_max: int = 6) -> List[Page]:
    return pages(tot_couple(X), r_max)


# Checks -------------------------------------------------------------------------

def d1_check(X: CosimplicialSVS, tower: Optional[TotTower] = None,
             page: Optional[Page] = None) -> Dict[str, Any]:
    """The couple's d_1 against the map the alternating coface sum induces on E_1"""
    tower = tower or tot_tower(X)
    page = page or pages(couple_of_tot(tower), 1)[0]
    B = tower.bicomplex
    mismatches = []
    for n in range(tower.N):
        for t in tower.fibres[n].dims:
            source = tower.fibre_basis(n, t)
            if t - 1 not in tower.fibres[n + 1].dims:
                continue
            target = tower.fibre_basis(n + 1, t - 1)
            expected = induced_map(B.coboundary(n, t + n), source, target)
            found = page.d.get((n, t), zeros(target.dim, source.dim))
            if expected.shape != found.shape or np.any((expected - found) % tower.prime):
                mismatches.append({"node": [n, t], "expected": expected, "found": found})
    return {"passed": not mismatches, "mismatches": mismatches}


def _tot_filtration(tower: TotTower) -> FilteredComplex:
    """Tot^N filtered by s = N - k"""
    complex_ = tower.tots[tower.N]
    levels = {}
    for t in complex_.dims:
        entries = []
        for k, _, d in tower.layout(tower.N, t):
            entries.extend([tower.N - k] * d)
        levels[t] = np.asarray(entries, dtype=np.int64)
    return FilteredComplex(complex_, levels)


def cosimplicial_lift_check(X: CosimplicialSVS, reps: Optional[List[Tuple[int, int, np.ndarray]]] = None,
                            tower: Optional[TotTower] = None) -> Dict[str, Any]:
    """A class on E_1 survives to E_2 exactly when its d_1 image vanishes and a chain-level
    lift exists; surviving classes have d_2 computed by lifting compared with the couple's"""
    tower = tower or tot_tower(X)
    prime = tower.prime
    page_list = pages(couple_of_tot(tower), 2)
    first, second = page_list
    fc = _tot_filtration(tower)
    if reps is None:
        reps = []
        for (n, t), d in sorted(first.dims.items()):
            for k in range(d):
                vector = zeros(d, 1)
                vector[k, 0] = 1
                reps.append((n, t, vector))
    classes, passed = [], True
    for n, t, rep in reps:
        rep = np.asarray(rep, dtype=np.int64).reshape(-1, 1) % prime
        basis = tower.fibre_basis(n, t)
        if rep.shape[0] != basis.dim:
            raise ObjectMismatch(f"Representative has {rep.shape[0]} coordinates, E_1 at ({n},{t}) has {basis.dim}")
        chain = tower.embed(tower.N, n, t, basis.lift(rep))
        s = tower.N - n
        d1_value = mat_mul(first.d[(n, t)], rep, prime) if first.d[(n, t)].size else zeros(0, 1)
        entry = {"node": [n, t], "rep": rep.reshape(-1)}
        try:
            lifted = extend_representative(fc, t, s, chain, 2)
        except ClassDoesNotSurvive as e:
            # the obstruction is d_1 of the class and must be nonzero
            entry.update({"survives": False, "dies_at": e.page, "obstruction": d1_value.reshape(-1),
                          "passed": bool(np.any(d1_value)) and e.page == 1})
            passed = passed and entry["passed"]
            classes.append(entry)
            continue
        boundary = mat_mul(fc.complex.differential(t), lifted, prime)
        target = (n + 2, t - 1)
        if n + 2 <= tower.N and second.dim(target):
            component = tower.block(tower.N, n + 2, t - 1, boundary)
            first_value = tower.fibre_basis(*target).coords(component)
            lifted_value = second.coords(target, first_value)
        else:
            lifted_value = zeros(second.dim(target), 1)
        if second.dim((n, t)) and second.d[(n, t)].size:
            couple_value = mat_mul(second.d[(n, t)], second.coords((n, t), rep), prime)
        else:
            couple_value = zeros(second.dim(target), 1)
        agrees = lifted_value.shape == couple_value.shape and not np.any((lifted_value - couple_value) % prime)
        entry.update({"survives": True, "lift": (lifted - chain).reshape(-1) % prime,
                      "d2_by_lifting": lifted_value.reshape(-1), "d2_by_couple": couple_value.reshape(-1),
                      "permanent": _is_permanent(fc, t, s, chain),
                      "passed": agrees and not np.any(d1_value)})
        passed = passed and entry["passed"]
        classes.append(entry)
    return {"passed": passed, "classes": classes}


def _is_permanent(fc: FilteredComplex, t: int, s: int, chain: np.ndarray) -> bool:
    try:
        extend_representative(fc, t, s, chain, s + 1)
    except ClassDoesNotSurvive:
        return False
    return True


def row_bicomplex(tower: TotTower) -> Bicomplex:
    """B'_(a,b) = B''_(N-b, a): the internal direction horizontal, the cosimplicial one vertical"""
    B, N = tower.bicomplex, tower.N
    dims = {(q, N - k): d for (k, q), d in B.dims.items() if k <= N}
    dh = {(q, N - k): B.vertical(k, q) for (k, q) in B.dims if k <= N and q >= 1}
    dv = {(q, N - k): B.coboundary(k, q) for (k, q) in B.dims if k < N}
    return Bicomplex(B.prime, dims, dh, dv)


def tot_vs_staircase(X: CosimplicialSVS, r_max: int = 6) -> Dict[str, Any]:
    """Tot pages against the row-filtration staircase, dims and ranks for every r >= 1"""
    tower = tot_tower(X)
    N = tower.N
    tot = pages(couple_of_tot(tower), r_max)
    staircase = staircase_pages(row_bicomplex(tower), "row", r_max)
    return compare_pages(tot, staircase, translate=lambda key: (N - key[0], key[1] - N + key[0]))


def tot_abutment_check(X: CosimplicialSVS) -> Dict[str, Any]:
    """Σ_n dim E_infinity^(n,p) = dim H_p(Tot^N)"""
    tower = tot_tower(X)
    stable = pages(couple_of_tot(tower), tower.N + 1)[-1]
    answer = homology(tower.tots[tower.N])
    rows, passed = [], True
    for t in sorted(answer):
        graded = sum(stable.dim((n, t)) for n in range(tower.N + 1))
        ok = graded == answer[t].rank
        passed = passed and ok
        rows.append({"p": t, "e_infinity": graded, "tot": answer[t].rank, "passed": ok})
    return {"passed": passed, "rows": rows}


def constant_cosimplicial(prime: int, dim: int, N: int, Q: int) -> CosimplicialSVS:
    return dual_dold_kan(CochainBicomplex(prime, {(0, 0): dim}), N, Q)
