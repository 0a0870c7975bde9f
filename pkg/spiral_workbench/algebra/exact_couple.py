"""
Bigraded exact couples over F_p and their derived couples.

A couple stores dimensions of D and E per bidegree, the matrices of alpha,
beta and gamma keyed by their source bidegree, and the three degree vectors.
Keys missing from a dimension table are zero spaces.  Two kinds of boundary
nodes describe truncated towers:

  - ``tail_out``: D-nodes whose outgoing alpha is not stored and is injective
  - ``tail_in``:  D-nodes whose incoming alpha is not stored and is surjective

Every E-basis vector of a derived couple is tracked in the coordinates of the
first page, so classes can be compared across pages and against other
constructions.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from ..resource.artifact_io import bidegree_key, tsv_table
from ..resource.errors import ExactnessFailure
from ..resource.logger import LoggerFactory
from .linalg import (Subquotient, column_basis, identity, is_zero, mat_mul, nullspace, rank,
                     solve_or_raise, zeros)

Key = Tuple[int, int]

logger = LoggerFactory.get_logger("exact_couple")


def _shift(key: Key, by: Key, times: int = 1) -> Key:
    return key[0] + times * by[0], key[1] + times * by[1]


@dataclass
class ExactCouple:
    prime: int
    d_dims: Dict[Key, int]
    e_dims: Dict[Key, int]
    alpha: Dict[Key, np.ndarray]
    beta: Dict[Key, np.ndarray]
    gamma: Dict[Key, np.ndarray]
    a: Key
    b: Key
    g: Key
    tail_in: FrozenSet[Key] = frozenset()
    tail_out: FrozenSet[Key] = frozenset()
    r: int = 1
    e_reps: Dict[Key, np.ndarray] = field(default_factory=dict)
    e_kills: Dict[Key, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.tail_in = frozenset(self.tail_in)
        self.tail_out = frozenset(self.tail_out)
        for key, d in self.e_dims.items():
            self.e_reps.setdefault(key, identity(d))
            self.e_kills.setdefault(key, zeros(d, 0))

    def dd(self, key: Key) -> int:
        return self.d_dims.get(key, 0)

    def de(self, key: Key) -> int:
        return self.e_dims.get(key, 0)

    def alpha_at(self, key: Key) -> np.ndarray:
        target = _shift(key, self.a)
        if key in self.alpha and key not in self.tail_out:
            return self.alpha[key].reshape(self.dd(target), self.dd(key))
        return zeros(self.dd(target), self.dd(key))

    def beta_at(self, key: Key) -> np.ndarray:
        target = _shift(key, self.b)
        if key in self.beta:
            return self.beta[key].reshape(self.de(target), self.dd(key))
        return zeros(self.de(target), self.dd(key))

    def gamma_at(self, key: Key) -> np.ndarray:
        target = _shift(key, self.g)
        if key in self.gamma:
            return self.gamma[key].reshape(self.dd(target), self.de(key))
        return zeros(self.dd(target), self.de(key))

    @property
    def d_degree(self) -> Key:
        return _shift(self.b, self.g)

    def differential(self, key: Key) -> np.ndarray:
        """d = beta o gamma out of E at `key`"""
        middle = _shift(key, self.g)
        return mat_mul(self.beta_at(middle), self.gamma_at(key), self.prime)

    def e_support(self) -> List[Key]:
        return sorted(key for key, d in self.e_dims.items() if d)


@dataclass
class CoupleReport:
    passed: bool
    failures: List[Dict[str, Any]]

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "failures": self.failures}


def _defect(first: np.ndarray, second: np.ndarray, prime: int) -> int:
    """dim(U + V) - dim(U ∩ V) for column spans in a common space"""
    both = np.concatenate([first, second], axis=1)
    joint = rank(both, prime) if both.size else 0
    r1 = rank(first, prime) if first.size else 0
    r2 = rank(second, prime) if second.size else 0
    return 2 * joint - r1 - r2


def _kernel(matrix: np.ndarray, prime: int) -> np.ndarray:
    if matrix.shape[0] == 0:
        return identity(matrix.shape[1])
    return nullspace(matrix, prime)


def couple_check(c: ExactCouple) -> CoupleReport:
    """Exactness at D (ker beta = im alpha), at E (ker gamma = im beta) and at D (ker alpha = im gamma)"""
    p = c.prime
    failures = []
    for key in sorted(set(c.d_dims) | set(c.e_dims)):
        if c.dd(key):
            if key in c.tail_in:
                image_alpha = identity(c.dd(key))
            else:
                image_alpha = c.alpha_at(_shift(key, c.a, -1))
            defect = _defect(_kernel(c.beta_at(key), p), image_alpha, p)
            if defect:
                failures.append({"node": list(key), "kind": "D:ker_beta=im_alpha", "defect": defect})
            if key in c.tail_out:
                kernel_alpha = zeros(c.dd(key), 0)
            else:
                kernel_alpha = _kernel(c.alpha_at(key), p)
            defect = _defect(kernel_alpha, c.gamma_at(_shift(key, c.g, -1)), p)
            if defect:
                failures.append({"node": list(key), "kind": "D:ker_alpha=im_gamma", "defect": defect})
        if c.de(key):
            defect = _defect(_kernel(c.gamma_at(key), p), c.beta_at(_shift(key, c.b, -1)), p)
            if defect:
                failures.append({"node": list(key), "kind": "E:ker_gamma=im_beta", "defect": defect})
    if failures:
        logger.debug("Couple is not exact", {"r": c.r, "failures": failures[:5]})
    return CoupleReport(not failures, failures)


def require_exact(c: ExactCouple) -> None:
    report = couple_check(c)
    if not report.passed:
        first = report.failures[0]
        raise ExactnessFailure(tuple(first["node"]), first["kind"], first["defect"])


def derived_couple(c: ExactCouple) -> ExactCouple:
    """D' = im alpha, E' = ker d / im d; alpha' restricts, beta' = beta o alpha^-1, gamma' = gamma on representatives"""
    p = c.prime
    # D' bases, with the standard vector preimages through alpha
    d_basis: Dict[Key, np.ndarray] = {}
    d_preimage_cols: Dict[Key, List[int]] = {}
    for key in sorted(c.d_dims):
        if key in c.tail_in:
            d_basis[key] = identity(c.dd(key))
            continue
        source = _shift(key, c.a, -1)
        basis, pivots = column_basis(c.alpha_at(source), p)
        d_basis[key] = basis
        d_preimage_cols[key] = pivots

    # E' = ker d / im d in E coordinates
    e_quotients: Dict[Key, Subquotient] = {}
    for key in sorted(c.e_dims):
        incoming = _shift(key, c.d_degree, -1)
        numerator = _kernel(c.differential(key), p)
        denominator = c.differential(incoming) if c.de(incoming) else zeros(c.de(key), 0)
        e_quotients[key] = Subquotient.of(numerator, denominator, p)

    d_dims = {key: basis.shape[1] for key, basis in d_basis.items()}
    e_dims = {key: quotient.dim for key, quotient in e_quotients.items()}

    alpha = {}
    for key, basis in d_basis.items():
        target = _shift(key, c.a)
        if key in c.tail_out or target not in d_basis or basis.shape[1] == 0:
            continue
        image = mat_mul(c.alpha_at(key), basis, p)
        alpha[key] = solve_or_raise(d_basis[target], image, p, f"restricting alpha at {key}")

    beta = {}
    new_b = _shift(c.b, c.a, -1)
    for key, basis in d_basis.items():
        target = _shift(key, new_b)
        if key in c.tail_in or target not in e_quotients or basis.shape[1] == 0:
            continue
        source = _shift(key, c.a, -1)
        images = c.beta_at(source)[:, d_preimage_cols[key]]
        beta[key] = e_quotients[target].coords(images)

    gamma = {}
    for key, quotient in e_quotients.items():
        target = _shift(key, c.g)
        if target not in d_basis or quotient.dim == 0:
            continue
        images = mat_mul(c.gamma_at(key), quotient.reps, p)
        gamma[key] = solve_or_raise(d_basis[target], images, p, f"restricting gamma at {key}")

    e_reps, e_kills = {}, {}
    for key, quotient in e_quotients.items():
        old_reps, old_kills = c.e_reps[key], c.e_kills[key]
        e_reps[key] = mat_mul(old_reps, quotient.reps, p)
        moved = mat_mul(old_reps, quotient.kill, p)
        e_kills[key] = column_basis(np.concatenate([old_kills, moved], axis=1), p)[0]

    return ExactCouple(p, d_dims, e_dims, alpha, beta, gamma, c.a, new_b, c.g,
                       c.tail_in, c.tail_out, c.r + 1, e_reps, e_kills)


@dataclass
class Page:
    """E^r with its differential.

    `reps` and `kills` describe each E^r_key as a subquotient of a reference
    space: first-page coordinates for exact couples, chain coordinates for the
    staircase.
    """
    r: int
    prime: int
    dims: Dict[Key, int]
    d: Dict[Key, np.ndarray]
    degree: Key
    reps: Dict[Key, np.ndarray]
    kills: Dict[Key, np.ndarray]

    def dim(self, key: Key) -> int:
        return self.dims.get(key, 0)

    def target(self, key: Key) -> Key:
        return _shift(key, self.degree)

    def rank_out(self, key: Key) -> int:
        matrix = self.d.get(key)
        if matrix is None or matrix.size == 0:
            return 0
        return rank(matrix, self.prime)

    def support(self) -> List[Key]:
        return sorted(key for key, d in self.dims.items() if d)

    def coords(self, key: Key, vectors: np.ndarray) -> np.ndarray:
        """Coordinates on this page of first-page vectors that survive to it"""
        return Subquotient(self.prime, self.kills[key], self.reps[key]).coords(vectors)

    def is_zero_differential(self) -> bool:
        return all(is_zero(m, self.prime) for m in self.d.values())

    def rows(self) -> List[Tuple[int, int, int, int, int]]:
        return [(self.r, n, p, self.dim((n, p)), self.rank_out((n, p))) for n, p in self.support()]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "degree": list(self.degree),
            "dims": {bidegree_key(*key): self.dims[key] for key in self.support()},
            "d": {bidegree_key(*key): self.d[key] for key in self.support()
                  if key in self.d and self.d[key].size},
        }


def page_of(c: ExactCouple) -> Page:
    d = {key: c.differential(key) for key in c.e_dims}
    return Page(c.r, c.prime, dict(c.e_dims), d, c.d_degree, dict(c.e_reps), dict(c.e_kills))


def pages(c: ExactCouple, r_max: int) -> List[Page]:
    """Pages E^1 .. E^r_max (indices relative to the couple's own r)"""
    result = []
    current = c
    while True:
        page = page_of(current)
        result.append(page)
        logger.debug("Computed page", {"r": page.r, "support": len(page.support())})
        if page.r >= r_max:
            return result
        current = derived_couple(current)


def stabilization_check(page_list: List[Page]) -> Dict[str, Any]:
    """E^(r+1) = E^r at every node that d^r can neither leave nor enter within the E^1 support"""
    support = set(page_list[0].support())
    failures = []
    for page, following in zip(page_list, page_list[1:]):
        for key in sorted(support):
            if page.target(key) in support or _shift(key, page.degree, -1) in support:
                continue
            if following.dim(key) != page.dim(key):
                failures.append({"node": list(key), "r": page.r, "before": page.dim(key),
                                 "after": following.dim(key)})
    return {"passed": not failures, "failures": failures}


def stable_page(c: ExactCouple) -> Page:
    """E^infinity of a couple with finite support: the page after which no differential can reach"""
    keys = c.e_support() or [(0, 0)]
    span = max(abs(x[0] - y[0]) + abs(x[1] - y[1]) for x in keys for y in keys)
    return pages(c, c.r + span + 2)[-1]


def pages_table(page_list: List[Page]) -> str:
    rows = [row for page in page_list for row in page.rows()]
    return tsv_table(("r", "n", "p", "dim", "rank_d_out"), rows)


def check_page(page: Page, following: Optional[Page] = None) -> List[Dict[str, Any]]:
    """d o d = 0 on the page and dim E^(r+1) = dim ker d - rank of incoming d"""
    problems = []
    p = page.prime
    for key in page.support():
        out = page.d.get(key)
        after = page.d.get(page.target(key))
        if out is not None and after is not None and out.size and after.size:
            if not is_zero(mat_mul(after, out, p), p):
                problems.append({"page": page.r, "node": list(key), "problem": "d o d != 0"})
        if following is not None:
            incoming = _shift(key, page.degree, -1)
            expected = page.dim(key) - page.rank_out(key) - page.rank_out(incoming)
            if following.dim(key) != expected:
                problems.append({"page": page.r, "node": list(key), "problem": "dimension bookkeeping",
                                 "expected": expected, "found": following.dim(key)})
    return problems
