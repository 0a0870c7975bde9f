"""
The spiral spectral sequence of a bisimplicial F_p-vector space.

The tower is built on the double normalization B of X.  Its n-th stage models
the Moore cycles Z_n up to homotopy as the truncated total complex

    Zc_n = Tot(B, columns <= n) shifted down by n,

which sits in 0 -> Zc_(n-1)[-1] -> Zc_n -> C_n -> 0 with C_n the (signed)
column n of B, a model of the Moore chains.  D_(n,p) = H_p(Zc_n) and
E_(n,p) = H_p(C_n); the couple has

    alpha: D_(n-1,p+1) -> D_(n,p)   degree (1, -1), induced by inclusion
    beta:  D_(n,p) -> E_(n,p)       degree (0, 0),  induced by projection
    gamma: E_(n,p) -> D_(n-1,p)     degree (-1, 0), the connecting map

so d^r has degree (-r, r-1).  Above the last column the tower continues with
empty columns on which alpha is an isomorphism, which keeps every derived
couple up to the requested page honest at its upper edge.

The strict Moore cycles and chains, matching objects and the fibrancy report
work in the ambient coordinates of X.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..algebra.bicomplex import Bicomplex, double_homology, total, total_layout
from ..algebra.chain_complex import (ChainComplex, ShortExactSequence, connecting_map, homology,
                                     homology_basis, induced_map)
from ..algebra.exact_couple import ExactCouple, Key, Page, couple_check, pages, require_exact, stabilization_check
from ..algebra.linalg import (Subquotient, column_basis, identity, intersection, kernel_of_stack,
                              mat_mul, nullspace, rank, solve, zeros)
from ..algebra.staircase import extend_representative, filtered_total, staircase_pages
from ..resource.errors import IndexOutOfRange, ObjectMismatch
from ..resource.logger import LoggerFactory
from .simplicial_vs import (BisimplicialVS, SimplicialVS, diag, double_moore, homotopy_groups,
                            restricted_complex, sub_simplicial, vertical_normalized_basis)

logger = LoggerFactory.get_logger("spiral")


# Strict Moore cycles and chains ---------------------------------------------------

def moore_cycle_basis(X: BisimplicialVS, n: int, q: int) -> np.ndarray:
    """Z_n = ∩_(i=0..n) ker d^h_i in X_(n,q); Z_0 = X_0"""
    if n == 0:
        return identity(X.dim(0, q))
    return kernel_of_stack([X.dh(n, q, i) for i in range(n + 1)], X.dim(n, q), X.prime)


def moore_chain_basis(X: BisimplicialVS, n: int, q: int) -> np.ndarray:
    """C_n = ∩_(i=1..n) ker d^h_i in X_(n,q); C_0 = X_0"""
    if n == 0:
        return identity(X.dim(0, q))
    return kernel_of_stack([X.dh(n, q, i) for i in range(1, n + 1)], X.dim(n, q), X.prime)


def _check_level(X: BisimplicialVS, n: int) -> None:
    if not 0 <= n <= X.N:
        raise IndexOutOfRange(f"External level {n} is outside 0..{X.N}", {"n": n})


def moore_cycles(X: BisimplicialVS, n: int) -> SimplicialVS:
    """Z_n with the internal simplicial structure it inherits"""
    _check_level(X, n)
    return sub_simplicial(X.column(n), {q: moore_cycle_basis(X, n, q) for q in range(X.Q + 1)})


def moore_chains(X: BisimplicialVS, n: int) -> SimplicialVS:
    _check_level(X, n)
    return sub_simplicial(X.column(n), {q: moore_chain_basis(X, n, q) for q in range(X.Q + 1)})


def moore_boundary(X: BisimplicialVS, n: int, q: int) -> np.ndarray:
    """d^h_0: C_n -> Z_(n-1) in the recorded bases"""
    source, target = moore_chain_basis(X, n, q), moore_cycle_basis(X, n - 1, q)
    if source.shape[1] == 0 or target.shape[1] == 0:
        return zeros(target.shape[1], source.shape[1])
    coords = solve(target, mat_mul(X.dh(n, q, 0), source, X.prime), X.prime)
    if coords is None:
        raise ObjectMismatch(f"d^h_0 does not land in the Moore cycles at ({n},{q})", {"n": n, "q": q})
    return coords


def _same_span(first: np.ndarray, second: np.ndarray, prime: int) -> bool:
    if first.shape[1] != second.shape[1]:
        return False
    if first.shape[1] == 0:
        return True
    return solve(first, second, prime) is not None


def cycles_are_boundary_kernel(X: BisimplicialVS, n: int) -> bool:
    """The kernel of d^h_0 on C_n is Z_n in every internal degree"""
    p = X.prime
    for q in range(X.Q + 1):
        kernel = mat_mul(moore_chain_basis(X, n, q), nullspace(moore_boundary(X, n, q), p), p)
        if not _same_span(column_basis(kernel, p)[0], moore_cycle_basis(X, n, q), p):
            return False
    return True


# Matching objects --------------------------------------------------------------

@dataclass
class MatchingSpace:
    """Compatible tuples (x_i)_(i in indices) in ⊕ X_(n-1,q) and the map x -> (d_i x)"""
    n: int
    q: int
    indices: Tuple[int, ...]
    basis: np.ndarray
    structure: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def image_rank(self, prime: int) -> int:
        return rank(self.structure, prime) if self.structure.size else 0

    def is_surjective(self, prime: int) -> bool:
        return self.image_rank(prime) == self.dim

    def kernel(self, prime: int) -> np.ndarray:
        return nullspace(self.structure, prime) if self.structure.shape[0] else identity(self.structure.shape[1])

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "q": self.q, "indices": list(self.indices), "dim": self.dim}


def _matching_space(X: BisimplicialVS, n: int, q: int, indices: Tuple[int, ...]) -> MatchingSpace:
    p = X.prime
    block = X.dim(n - 1, q)
    position = {index: k for k, index in enumerate(indices)}
    ambient = block * len(indices)
    relations = []
    if n >= 2:
        target = X.dim(n - 2, q)
        for j in indices:
            for i in indices:
                if i >= j:
                    continue
                # d_i x_j - d_(j-1) x_i
                relation = zeros(target, ambient)
                relation[:, position[j] * block:(position[j] + 1) * block] += X.dh(n - 1, q, i)
                relation[:, position[i] * block:(position[i] + 1) * block] -= X.dh(n - 1, q, j - 1)
                relations.append(relation % p)
    basis = kernel_of_stack(relations, ambient, p)
    faces = [X.dh(n, q, i) for i in indices]
    structure = np.concatenate(faces, axis=0) if faces else zeros(0, X.dim(n, q))
    return MatchingSpace(n, q, indices, basis, structure)


def matching(X: BisimplicialVS, n: int) -> Dict[int, MatchingSpace]:
    """M_n over the full boundary: indices 0..n"""
    if n < 1:
        raise IndexOutOfRange("Matching objects start at n = 1", {"n": n})
    _check_level(X, n)
    return {q: _matching_space(X, n, q, tuple(range(n + 1))) for q in range(X.Q + 1)}


def modified_matching(X: BisimplicialVS, n: int) -> Dict[int, MatchingSpace]:
    """The horn version over indices 1..n; its kernel is C_n"""
    if n < 1:
        raise IndexOutOfRange("Matching objects start at n = 1", {"n": n})
    _check_level(X, n)
    return {q: _matching_space(X, n, q, tuple(range(1, n + 1))) for q in range(X.Q + 1)}


def _normalized_matching_surjective(X: BisimplicialVS, space: MatchingSpace) -> bool:
    """N^v_q X_n -> M_n(N^v_q X) is onto"""
    p = X.prime
    n, q = space.n, space.q
    source = vertical_normalized_basis(X, n, q)
    inner = vertical_normalized_basis(X, n - 1, q)
    blocks = np.kron(identity(len(space.indices)), inner)
    target = intersection(space.basis, blocks, p)
    image = mat_mul(space.structure, source, p)
    return (rank(image, p) if image.size else 0) == target.shape[1]


def _strict_fibration_at(X: BisimplicialVS, n: int, q: int) -> bool:
    """d^h_0: N^v_q C_n -> N^v_q Z_(n-1) is onto"""
    p = X.prime
    source = intersection(moore_chain_basis(X, n, q), vertical_normalized_basis(X, n, q), p)
    target = intersection(moore_cycle_basis(X, n - 1, q), vertical_normalized_basis(X, n - 1, q), p)
    image = mat_mul(X.dh(n, q, 0), source, p)
    return (rank(image, p) if image.size else 0) == target.shape[1]


@dataclass
class FibrancyReport:
    reedy: Dict[int, bool]
    strict: Dict[int, bool]
    matching_kernel: Dict[int, bool]
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def reedy_fibrant(self) -> bool:
        return all(self.reedy.values())

    @property
    def strict_fibrations(self) -> bool:
        return all(self.strict.values())

    @property
    def passed(self) -> bool:
        return self.reedy_fibrant and self.strict_fibrations and all(self.matching_kernel.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "reedy_fibrant": self.reedy_fibrant,
            "strict_fibrations": self.strict_fibrations,
            "reedy": {str(n): ok for n, ok in sorted(self.reedy.items())},
            "strict": {str(n): ok for n, ok in sorted(self.strict.items())},
            "matching_kernel": {str(n): ok for n, ok in sorted(self.matching_kernel.items())},
            "failures": self.failures,
        }


def fibrancy_check(X: BisimplicialVS) -> FibrancyReport:
    """Reedy condition (normalized matching maps onto in positive internal degrees), strict
    fibrations C_n -> Z_(n-1), and ker(X_n -> modified matching) = C_n"""
    p = X.prime
    report = FibrancyReport({}, {}, {})
    for n in range(1, X.N + 1):
        full = matching(X, n)
        horn = modified_matching(X, n)
        reedy_ok, strict_ok, kernel_ok = True, True, True
        for q in range(X.Q + 1):
            if not _same_span(column_basis(horn[q].kernel(p), p)[0], moore_chain_basis(X, n, q), p):
                kernel_ok = False
                report.failures.append({"check": "matching_kernel", "n": n, "q": q})
            if q == 0:
                continue
            if not _normalized_matching_surjective(X, full[q]):
                reedy_ok = False
                report.failures.append({"check": "reedy", "n": n, "q": q})
            if not _strict_fibration_at(X, n, q):
                strict_ok = False
                report.failures.append({"check": "strict", "n": n, "q": q})
        report.reedy[n] = reedy_ok
        report.strict[n] = strict_ok
        report.matching_kernel[n] = kernel_ok
    logger.debug("Fibrancy report", {"passed": report.passed, "failures": report.failures[:5]})
    return report


# The tower and its couple -----------------------------------------------------

@dataclass
class SpiralTower:
    """Stages 0..height of the Moore tower of B; columns above `top` are empty"""
    bicomplex: Bicomplex
    top: int
    height: int
    cycles: Dict[int, ChainComplex]
    chains: Dict[int, ChainComplex]
    sequences: Dict[int, ShortExactSequence]

    @property
    def prime(self) -> int:
        return self.bicomplex.prime

    def degrees(self, n: int) -> range:
        """Internal degrees p carried by stage n"""
        B = self.bicomplex
        return range(-n, B.max_n + B.max_q - n + 1)

    def e_basis(self, n: int, p: int) -> Subquotient:
        if n < 0:
            raise IndexOutOfRange(f"Stage {n} is below the tower", {"n": n})
        return homology_basis(self.chains.get(n) or ChainComplex(self.prime, {}), p)

    def d_basis(self, n: int, p: int) -> Subquotient:
        return homology_basis(self.cycles[n], p)

    def embed(self, n: int, p: int, vector: np.ndarray) -> np.ndarray:
        """A chain of column n in internal degree p as a vector of Tot(B) in degree n + p"""
        B = self.bicomplex
        t = n + p
        layout = total_layout(B, t)
        size = sum(block[3] for block in layout)
        result = zeros(size, 1)
        for column, _, offset, d in layout:
            if column == n:
                result[offset:offset + d] = np.asarray(vector, dtype=np.int64).reshape(d, 1)
        return result

    def column_component(self, t: int, n: int, vector: np.ndarray) -> np.ndarray:
        """The column-n block of a vector of Tot(B) in degree t"""
        for column, _, offset, d in total_layout(self.bicomplex, t):
            if column == n:
                return vector[offset:offset + d]
        return zeros(0, vector.shape[1])


def _stage_sequence(B: Bicomplex, n: int) -> ShortExactSequence:
    p = B.prime
    middle = total(B, max_column=n).shifted(-n)
    sub = total(B, max_column=n - 1).shifted(-n)
    quotient = B.column(n) if n <= B.max_n else ChainComplex(p, {})
    inclusion, projection = {}, {}
    for degree in middle.dims:
        a, c = sub.dim(degree), quotient.dim(degree)
        inclusion[degree] = np.concatenate([identity(a), zeros(c, a)], axis=0)
        projection[degree] = np.concatenate([zeros(c, a), identity(c)], axis=1)
    return ShortExactSequence(sub, middle, quotient, inclusion, projection)


def tower_of_bicomplex(B: Bicomplex, r_max: int = 6) -> SpiralTower:
    top = B.max_n
    height = top + r_max + 1
    sequences = {n: _stage_sequence(B, n) for n in range(height + 1)}
    cycles = {n: ses.middle for n, ses in sequences.items()}
    chains = {n: sequences[n].quotient for n in range(top + 1)}
    return SpiralTower(B, top, height, cycles, chains, sequences)


def spiral_tower(X: BisimplicialVS, r_max: int = 6) -> SpiralTower:
    """Moore tower of X, padded so pages up to r_max are exact at the top"""
    return tower_of_bicomplex(double_moore(X), r_max)


def couple_of_tower(tower: SpiralTower) -> ExactCouple:
    p = tower.prime
    B = tower.bicomplex
    d_bases: Dict[Key, Subquotient] = {}
    for n in range(tower.height + 1):
        for degree in tower.degrees(n):
            d_bases[(n, degree)] = tower.d_basis(n, degree)
    e_bases: Dict[Key, Subquotient] = {}
    for n in range(tower.top + 1):
        for degree in range(B.max_q + 1):
            e_bases[(n, degree)] = tower.e_basis(n, degree)

    def d_basis(key: Key) -> Optional[Subquotient]:
        return d_bases.get(key)

    alpha, beta, gamma = {}, {}, {}
    for n in range(1, tower.height + 1):
        ses = tower.sequences[n]
        for degree in tower.degrees(n):
            source, target = d_basis((n - 1, degree + 1)), d_basis((n, degree))
            if source is not None and target is not None:
                alpha[(n - 1, degree + 1)] = induced_map(ses.i(degree), source, target)
    for (n, degree), basis in e_bases.items():
        ses = tower.sequences[n]
        source = d_basis((n, degree))
        if source is not None:
            beta[(n, degree)] = induced_map(ses.j(degree), source, basis)
        target = d_basis((n - 1, degree))
        if target is not None and basis.dim and target.dim:
            gamma[(n, degree)] = connecting_map(ses, degree, {degree - 1: target}, {degree: basis})
    couple = ExactCouple(p, {key: b.dim for key, b in d_bases.items()}, {key: b.dim for key, b in e_bases.items()},
                         alpha, beta, gamma, a=(1, -1), b=(0, 0), g=(-1, 0),
                         tail_out=frozenset((tower.height, degree) for degree in tower.degrees(tower.height)))
    logger.debug("Spiral couple", {"top": tower.top, "height": tower.height,
                                   "e_support": couple.e_support()})
    return couple


def spiral_couple(X: BisimplicialVS, r_max: int = 6) -> ExactCouple:
    """Exact couple of the Moore tower; raises ExactnessFailure if the couple is not exact"""
    couple = couple_of_tower(spiral_tower(X, r_max))
    require_exact(couple)
    return couple


def spiral_pages(X: BisimplicialVS, r_max: int = 6) -> List[Page]:
    return pages(spiral_couple(X, r_max), r_max)


def spiral_stable_page(X: BisimplicialVS) -> Page:
    """E^infinity: d^r leaves the first quadrant once r exceeds N"""
    r = X.N + 1
    return spiral_pages(X, r)[-1]


def e2_matches_double_homology(X: BisimplicialVS, page_list: Optional[List[Page]] = None) -> Dict[str, Any]:
    """E^2 dims against H^h H^v of the double normalization, computed independently"""
    page_list = page_list or spiral_pages(X, 2)
    second = page_list[1]
    expected = double_homology(double_moore(X))
    found = {key: d for key, d in second.dims.items() if d}
    mismatches = [{"node": list(key), "expected": expected.get(key, 0), "found": found.get(key, 0)}
                  for key in sorted(set(expected) | set(found)) if expected.get(key, 0) != found.get(key, 0)]
    return {"passed": not mismatches, "mismatches": mismatches}


def compare_pages(first: List[Page], second: List[Page], translate=None, start: int = 1) -> Dict[str, Any]:
    """Dimensions and differential ranks page by page, optionally re-keying the second list"""
    translate = translate or (lambda key: key)
    mismatches = []
    for left, right in zip(first, second):
        if left.r < start:
            continue
        right_dims = {translate(key): right.dim(key) for key in right.support()}
        right_ranks = {translate(key): right.rank_out(key) for key in right.support()}
        for key in sorted(set(left.support()) | set(right_dims)):
            if left.dim(key) != right_dims.get(key, 0) or left.rank_out(key) != right_ranks.get(key, 0):
                mismatches.append({"r": left.r, "node": list(key),
                                   "dims": [left.dim(key), right_dims.get(key, 0)],
                                   "ranks": [left.rank_out(key), right_ranks.get(key, 0)]})
    return {"passed": not mismatches, "mismatches": mismatches}


def first_quadrant_stabilization(page_list: List[Page]) -> Dict[str, Any]:
    """E^r_(n,p) is fixed once r > max(n, p + 1): d^r out lands in a negative column and
    d^r in starts from a negative row. For p <= n that is r >= n + 2."""
    failures = []
    for n, p in page_list[0].support():
        start = max(n, p + 1) + 1
        settled = [(page.r, page.dim((n, p))) for page in page_list if page.r >= start]
        if len({dim for _, dim in settled}) > 1:
            failures.append({"node": [n, p], "from": start, "dims": [list(entry) for entry in settled]})
    local = stabilization_check(page_list)
    return {"passed": not failures and local["passed"], "failures": failures, "local": local}


def spiral_vs_staircase(X: BisimplicialVS, r_max: int = 6) -> Dict[str, Any]:
    """Spiral pages against the column-filtration staircase of the double normalization"""
    spiral = spiral_pages(X, r_max)
    staircase = staircase_pages(double_moore(X), "column", r_max)
    result = compare_pages(spiral, staircase)
    result["first_page_agrees"] = not any(m["r"] == 1 for m in result["mismatches"])
    result["stabilization"] = first_quadrant_stabilization(spiral)
    return result


# Lifting differentials ------------------------------------------------------

@dataclass
class LiftingResult:
    source: Key
    target: Key
    r: int
    first_page_value: np.ndarray
    page_value: np.ndarray
    couple_value: np.ndarray

    @property
    def agrees(self) -> bool:
        return self.page_value.shape == self.couple_value.shape and not np.any(self.page_value != self.couple_value)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.page_value)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "r": self.r,
            "first_page_value": self.first_page_value.reshape(-1),
            "page_value": self.page_value.reshape(-1),
            "couple_value": self.couple_value.reshape(-1),
            "agrees": self.agrees,
        }


def lifting_differential(X: BisimplicialVS, n: int, p: int, r: int, rep: np.ndarray,
                         tower: Optional[SpiralTower] = None,
                         page_list: Optional[List[Page]] = None) -> LiftingResult:
    """d^r of the class with first-page coordinates `rep` at (n, p), by iterated lifting.

    The chain is corrected one column at a time until its boundary has left r
    columns behind; the surviving column is the value.  Raises
    ClassDoesNotSurvive with the page of death when a correction does not
    exist.
    """
    if r < 1:
        raise IndexOutOfRange("Differentials start at r = 1", {"r": r})
    tower = tower or spiral_tower(X, r)
    prime = tower.prime
    source_basis = tower.e_basis(n, p)
    rep = np.asarray(rep, dtype=np.int64).reshape(-1, 1) % prime
    if rep.shape[0] != source_basis.dim:
        raise ObjectMismatch(f"Representative has {rep.shape[0]} coordinates, E^1 at ({n},{p}) has {source_basis.dim}")
    chain = tower.embed(n, p, source_basis.lift(rep))
    fc = filtered_total(tower.bicomplex, "column")
    extended = extend_representative(fc, n + p, n, chain, r)
    boundary = mat_mul(fc.complex.differential(n + p), extended, prime)

    target = (n - r, p + r - 1)
    if n - r >= 0:
        component = tower.column_component(n + p - 1, n - r, boundary)
        first_page_value = tower.e_basis(*target).coords(component)
    else:
        first_page_value = zeros(0, 1)

    page_list = page_list or pages(couple_of_tower(tower), r)
    page = page_list[r - 1]
    if page.dim(target):
        page_value = page.coords(target, first_page_value)
    else:
        page_value = zeros(0, 1)
    if page.dim((n, p)):
        couple_value = mat_mul(page.d[(n, p)], page.coords((n, p), rep), prime) \
            if page.d[(n, p)].size else zeros(page.dim(target), 1)
    else:
        couple_value = zeros(page.dim(target), 1)
    result = LiftingResult((n, p), target, r, first_page_value, page_value % prime, couple_value % prime)
    logger.debug("Lifting differential", result.to_dict())
    return result


# Oracles -------------------------------------------------------------------------

def _support(B: Bicomplex) -> Dict[Key, int]:
    return {key: d for key, d in B.dims.items() if d}


def abutment_check(X: BisimplicialVS, page: Optional[Page] = None,
                   extended: Optional[BisimplicialVS] = None) -> Dict[str, Any]:
    """sum over n + p = t of dim E^infinity against H_t(Tot B) and pi_t(diag) for every t.

    pi_t of a diagonal truncated at level L is exact only for t < L, so the
    diagonal is read off `extended` when given: the same bicomplex realized at
    higher levels. `diagonal_covers_support` says whether every degree where
    E^infinity or H(Tot B) is nonzero got a diagonal comparison.
    """
    page = page or spiral_stable_page(X)
    B = double_moore(X)
    source = extended or X
    if extended is not None and _support(double_moore(extended)) != _support(B):
        raise ObjectMismatch("The extended realization normalizes to a different bicomplex",
                             {"N": extended.N, "Q": extended.Q})
    total_homology = {t: group.rank for t, group in homology(total(B)).items()}
    diagonal = homotopy_groups(diag(source))
    reliable = min(source.N, source.Q)
    rows, passed, covered = [], True, True
    for t in range(max(X.N + X.Q, reliable - 1) + 1):
        graded = sum(page.dim((n, t - n)) for n in range(t + 1))
        row = {"t": t, "e_infinity": graded, "total": total_homology.get(t, 0),
               "diagonal": diagonal.get(t, 0) if t < reliable else None}
        ok = graded == row["total"] and (row["diagonal"] is None or graded == row["diagonal"])
        if row["diagonal"] is None and (graded or row["total"]):
            covered = False
        row["passed"] = ok
        passed = passed and ok
        rows.append(row)
    return {"passed": passed, "diagonal_covers_support": covered, "diagonal_top": reliable - 1, "rows": rows}


def _column_complex(X: BisimplicialVS, n: int, bases: Dict[int, np.ndarray]) -> ChainComplex:
    return restricted_complex(X.prime, bases, lambda q: X.dv(n, q, 0))


def moore_chain_homotopy_check(X: BisimplicialVS) -> Dict[str, Any]:
    """pi_p C_n X -> C_n pi_p X is an isomorphism, with pi_p computed on vertical normalizations.

    The right side is ∩_(i>=1) ker of the maps d^h_i induce on H_p of column n;
    the left side maps into it injectively and onto it.
    """
    p = X.prime
    normal = {(n, q): vertical_normalized_basis(X, n, q) for n in range(X.N + 1) for q in range(X.Q + 1)}
    columns = {n: _column_complex(X, n, {q: normal[(n, q)] for q in range(X.Q + 1)}) for n in range(X.N + 1)}
    B = double_moore(X)
    rows, passed = [], True
    for n in range(X.N + 1):
        # d^h_i in vertical-normalized coordinates, i >= 1
        faces = {q: [solve_in(normal[(n - 1, q)], mat_mul(X.dh(n, q, i), normal[(n, q)], p), p)
                     for i in range(1, n + 1)] for q in range(X.Q + 1)}
        w_coords = {q: kernel_of_stack(faces[q], normal[(n, q)].shape[1], p) for q in range(X.Q + 1)}
        w_complex = restricted_complex(p, {q: mat_mul(normal[(n, q)], w_coords[q], p) for q in range(X.Q + 1)},
                                       lambda q: X.dv(n, q, 0))
        for degree in range(X.Q + 1):
            w_h = homology_basis(w_complex, degree)
            v_h = homology_basis(columns[n], degree)
            inclusion = induced_map(w_coords[degree], w_h, v_h)
            induced_faces = []
            if n >= 1:
                lower = homology_basis(columns[n - 1], degree)
                induced_faces = [induced_map(face, v_h, lower) for face in faces[degree]]
            target_dim = kernel_of_stack(induced_faces, v_h.dim, p).shape[1]
            injective = rank(inclusion, p) == w_h.dim
            lands = all(not np.any(mat_mul(face, inclusion, p)) for face in induced_faces)
            onto = rank(inclusion, p) == target_dim
            e1 = homology_basis(B.column(n), degree).dim
            ok = injective and lands and onto and e1 == w_h.dim
            passed = passed and ok
            rows.append({"n": n, "p": degree, "lhs": w_h.dim, "rhs": target_dim, "e1": e1,
                         "injective": injective, "image_matches": lands and onto, "passed": ok})
    return {"passed": passed, "rows": rows}


def solve_in(basis: np.ndarray, vectors: np.ndarray, prime: int) -> np.ndarray:
    """Coordinates of vectors known to lie in span(basis)"""
    if basis.shape[1] == 0 or vectors.shape[1] == 0:
        return zeros(basis.shape[1], vectors.shape[1])
    coords = solve(basis, vectors, prime)
    if coords is None:
        raise ObjectMismatch("Vectors leave the expected subspace")
    return coords


def strict_cycles_agree(X: BisimplicialVS, tower: Optional[SpiralTower] = None,
                        fibrancy: Optional[FibrancyReport] = None) -> Dict[str, Any]:
    """H_p(N^v Z_n) against D_(n,p) for p >= 0, at every n whose strict fibrations all hold"""
    p = X.prime
    fibrancy = fibrancy or fibrancy_check(X)
    tower = tower or spiral_tower(X, max(X.N, 1))
    rows, passed = [], True
    for n in range(X.N + 1):
        if not all(fibrancy.strict.get(k, True) for k in range(1, n + 1)):
            break
        bases = {q: intersection(moore_cycle_basis(X, n, q), vertical_normalized_basis(X, n, q), p)
                 for q in range(X.Q + 1)}
        strict = homology(_column_complex(X, n, bases))
        for degree in range(X.Q + 1):
            found = strict[degree].rank if degree in strict else 0
            expected = tower.d_basis(n, degree).dim
            ok = found == expected
            passed = passed and ok
            rows.append({"n": n, "p": degree, "strict": found, "tower": expected, "passed": ok})
    return {"passed": passed, "rows": rows, "levels": len({row["n"] for row in rows})}


def spiral_report(X: BisimplicialVS, r_max: int = 6) -> Dict[str, Any]:
    """Everything the spiral command emits for one instance"""
    couple = couple_of_tower(spiral_tower(X, r_max))
    exactness = couple_check(couple)
    page_list = pages(couple, r_max) if exactness.passed else []
    return {
        "exactness": exactness.to_dict(),
        "pages": [page.to_dict() for page in page_list],
        "fibrancy": fibrancy_check(X).to_dict(),
    }
