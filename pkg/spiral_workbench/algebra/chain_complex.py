"""
Chain complexes over F_p or the integers, homology with recorded bases,
induced maps and connecting homomorphisms.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..resource.errors import BoundaryNotZero, NonExactSequence, UnsupportedRing
from .linalg import (Subquotient, identity, inverse, is_zero, mat_mul, nullspace, random_invertible, rank,
                     solve_or_raise, zeros)
from .snf import invariant_factors


def _is_prime_ring(ring: Any) -> bool:
    return isinstance(ring, (int, np.integer)) and not isinstance(ring, bool) and ring >= 2


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: Tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def to_dict(self) -> Dict[str, Any]:
        return {"betti": self.rank, "torsion": list(self.torsion)}


@dataclass
class ChainComplex:
    """Finite chain complex; diffs[n] maps degree n to degree n-1"""
    ring: Any
    dims: Dict[int, int]
    diffs: Dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.ring != "Z" and not _is_prime_ring(self.ring):
            raise UnsupportedRing(f"Unsupported ring {self.ring!r}")
        self.dims = {int(n): int(d) for n, d in self.dims.items()}
        self.diffs = {int(n): np.asarray(m, dtype=np.int64).reshape(self.dim(n - 1), self.dim(n))
                      for n, m in self.diffs.items()}
        if self.is_field:
            self.diffs = {n: m % self.ring for n, m in self.diffs.items()}
        self.validate()

    @property
    def is_field(self) -> bool:
        return self.ring != "Z"

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def degrees(self) -> List[int]:
        return sorted(n for n, d in self.dims.items() if d)

    def differential(self, n: int) -> np.ndarray:
        if n in self.diffs:
            return self.diffs[n]
        return zeros(self.dim(n - 1), self.dim(n))

    def validate(self) -> None:
        for n in self.diffs:
            if not (self.dim(n - 2) and self.dim(n)):
                continue
            if self.is_field:
                residue = mat_mul(self.differential(n - 1), self.differential(n), self.ring)
            else:
                residue = self.differential(n - 1).astype(object) @ self.differential(n).astype(object)
            if np.any(residue != 0):
                raise BoundaryNotZero(f"d o d != 0 from degree {n}", {"degree": n})

    def shifted(self, by: int, negate: bool = False) -> "ChainComplex":
        """(C[by])_n = C_(n - by), optionally with -d"""
        sign = -1 if negate else 1
        return ChainComplex(self.ring, {n + by: d for n, d in self.dims.items()},
                            {n + by: sign * m for n, m in self.diffs.items()})


def _rank_over(ring: Any, matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    if ring == "Z":
        return len(invariant_factors(matrix))
    return rank(matrix, ring)


def homology(complex_: ChainComplex) -> Dict[int, HomologyGroup]:
    """Per-degree homology; over Z the torsion comes from the Smith form of the incoming differential"""
    result: Dict[int, HomologyGroup] = {}
    degrees = sorted(complex_.dims)
    for n in degrees:
        outgoing = complex_.differential(n)
        incoming = complex_.differential(n + 1)
        cycles = complex_.dim(n) - _rank_over(complex_.ring, outgoing)
        if complex_.ring == "Z":
            factors = invariant_factors(incoming) if incoming.size else ()
            torsion = tuple(d for d in factors if d > 1)
            result[n] = HomologyGroup(cycles - len(factors), torsion)
        else:
            result[n] = HomologyGroup(cycles - _rank_over(complex_.ring, incoming))
    return result


def homology_basis(complex_: ChainComplex, n: int) -> Subquotient:
    """H_n over F_p with deterministic representatives"""
    if not complex_.is_field:
        raise UnsupportedRing("Homology bases are only recorded over F_p")
    prime = complex_.ring
    cycles = nullspace(complex_.differential(n), prime) if complex_.dim(n - 1) else identity(complex_.dim(n))
    boundaries = complex_.differential(n + 1)
    return Subquotient.of(cycles, boundaries, prime)


def homology_bases(complex_: ChainComplex) -> Dict[int, Subquotient]:
    return {n: homology_basis(complex_, n) for n in sorted(complex_.dims)}


def induced_map(chain_map: np.ndarray, source: Subquotient, target: Subquotient) -> np.ndarray:
    """Matrix of the map on homology in the recorded bases"""
    if source.dim == 0 or target.dim == 0:
        return zeros(target.dim, source.dim)
    images = mat_mul(chain_map, source.reps, source.prime)
    return target.coords(images)


@dataclass
class ShortExactSequence:
    """0 -> A -i-> B -j-> C -> 0 degreewise"""
    sub: ChainComplex
    middle: ChainComplex
    quotient: ChainComplex
    inclusion: Dict[int, np.ndarray]
    projection: Dict[int, np.ndarray]

    def __post_init__(self):
        self.prime = self.middle.ring
        if not self.middle.is_field:
            raise UnsupportedRing("Short exact sequences are handled over F_p")

    def i(self, n: int) -> np.ndarray:
        return self.inclusion.get(n, zeros(self.middle.dim(n), self.sub.dim(n)))

    def j(self, n: int) -> np.ndarray:
        return self.projection.get(n, zeros(self.quotient.dim(n), self.middle.dim(n)))

    def degrees(self) -> List[int]:
        return sorted(set(self.sub.dims) | set(self.middle.dims) | set(self.quotient.dims))

    def check(self) -> None:
        """Raise NonExactSequence unless the maps are chain maps and each degree is exact"""
        p = self.prime
        for n in self.degrees():
            i_n, j_n = self.i(n), self.j(n)
            if rank(i_n, p) != self.sub.dim(n):
                raise NonExactSequence(f"Inclusion is not injective in degree {n}", {"degree": n})
            if rank(j_n, p) != self.quotient.dim(n):
                raise NonExactSequence(f"Projection is not surjective in degree {n}", {"degree": n})
            if self.middle.dim(n) != self.sub.dim(n) + self.quotient.dim(n) or np.any(mat_mul(j_n, i_n, p)):
                raise NonExactSequence(f"Sequence is not exact in the middle in degree {n}", {"degree": n})
            if np.any((mat_mul(self.middle.differential(n), i_n, p) - mat_mul(self.i(n - 1), self.sub.differential(n), p)) % p):
                raise NonExactSequence(f"Inclusion is not a chain map in degree {n}", {"degree": n})
            if np.any((mat_mul(self.quotient.differential(n), j_n, p) - mat_mul(self.j(n - 1), self.middle.differential(n), p)) % p):
                raise NonExactSequence(f"Projection is not a chain map in degree {n}", {"degree": n})


def connecting_map(ses: ShortExactSequence, n: int,
                   sub_bases: Optional[Dict[int, Subquotient]] = None,
                   quotient_bases: Optional[Dict[int, Subquotient]] = None,
                   column_order: Optional[Sequence[int]] = None) -> np.ndarray:
    """delta: H_n(C) -> H_(n-1)(A) by lift, differentiate, pull back"""
    p = ses.prime
    source = (quotient_bases or {}).get(n) or homology_basis(ses.quotient, n)
    target = (sub_bases or {}).get(n - 1) or homology_basis(ses.sub, n - 1)
    if source.dim == 0 or target.dim == 0:
        return zeros(target.dim, source.dim)
    lifted = solve_or_raise(ses.j(n), source.reps, p, f"lifting cycles in degree {n}", column_order)
    boundary = mat_mul(ses.middle.differential(n), lifted, p)
    pulled = solve_or_raise(ses.i(n - 1), boundary, p, f"pulling back boundaries in degree {n - 1}")
    return target.coords(pulled)


def change_middle_basis(ses: ShortExactSequence, rng: np.random.Generator) -> ShortExactSequence:
    """The same sequence with the middle complex in a random basis, so lifts through j are not unique"""
    p = ses.prime
    degrees = ses.degrees()
    change = {n: random_invertible(rng, ses.middle.dim(n), p) for n in degrees}
    undo = {n: inverse(g, p) for n, g in change.items()}

    def g(n: int) -> np.ndarray:
        return change.get(n, identity(ses.middle.dim(n)))

    diffs = {n: mat_mul(mat_mul(g(n - 1), ses.middle.differential(n), p), undo[n], p) for n in degrees}
    middle = ChainComplex(p, dict(ses.middle.dims), diffs)
    inclusion = {n: mat_mul(change[n], ses.i(n), p) for n in degrees}
    projection = {n: mat_mul(ses.j(n), undo[n], p) for n in degrees}
    return ShortExactSequence(ses.sub, middle, ses.quotient, inclusion, projection)


def lift_independence_check(ses: ShortExactSequence, rng: np.random.Generator, trials: int = 2) -> Dict[str, Any]:
    """connecting_map in every degree under `trials` random pivot orders for the lift"""
    rows, passed = [], True
    for n in ses.degrees():
        baseline = connecting_map(ses, n)
        orders = [[int(c) for c in rng.permutation(ses.middle.dim(n))] for _ in range(trials)]
        agree = all(is_zero((connecting_map(ses, n, column_order=order) - baseline) % ses.prime, ses.prime)
                    for order in orders)
        rows.append({"degree": n, "shape": list(baseline.shape), "passed": agree})
        passed = passed and agree
    return {"passed": passed, "rows": rows}


def long_exact_sequence_check(ses: ShortExactSequence) -> Dict[str, Any]:
    """Rank bookkeeping of ... -> H_n A -> H_n B -> H_n C -> H_(n-1) A -> ..."""
    p = ses.prime
    sub = homology_bases(ses.sub)
    mid = homology_bases(ses.middle)
    quo = homology_bases(ses.quotient)
    failures = []
    for n in ses.degrees():
        a = sub.get(n) or homology_basis(ses.sub, n)
        b = mid.get(n) or homology_basis(ses.middle, n)
        c = quo.get(n) or homology_basis(ses.quotient, n)
        i_star = induced_map(ses.i(n), a, b)
        j_star = induced_map(ses.j(n), b, c)
        delta = connecting_map(ses, n, sub, quo)
        delta_in = connecting_map(ses, n + 1, sub, quo)
        # composites vanish and ranks match kernels, so each node is exact
        checks = {
            "at_sub": a.dim - rank(i_star, p) == rank(delta_in, p) and is_zero(mat_mul(i_star, delta_in, p), p),
            "at_middle": b.dim - rank(j_star, p) == rank(i_star, p) and is_zero(mat_mul(j_star, i_star, p), p),
            "at_quotient": c.dim - rank(delta, p) == rank(j_star, p) and is_zero(mat_mul(delta, j_star, p), p),
        }
        for node, ok in checks.items():
            if not ok:
                failures.append({"degree": n, "node": node})
    return {"passed": not failures, "failures": failures}


def cone_of_identity(complex_: ChainComplex) -> ShortExactSequence:
    """0 -> A -> cone(id_A) -> A[-1] -> 0"""
    p = complex_.ring
    dims, diffs, inclusion, projection = {}, {}, {}, {}
    degrees = sorted(set(complex_.dims) | {n + 1 for n in complex_.dims})
    for n in degrees:
        a_n, a_prev = complex_.dim(n), complex_.dim(n - 1)
        dims[n] = a_n + a_prev
        # cone_n = A_n + A_(n-1), d(a, b) = (d a + b, -d b)
        upper = np.concatenate([complex_.differential(n), identity(a_prev)], axis=1)
        lower = np.concatenate([zeros(complex_.dim(n - 2), a_n), (-complex_.differential(n - 1)) % p], axis=1)
        diffs[n] = np.concatenate([upper, lower], axis=0)
        inclusion[n] = np.concatenate([identity(a_n), zeros(a_prev, a_n)], axis=0)
        projection[n] = np.concatenate([zeros(a_prev, a_n), identity(a_prev)], axis=1)
    cone = ChainComplex(p, dims, diffs)
    shifted = complex_.shifted(1, negate=True)
    return ShortExactSequence(complex_, cone, shifted, inclusion, projection)


def direct_sum(first: ChainComplex, second: ChainComplex) -> ChainComplex:
    degrees = sorted(set(first.dims) | set(second.dims))
    dims = {n: first.dim(n) + second.dim(n) for n in degrees}
    diffs = {}
    for n in degrees:
        upper = np.concatenate([first.differential(n), zeros(first.dim(n - 1), second.dim(n))], axis=1)
        lower = np.concatenate([zeros(second.dim(n - 1), first.dim(n)), second.differential(n)], axis=1)
        diffs[n] = np.concatenate([upper, lower], axis=0)
    return ChainComplex(first.ring, dims, diffs)


def split_sequence(first: ChainComplex, second: ChainComplex) -> ShortExactSequence:
    """0 -> A -> A + B -> B -> 0"""
    total = direct_sum(first, second)
    inclusion, projection = {}, {}
    for n in total.dims:
        inclusion[n] = np.concatenate([identity(first.dim(n)), zeros(second.dim(n), first.dim(n))], axis=0)
        projection[n] = np.concatenate([zeros(second.dim(n), first.dim(n)), identity(second.dim(n))], axis=1)
    return ShortExactSequence(first, total, second, inclusion, projection)
