"""
Spectral sequence of a finite filtered chain complex by the staircase method.

A class on E^r_s is represented by a chain x in filtration s whose boundary
drops r filtration steps; d^r[x] is simply [dx].  Pages are returned with the
same Page type the exact-couple engine emits, with representatives recorded
in chain coordinates.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..resource.errors import ClassDoesNotSurvive, IndexOutOfRange, SchemaViolation
from ..resource.logger import LoggerFactory
from .bicomplex import Bicomplex, total, total_layout
from .chain_complex import ChainComplex
from .exact_couple import Key, Page
from .linalg import Subquotient, identity, mat_mul, nullspace, solve, zeros

logger = LoggerFactory.get_logger("staircase")


@dataclass
class FilteredComplex:
    """Chain complex whose basis vectors carry a filtration index; d never raises the index.

    Pages are keyed (s, t - s + key_shift) for filtration s and total degree t.
    """
    complex: ChainComplex
    filtration: Dict[int, np.ndarray]
    key_shift: int = 0

    def __post_init__(self):
        self.filtration = {t: np.asarray(levels, dtype=np.int64) for t, levels in self.filtration.items()}
        for t in self.complex.dims:
            levels = self.level_of(t)
            if len(levels) != self.complex.dim(t):
                raise SchemaViolation(f"Filtration in degree {t} has {len(levels)} entries, "
                                      f"expected {self.complex.dim(t)}")
        for t in self.complex.diffs:
            d = self.complex.differential(t)
            source, target = self.level_of(t), self.level_of(t - 1)
            rows, cols = np.nonzero(d)
            if np.any(target[rows] > source[cols]):
                raise SchemaViolation(f"Differential raises the filtration in degree {t}")

    @property
    def prime(self) -> int:
        return self.complex.ring

    def level_of(self, t: int) -> np.ndarray:
        return self.filtration.get(t, np.zeros(0, dtype=np.int64))

    def levels(self) -> List[int]:
        values = {int(s) for levels in self.filtration.values() for s in levels}
        return sorted(values)

    def key(self, s: int, t: int) -> Key:
        return s, t - s + self.key_shift

    def degree_of(self, key: Key) -> Tuple[int, int]:
        """(s, t) for a page key"""
        s, c = key
        return s, c + s - self.key_shift

    def cycles(self, s: int, t: int, r: int) -> np.ndarray:
        """Z^r_s in degree t: chains in F_s whose boundary lies in F_(s-r)"""
        levels = self.level_of(t)
        cols = np.nonzero(levels <= s)[0]
        basis = zeros(self.complex.dim(t), len(cols))
        if len(cols) == 0:
            return basis
        rows = np.nonzero(self.level_of(t - 1) > s - r)[0]
        block = self.complex.differential(t)[np.ix_(rows, cols)]
        kernel = nullspace(block, self.prime) if len(rows) else identity(len(cols))
        result = zeros(self.complex.dim(t), kernel.shape[1])
        result[cols] = kernel
        return result

    def page_quotient(self, s: int, t: int, r: int) -> Subquotient:
        """E^r_s = Z^r_s / (Z^(r-1)_(s-1) + d Z^(r-1)_(s+r-1))"""
        p = self.prime
        numerator = self.cycles(s, t, r)
        lower = self.cycles(s - 1, t, r - 1)
        upper = mat_mul(self.complex.differential(t + 1), self.cycles(s + r - 1, t + 1, r - 1), p)
        denominator = np.concatenate([lower, upper], axis=1)
        return Subquotient.of(numerator, denominator, p)


def spectral_pages(fc: FilteredComplex, r_max: int) -> List[Page]:
    """Pages E^1 .. E^r_max"""
    p = fc.prime
    pages = []
    cells = [(s, t) for t in sorted(fc.complex.dims) for s in sorted({int(x) for x in fc.level_of(t)})]
    for r in range(1, r_max + 1):
        quotients = {fc.key(s, t): fc.page_quotient(s, t, r) for s, t in cells}
        degree = (-r, r - 1)
        d = {}
        for key, quotient in quotients.items():
            s, t = fc.degree_of(key)
            target_key = (key[0] + degree[0], key[1] + degree[1])
            target = quotients.get(target_key)
            if target is None or quotient.dim == 0:
                d[key] = zeros(target.dim if target is not None else 0, quotient.dim)
                continue
            images = mat_mul(fc.complex.differential(t), quotient.reps, p)
            d[key] = target.coords(images)
        dims = {key: q.dim for key, q in quotients.items()}
        page = Page(r, p, dims, d, degree,
                    {key: q.reps for key, q in quotients.items()},
                    {key: q.kill for key, q in quotients.items()})
        logger.debug("Staircase page", {"r": r, "support": len(page.support())})
        pages.append(page)
    return pages


def filtered_total(B: Bicomplex, filtration: str = "column") -> FilteredComplex:
    """Total complex filtered by columns (key (n, q)) or by rows (key (q, n))"""
    if filtration not in ("column", "row"):
        raise SchemaViolation(f"Unknown filtration {filtration!r}; expected 'column' or 'row'")
    complex_ = total(B)
    levels = {}
    for t in complex_.dims:
        entries = []
        for n, q, _, d in total_layout(B, t):
            entries.extend([n if filtration == "column" else q] * d)
        levels[t] = np.asarray(entries, dtype=np.int64)
    return FilteredComplex(complex_, levels)


def staircase_pages(B: Bicomplex, filtration: str = "column", r_max: int = 6) -> List[Page]:
    return spectral_pages(filtered_total(B, filtration), r_max)


def extend_representative(fc: FilteredComplex, t: int, s: int, x: np.ndarray, r: int,
                          page_offset: int = 0) -> np.ndarray:
    """Correct x in F_s by chains of F_(s-1) until its boundary drops r filtration steps.

    Raises ClassDoesNotSurvive with the page at which the class dies when some
    step has no solution.  `page_offset` shifts the reported page for callers
    whose first page is not E^1.
    """
    p = fc.prime
    x = np.asarray(x, dtype=np.int64).reshape(-1, 1) % p
    levels = fc.level_of(t)
    if np.any(x[levels > s]):
        raise IndexOutOfRange(f"Representative is not in filtration {s}", {"t": t, "s": s})
    d = fc.complex.differential(t)
    lower = np.nonzero(levels <= s - 1)[0]
    boundary_levels = fc.level_of(t - 1)
    current = x.copy()
    for k in range(1, r + 1):
        rows = np.nonzero(boundary_levels > s - k)[0]
        residue = mat_mul(d, current, p)[rows]
        if not residue.any():
            continue
        block = d[np.ix_(rows, lower)]
        correction = solve(block, (-residue) % p, p) if len(lower) else None
        if correction is None:
            raise ClassDoesNotSurvive(k - 1 + page_offset, {"t": t, "s": s, "step": k})
        current[lower] = (current[lower] + correction) % p
    return current
