"""
Arrows of the restricted augmented simplex category.

Arrows are order-preserving injections [m] -> [n] stored by their image, with
[-1] the empty ordinal.  Face words are read as operators: the word
[i1, ..., ik] is d_{i1} d_{i2} ... d_{ik}, so d_{ik} acts first and the
underlying injection is delta^{ik} o ... o delta^{i1}.  Under this reading
d_i d_j = d_{j-1} d_i for i < j, and a word is in normal form when its letters
ascend; the ascending word lists the indices omitted by the image.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Dict, List, Sequence, Tuple

from ..resource.errors import IndexOutOfRange, ObjectMismatch, SchemaViolation

FaceWord = Tuple[int, ...]
OrderedPartition = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class Injection:
    """Monotone injection [src] -> [tgt] given by its image"""
    src: int
    tgt: int
    image: Tuple[int, ...]

    def __post_init__(self):
        if self.src < -1 or self.tgt < -1:
            raise IndexOutOfRange(f"Ordinals start at -1, got [{self.src}] -> [{self.tgt}]")
        if len(self.image) != self.src + 1:
            raise ObjectMismatch(f"Image {self.image} has the wrong size for source [{self.src}]")
        if any(b <= a for a, b in zip(self.image, self.image[1:])):
            raise ObjectMismatch(f"Image {self.image} is not strictly ascending")
        if self.image and (self.image[0] < 0 or self.image[-1] > self.tgt):
            raise IndexOutOfRange(f"Image {self.image} leaves [{self.tgt}]")

    @classmethod
    def identity(cls, n: int) -> "Injection":
        return cls(n, n, tuple(range(n + 1)))

    @classmethod
    def face(cls, n: int, i: int) -> "Injection":
        """delta^i : [n-1] -> [n], skipping i"""
        if not 0 <= i <= n:
            raise IndexOutOfRange(f"Face index {i} out of range for [{n}]")
        return cls(n - 1, n, tuple(x for x in range(n + 1) if x != i))

    @property
    def gap(self) -> int:
        return self.tgt - self.src

    @property
    def is_identity(self) -> bool:
        return self.src == self.tgt

    def omitted(self) -> Tuple[int, ...]:
        """Sorted complement of the image in [tgt]"""
        hit = set(self.image)
        return tuple(x for x in range(self.tgt + 1) if x not in hit)

    def name(self) -> str:
        """Normal-form word such as "d0d2", or "id" """
        word = normal_form(self)
        return "".join(f"d{i}" for i in word) if word else "id"

    def to_dict(self) -> Dict[str, Any]:
        return {"src": self.src, "tgt": self.tgt, "image": list(self.image)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Injection":
        try:
            return cls(int(data["src"]), int(data["tgt"]), tuple(int(x) for x in data["image"]))
        except (KeyError, TypeError, ValueError):
            raise SchemaViolation(f"Not an injection: {data!r}")


def compose(g: Injection, f: Injection) -> Injection:
    """f o g for g: [m] -> [m'] and f: [m'] -> [n]"""
    if g.tgt != f.src:
        raise ObjectMismatch(f"Cannot compose [{g.src}]->[{g.tgt}] with [{f.src}]->[{f.tgt}]")
    return Injection(g.src, f.tgt, tuple(f.image[i] for i in g.image))


def compose_chain(factors: Sequence[Injection]) -> Injection:
    """Composite of g_1, ..., g_k where g_1 is applied first in the simplex category"""
    result = factors[0]
    for factor in factors[1:]:
        result = compose(result, factor)
    return result


def eval_word(word: Sequence[int], n: int) -> Injection:
    result = Injection.identity(n)
    degree = n
    for letter in reversed(tuple(word)):
        if not 0 <= letter <= degree:
            raise IndexOutOfRange(f"Letter d{letter} is out of range at stage [{degree}] of word {list(word)}")
        result = compose(Injection.face(degree, letter), result)
        degree -= 1
    return result


def normal_form(theta: Injection) -> FaceWord:
    return theta.omitted()


def rewrite_to_normal_form(word: Sequence[int]) -> FaceWord:
    """Normal form by the rewriting rule alone, d_a d_b -> d_b d_(a+1) whenever b <= a"""
    letters = list(word)
    changed = True
    while changed:
        changed = False
        for t in range(len(letters) - 1):
            a, b = letters[t], letters[t + 1]
            if b <= a:
                letters[t], letters[t + 1] = b, a + 1
                changed = True
    return tuple(letters)


def enumerate_injections(m: int, n: int) -> List[Injection]:
    if m < -1 or m > n:
        return []
    return [Injection(m, n, image) for image in combinations(range(n + 1), m + 1)]


def ordered_partitions(size: int, blocks: int) -> List[OrderedPartition]:
    """Surjective assignments {0..size-1} -> blocks, lexicographic in the assignment"""
    if blocks < 1 or blocks > size:
        return []
    result = []
    for assignment in product(range(blocks), repeat=size):
        if len(set(assignment)) != blocks:
            continue
        result.append(tuple(tuple(x for x in range(size) if assignment[x] == b) for b in range(blocks)))
    return result


def two_step_factorizations(theta: Injection) -> List[Tuple[Injection, Injection]]:
    """All (g, f) with f o g = theta, one per subset of the omitted positions"""
    return [factor_through(theta, subset) for subset in _subsets(theta.gap)]


def factor_through(theta: Injection, subset: Sequence[int]) -> Tuple[Injection, Injection]:
    """The factorization whose middle image adds the omitted entries at `subset` positions"""
    omitted = theta.omitted()
    middle = tuple(sorted(set(theta.image) | {omitted[i] for i in subset}))
    position = {value: index for index, value in enumerate(middle)}
    first = Injection(theta.src, len(middle) - 1, tuple(position[x] for x in theta.image))
    second = Injection(len(middle) - 1, theta.tgt, middle)
    return first, second


def subset_of_factorization(theta: Injection, first: Injection, second: Injection) -> Tuple[int, ...]:
    """Inverse of `factor_through`: positions of omitted entries hit by the middle object"""
    if compose(first, second) != theta:
        raise ObjectMismatch("Pair does not factor theta")
    hit = set(second.image)
    return tuple(i for i, value in enumerate(theta.omitted()) if value in hit)


def _subsets(size: int) -> List[Tuple[int, ...]]:
    result: List[Tuple[int, ...]] = []
    for k in range(size + 1):
        result.extend(combinations(range(size), k))
    return result


@dataclass(frozen=True)
class FactorizationChain:
    """Composable factors g_1, ..., g_k of theta in written (opposite-category) order.

    `levels[i]` is the level at which the i-th omitted entry of theta enters
    the image; factor g_l is an identity exactly when no entry enters at l.
    """
    factors: Tuple[Injection, ...]
    levels: Tuple[int, ...]

    @property
    def has_identity(self) -> bool:
        return any(f.is_identity for f in self.factors)

    @property
    def blocks(self) -> OrderedPartition:
        k = len(self.factors)
        return tuple(tuple(i for i, level in enumerate(self.levels) if level == l) for l in range(1, k + 1))


def chain_from_partition(theta: Injection, partition: Sequence[Sequence[int]]) -> FactorizationChain:
    """Chain whose l-th factor omits the entries listed in block l (positions in theta's omitted set)"""
    levels = [0] * theta.gap
    for block_index, block in enumerate(partition, start=1):
        for position in block:
            levels[position] = block_index
    return _chain_from_levels(theta, tuple(levels), len(partition))


def _chain_from_levels(theta: Injection, levels: Tuple[int, ...], k: int) -> FactorizationChain:
    omitted = theta.omitted()
    images = []
    for l in range(k + 1):
        entered = {omitted[i] for i, level in enumerate(levels) if level <= l}
        images.append(tuple(sorted(set(theta.image) | entered)))
    factors = []
    for l in range(1, k + 1):
        position = {value: index for index, value in enumerate(images[l])}
        factors.append(Injection(len(images[l - 1]) - 1, len(images[l]) - 1,
                                 tuple(position[x] for x in images[l - 1])))
    return FactorizationChain(tuple(factors), levels)


def factorization_chains(theta: Injection, k: int, allow_identity: bool = True) -> List[FactorizationChain]:
    if k < 1:
        raise IndexOutOfRange(f"Chain length must be positive, got {k}")
    if theta.gap == 0 and k == 1:
        return [_chain_from_levels(theta, (), 1)]
    chains = []
    for levels in product(range(1, k + 1), repeat=theta.gap):
        if not allow_identity and len(set(levels)) != k:
            continue
        chains.append(_chain_from_levels(theta, tuple(levels), k))
    return chains
