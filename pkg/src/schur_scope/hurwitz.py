"""Braid group action on reflection factorizations of the Coxeter element.

A braid word is a tuple of nonzero letters, +i for the i-th generator move and
-i for its inverse, applied left to right.  Under that convention the word for
a product of generators reads the product right to left; all identities checked
here are encoded accordingly.
"""

from __future__ import annotations

import enum
import functools
import math
from collections import deque
from dataclasses import dataclass

from . import weyl
from ._matrix import Matrix, identity, mat_pow, matmul
from .cartan import (
    CartanMatrix,
    TypeClass,
    classify_type,
    coxeter_exponent,
    coxeter_number,
    submatrix,
)
from .weyl import Reflection, coxeter_element, height, root_of_reflection

BraidWord = tuple[int, ...]

DEFAULT_NODE_CAP = 10**6
DEFAULT_PRUNE_MULTIPLIER = 4


class Ternary(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Factorization:
    """Ordered tuple of reflections whose product is the ambient Coxeter element."""

    parts: tuple[Reflection, ...]
    coxeter: Matrix

    def __post_init__(self):
        product = identity(len(self.coxeter))
        for part in self.parts:
            product = matmul(product, part.matrix)
        if product != self.coxeter:
            raise ValueError("factorization product differs from the Coxeter element")

    @property
    def n(self) -> int:
        return len(self.parts)

    def roots(self) -> tuple[weyl.Root, ...]:
        return tuple(part.root for part in self.parts)


def canonical_factorization(
    C: CartanMatrix, order: tuple[int, ...] | None = None
) -> Factorization:
    """(s_{order(1)}, ..., s_{order(n)}), the factorization presented by the fan."""
    order = weyl._check_order(C, order)
    parts = tuple(weyl.simple_reflection(C, i) for i in order)
    return Factorization(parts, coxeter_element(C, order))


def _conjugate_reflection(a: Reflection, b: Reflection) -> Reflection:
    """a b a^{-1}, with the root recomputed from the conjugated matrix."""
    matrix = matmul(matmul(a.matrix, b.matrix), a.matrix)  # reflections are involutions
    return Reflection(matrix, root_of_reflection(matrix))


def braid_move(f: Factorization, i: int, inverse: bool = False) -> Factorization:
    """Generator move at slot i: (g_i, g_{i+1}) -> (g_i g_{i+1} g_i^{-1}, g_i),
    or (g_{i+1}, g_{i+1}^{-1} g_i g_{i+1}) for the inverse move."""
    if not 1 <= i <= f.n - 1:
        raise ValueError(f"braid index {i} out of range 1..{f.n - 1}")
    a, b = f.parts[i - 1], f.parts[i]
    if inverse:
        pair = (b, _conjugate_reflection(b, a))
    else:
        pair = (_conjugate_reflection(a, b), a)
    parts = f.parts[: i - 1] + pair + f.parts[i + 1 :]
    return Factorization(parts, f.coxeter)


def apply_braid_word(f: Factorization, word: BraidWord) -> Factorization:
    """Apply the letters in sequence; +i is the generator move, -i its inverse."""
    for letter in word:
        if letter == 0 or abs(letter) > f.n - 1:
            raise ValueError(f"braid letter {letter} out of range for {f.n} strands")
        f = braid_move(f, abs(letter), inverse=letter < 0)
    return f


def word_inverse(word: BraidWord) -> BraidWord:
    return tuple(-x for x in reversed(word))


def _sort_key(f: Factorization) -> tuple:
    return f.roots()


@dataclass(frozen=True)
class OrbitResult:
    factorizations: tuple[Factorization, ...]
    complete: bool

    def __len__(self) -> int:
        return len(self.factorizations)


def hurwitz_orbit(start: Factorization, node_cap: int = DEFAULT_NODE_CAP) -> OrbitResult:
    """Breadth-first closure of the factorization under all generator moves.

    complete is True iff the closure terminated below the node cap; this always
    happens for finite types, where the orbit is the full set of reduced
    reflection factorizations of c.
    """
    if node_cap < 1:
        raise ValueError("node cap must be >= 1")
    seen = {start}
    queue = deque([start])
    complete = True
    while queue:
        f = queue.popleft()
        for i in range(1, f.n):
            for inverse in (False, True):
                image = braid_move(f, i, inverse)
                if image not in seen:
                    if len(seen) >= node_cap:
                        complete = False
                        continue
                    seen.add(image)
                    queue.append(image)
    return OrbitResult(tuple(sorted(seen, key=_sort_key)), complete)


@functools.lru_cache(maxsize=None)
def _full_orbit(C: CartanMatrix, order: tuple[int, ...] | None) -> OrbitResult:
    if classify_type(C) is not TypeClass.FINITE:
        raise ValueError("unbounded orbit closure requires a finite-type matrix")
    result = hurwitz_orbit(canonical_factorization(C, order))
    assert result.complete
    return result


def factorization_count_formula(C: CartanMatrix) -> int:
    """n! h^n / |G_n|, with the division required to be exact."""
    if classify_type(C) is not TypeClass.FINITE:
        raise ValueError("counting formula requires a finite-type matrix")
    n = C.n
    h = coxeter_number(C)
    group_order = len(weyl.enumerate_group(C))
    numerator = math.factorial(n) * h**n
    if numerator % group_order:
        raise ArithmeticError(
            f"{numerator} is not divisible by |G| = {group_order}; upstream bug"
        )
    return numerator // group_order


def _as_reflection(t: Reflection | Matrix) -> Reflection:
    if isinstance(t, Reflection):
        return t
    return Reflection(t, root_of_reflection(t))


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a bounded targeted orbit search."""

    word: BraidWord | None
    exhausted: bool
    nodes: int


def _targeted_orbit_search(
    start: Factorization,
    target: Reflection,
    node_cap: int,
    height_cap: int | None,
) -> SearchOutcome:
    """BFS for a factorization containing the target as a component.

    Tuples with any component root taller than height_cap are not expanded;
    that is sound for reporting found-witnesses, never for claiming absence.
    Returns the braid word reaching the witness (with the target moved to the
    front) when found.
    """

    def admissible(f: Factorization) -> bool:
        if height_cap is None:
            return True
        return all(height(r) <= height_cap for r in f.roots())

    def finish(f: Factorization, node: Factorization, parents) -> BraidWord:
        word: list[int] = []
        cursor = node
        while parents[cursor] is not None:
            parent, letter = parents[cursor]
            word.append(letter)
            cursor = parent
        word.reverse()
        slot = next(j for j, part in enumerate(f.parts) if part == target)
        word.extend(range(-slot, 0))  # -slot, ..., -1 walks the witness to slot 1
        return tuple(word)

    parents: dict[Factorization, tuple[Factorization, int] | None] = {start: None}
    if target in start.parts:
        return SearchOutcome(finish(start, start, parents), True, 1)
    queue = deque([start])
    exhausted = True
    while queue:
        f = queue.popleft()
        for i in range(1, f.n):
            for letter in (i, -i):
                image = braid_move(f, i, inverse=letter < 0)
                if image in parents:
                    continue
                parents[image] = (f, letter)
                if target in image.parts:
                    return SearchOutcome(finish(image, image, parents), False, len(parents))
                if not admissible(image):
                    continue
                if len(parents) >= node_cap:
                    exhausted = False
                    continue
                queue.append(image)
    return SearchOutcome(None, exhausted, len(parents))


@dataclass(frozen=True)
class PrefixVerdict:
    """Answer to 'is t the first reflection of some length-n factorization of c'.

    A YES always carries a witness factorization whose first part is t.
    exhausted reports whether a NO/UNKNOWN came from a fully explored search
    region (below the pruning bound) rather than from hitting the node cap.
    """

    answer: Ternary
    factorization: Factorization | None
    exhausted: bool = True


def is_prefix_of_coxeter(
    t: Reflection | Matrix,
    C: CartanMatrix,
    order: tuple[int, ...] | None = None,
    node_cap: int = DEFAULT_NODE_CAP,
    prune_multiplier: int = DEFAULT_PRUNE_MULTIPLIER,
) -> PrefixVerdict:
    """Certify that t extends to a reflection factorization t r_2 ... r_n = c.

    Two routes are cross-checked where both are exact: (a) the length identity
    l(t c) = n - 1 in absolute length, and (b) membership of t among the
    components of the orbit of the canonical factorization.  Finite types are
    decided exhaustively; infinite types report YES with a certificate or
    UNKNOWN, never an uncertified NO.
    """
    t = _as_reflection(t)
    canonical = canonical_factorization(C, order)
    c = canonical.coxeter
    n = C.n
    remainder = matmul(t.matrix, c)  # t^{-1} c, reflections being involutions

    if classify_type(C) is TypeClass.FINITE:
        table = weyl._absolute_length_table(C)
        if t.matrix not in table:
            raise ValueError("reflection does not belong to this Weyl group")
        length_route = table[remainder] == n - 1
        orbit_route = any(t in f.parts for f in _full_orbit(C, order).factorizations)
        if length_route != orbit_route:
            raise AssertionError("length and orbit routes disagree; upstream bug")
        if not length_route:
            return PrefixVerdict(Ternary.NO, None)
        rest = weyl.factor_into_reflections(remainder, n - 1, weyl.reflections(C))
        assert rest is not None
        return PrefixVerdict(Ternary.YES, Factorization((t,) + rest, c))

    # Rank 2 is decidable outright: t extends iff t c is itself a reflection.
    if n == 2:
        rest = weyl.factor_into_reflections(remainder, 1, ())
        if rest is None:
            return PrefixVerdict(Ternary.NO, None)
        return PrefixVerdict(Ternary.YES, Factorization((t,) + rest, c))

    # Infinite type: algebraic certificate search first, with reflection pools
    # sized from the query root (doubled out to give headroom).
    for bound in weyl.adaptive_pool_bounds(height(t.root)):
        pool = weyl._reflection_pool(C, bound)
        rest = weyl.factor_into_reflections(remainder, n - 1, pool)
        if rest is not None:
            return PrefixVerdict(Ternary.YES, Factorization((t,) + rest, c))
    # Orbit certificate search, pruned by component root height.
    height_cap = prune_multiplier * max(height(t.root), 1)
    outcome = _targeted_orbit_search(canonical, t, node_cap, height_cap)
    if outcome.word is not None:
        witness = apply_braid_word(canonical, outcome.word)
        assert witness.parts[0] == t
        return PrefixVerdict(Ternary.YES, witness)
    return PrefixVerdict(Ternary.UNKNOWN, None, exhausted=outcome.exhausted)


def stabilizer_check(
    word: BraidWord, C: CartanMatrix, order: tuple[int, ...] | None = None
) -> bool:
    """True iff the braid word fixes the canonical factorization componentwise."""
    start = canonical_factorization(C, order)
    return apply_braid_word(start, word).parts == start.parts


def full_twist_identity_check(
    C: CartanMatrix, order: tuple[int, ...] | None = None, k: int = 1
) -> bool:
    """Check that the k-fold full twist conjugates every component by c^k.

    The full twist is the n-th power of the descending generator product; its
    word under the left-to-right convention is (1, 2, ..., n-1) per copy.
    """
    n = C.n
    start = canonical_factorization(C, order)
    word: BraidWord = tuple(range(1, n)) * (n * abs(k))
    if k < 0:
        word = word_inverse(word)
    twisted = apply_braid_word(start, word)
    ck = mat_pow(start.coxeter, k)
    ck_inv = mat_pow(start.coxeter, -k)
    return tuple(p.matrix for p in twisted.parts) == tuple(
        matmul(matmul(ck, part.matrix), ck_inv) for part in start.parts
    )


@dataclass(frozen=True)
class StabilizerWord:
    """A braid word known to fix the canonical tuple, with its provenance range."""

    word: BraidWord
    label: str


def standard_stabilizer_words(
    C: CartanMatrix, order: tuple[int, ...] | None = None
) -> tuple[tuple[StabilizerWord, ...], tuple[str, ...]]:
    """Catalogue of stabilizer words from index-range subdiagram twists.

    For vertices i..j of the ordered diagram, the (j - i + 1)-st power of the
    descending generator block raised to the order of the subdiagram Coxeter
    element fixes the tuple.  Sub-ranges whose Coxeter element has infinite
    order are skipped and reported in the diagnostics list.
    """
    order = weyl._check_order(C, order)
    n = C.n
    words: list[StabilizerWord] = []
    skipped: list[str] = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            indices = tuple(order[k - 1] for k in range(i, j + 1))
            sub = submatrix(C, indices)
            if classify_type(sub) is not TypeClass.FINITE:
                skipped.append(f"vertices {i}..{j}: subdiagram is not finite type")
                continue
            h_sub = coxeter_number(sub)
            block = tuple(range(i, j))  # ascending letters act as the descending product
            words.append(
                StabilizerWord(block * ((j - i + 1) * h_sub), f"block twist {i}..{j}")
            )
    # Adjacent-pair powers sigma_i^m for finite m = m(order_i, order_{i+1}).
    for i in range(1, n):
        m = coxeter_exponent(C, order[i - 1], order[i])
        if m is None:
            skipped.append(f"adjacent pair {i},{i + 1}: infinite braid exponent")
            continue
        words.append(StabilizerWord((i,) * m, f"adjacent power sigma_{i}^{m}"))
    return tuple(words), tuple(skipped)


@dataclass(frozen=True)
class NormalityWitness:
    stabilizing: BraidWord
    conjugator: BraidWord


def normality_probe(
    C: CartanMatrix, order: tuple[int, ...] | None = None
) -> NormalityWitness | None:
    """Search for a stabilizer word whose conjugate by a single generator is not
    a stabilizer, witnessing that the stabilizer subgroup is not normal."""
    if classify_type(C) is not TypeClass.FINITE:
        raise ValueError("normality probe requires a finite-type matrix")
    candidates, _ = standard_stabilizer_words(C, order)
    for candidate in candidates:
        if not stabilizer_check(candidate.word, C, order):
            continue  # tested, not assumed
        for g in range(1, C.n):
            for sign in (1, -1):
                conjugated = (-sign * g,) + candidate.word + (sign * g,)
                if not stabilizer_check(conjugated, C, order):
                    return NormalityWitness(candidate.word, (sign * g,))
    return None
