"""Faithful integer-matrix model of the Weyl group acting on the root lattice.

Group elements are n x n integer matrices in the simple-root basis (column j =
image of alpha_j), so equality is matrix equality and stays decidable even for
infinite groups.  Roots are integer coordinate tuples; height is the L1 norm.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from . import _matrix as _mat
from ._matrix import Matrix, Vector, identity, mat_sub, matmul, matvec
from .cartan import CartanMatrix, TypeClass, classify_type, symmetrized, symmetrizer

Root = Vector

# Exact integer matrix algebra; _matrix raises ValueError on rank mismatch.
compose = matmul
inverse = _mat.inverse
apply = matvec


@dataclass(frozen=True)
class Reflection:
    """A group involution moving a rank-1 sublattice, paired with its positive root."""

    matrix: Matrix
    root: Root


def height(v: Root) -> int:
    return sum(abs(x) for x in v)


def is_positive(v: Root) -> bool:
    return any(v) and all(x >= 0 for x in v)


def is_negative(v: Root) -> bool:
    return any(v) and all(x <= 0 for x in v)


def negate(v: Root) -> Root:
    return tuple(-x for x in v)


def positive_part(v: Root) -> Root:
    """The positive vector among v and -v; rejects mixed-sign input."""
    if is_positive(v):
        return v
    if is_negative(v):
        return negate(v)
    raise ValueError(f"{v} has mixed signs, so it is not a real root")


def bilinear(C: CartanMatrix, u: Root, v: Root) -> int:
    """Symmetrized invariant form B(u, v) = sum d_i a_ij u_i v_j."""
    s = symmetrized(C)
    return sum(s[i][j] * u[i] * v[j] for i in range(C.n) for j in range(C.n))


def simple_root(n: int, i: int) -> Root:
    """Coordinate vector of alpha_i (1-based)."""
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    return tuple(1 if k == i - 1 else 0 for k in range(n))


@functools.lru_cache(maxsize=None)
def simple_reflection(C: CartanMatrix, i: int) -> Reflection:
    """s_i acting by alpha_j -> alpha_j - a_ij alpha_i."""
    n = C.n
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    rows = tuple(
        tuple(
            (1 if row == col else 0) - (C.entries[i - 1][col] if row == i - 1 else 0)
            for col in range(n)
        )
        for row in range(n)
    )
    return Reflection(rows, simple_root(n, i))


def simple_reflections(C: CartanMatrix) -> tuple[Reflection, ...]:
    return tuple(simple_reflection(C, i) for i in range(1, C.n + 1))


def _check_order(C: CartanMatrix, order: tuple[int, ...] | None) -> tuple[int, ...]:
    if order is None:
        return tuple(range(1, C.n + 1))
    if sorted(order) != list(range(1, C.n + 1)):
        raise ValueError(f"{order} is not a permutation of 1..{C.n}")
    return tuple(order)


def coxeter_element(C: CartanMatrix, order: tuple[int, ...] | None = None) -> Matrix:
    """Product s_{order(1)} ... s_{order(n)}; default order is 1, 2, ..., n."""
    result = identity(C.n)
    for i in _check_order(C, order):
        result = matmul(result, simple_reflection(C, i).matrix)
    return result


def is_reflection(w: Matrix) -> bool:
    """True iff w^2 = id and w - id has rank exactly 1."""
    n = len(w)
    if sum(w[i][i] for i in range(n)) != n - 2:
        return False  # an involution moving rank 1 has trace n - 2
    if matmul(w, w) != identity(n):
        return False
    return _mat.rank(mat_sub(w, identity(n))) == 1


def root_of_reflection(t: Matrix) -> Root:
    """The primitive positive generator of the image lattice of t - id."""
    n = len(t)
    moved = mat_sub(t, identity(n))
    columns = [tuple(moved[row][col] for row in range(n)) for col in range(n)]
    generator: Root | None = None
    for col in columns:
        if any(col):
            generator = _mat.primitive(col)
            break
    if generator is None:
        raise ValueError("identity matrix is not a reflection")
    # Every column must be an integer multiple of the generator (rank 1).
    pivot = next(i for i, x in enumerate(generator) if x)
    for col in columns:
        ratio = Fraction(col[pivot], generator[pivot])
        if ratio.denominator != 1 or any(
            col[i] != ratio * generator[i] for i in range(n)
        ):
            raise ValueError("matrix does not move a rank-1 sublattice")
    if matmul(t, t) != identity(n):
        raise ValueError("matrix is not an involution")
    return positive_part(generator)


def reflection_for_root(C: CartanMatrix, beta: Root) -> Reflection:
    """The unique reflection v -> v - (2 B(v, beta) / B(beta, beta)) beta.

    Raises ValueError unless beta is a real root: the candidate matrix must be
    integral, an involution moving a rank-1 sublattice, its root must round-trip
    to beta, and B(beta, beta) must equal some simple-root norm 2 d_i.
    """
    if len(beta) != C.n:
        raise ValueError("rank mismatch")
    beta = positive_part(beta)
    norm = bilinear(C, beta, beta)
    if norm <= 0:
        raise ValueError(f"{beta} has non-positive norm, so it is not a real root")
    if norm not in {2 * d for d in symmetrizer(C)}:
        raise ValueError(f"{beta} has norm {norm}, not the norm of any simple root")
    s = symmetrized(C)
    s_beta = tuple(sum(s[i][j] * beta[j] for j in range(C.n)) for i in range(C.n))
    rows: list[tuple[int, ...]] = []
    for row in range(C.n):
        entries = []
        for col in range(C.n):
            coeff = Fraction(2 * s_beta[col], norm)
            value = (1 if row == col else 0) - coeff * beta[row]
            if value.denominator != 1:
                raise ValueError(f"{beta} is not a real root (non-integral reflection)")
            entries.append(int(value))
        rows.append(tuple(entries))
    matrix = tuple(rows)
    if root_of_reflection(matrix) != beta:
        raise ValueError(f"{beta} is not a real root (not primitive for its reflection)")
    return Reflection(matrix, beta)


def is_real_root(C: CartanMatrix, v: Root) -> bool:
    try:
        reflection_for_root(C, v)
    except ValueError:
        return False
    return True


_FINITE_CLOSURE_CAP = 2_000_000


def positive_real_roots(C: CartanMatrix, height_bound: int) -> tuple[Root, ...]:
    """All positive real roots of height <= bound, sorted by (height, coords).

    Closure of the simple roots under the simple reflections; pruning at the
    bound is exhaustive because every non-simple positive real root has a
    height-decreasing simple reflection.  For finite types the closure is run
    to completion regardless of the bound.
    """
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    unbounded = classify_type(C) is TypeClass.FINITE
    gens = simple_reflections(C)
    found: set[Root] = {simple_root(C.n, i) for i in range(1, C.n + 1)}
    frontier = list(found)
    while frontier:
        if len(found) > _FINITE_CLOSURE_CAP:
            raise RuntimeError("root closure exceeded safety cap")
        beta = frontier.pop()
        for g in gens:
            image = matvec(g.matrix, beta)
            if not is_positive(image):
                continue  # only beta = alpha_i flips, and -alpha_i is recorded via pairing
            if not unbounded and height(image) > height_bound:
                continue
            if image not in found:
                found.add(image)
                frontier.append(image)
    return tuple(sorted(found, key=lambda r: (height(r), r)))


def enumerate_real_roots(C: CartanMatrix, height_bound: int) -> tuple[Root, ...]:
    """Positive and negative real roots with height <= bound (exhaustive for finite)."""
    positives = positive_real_roots(C, height_bound)
    both = positives + tuple(negate(r) for r in positives)
    return tuple(sorted(both, key=lambda r: (height(r), r)))


@functools.lru_cache(maxsize=None)
def reflections(C: CartanMatrix) -> tuple[Reflection, ...]:
    """All reflections of a finite-type group, one per positive root."""
    if classify_type(C) is not TypeClass.FINITE:
        raise ValueError("full reflection set requires a finite-type matrix")
    return tuple(reflection_for_root(C, beta) for beta in positive_real_roots(C, 1))


@functools.lru_cache(maxsize=None)
def _reflection_pool(C: CartanMatrix, height_bound: int) -> tuple[Reflection, ...]:
    return tuple(
        reflection_for_root(C, beta)
        for beta in positive_real_roots(C, height_bound)
    )


@functools.lru_cache(maxsize=None)
def enumerate_group(C: CartanMatrix) -> frozenset[Matrix]:
    """All group elements of a finite-type group, by closure under generators."""
    if classify_type(C) is not TypeClass.FINITE:
        raise ValueError("group enumeration requires a finite-type matrix")
    gens = [g.matrix for g in simple_reflections(C)]
    seen: set[Matrix] = {identity(C.n)}
    frontier = [identity(C.n)]
    while frontier:
        w = frontier.pop()
        for g in gens:
            image = matmul(w, g)
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return frozenset(seen)


@functools.lru_cache(maxsize=None)
def _absolute_length_table(C: CartanMatrix) -> dict[Matrix, int]:
    """Absolute length of every element of a finite-type group (BFS layering)."""
    gens = [t.matrix for t in reflections(C)]
    table: dict[Matrix, int] = {identity(C.n): 0}
    frontier = [identity(C.n)]
    level = 0
    while frontier:
        level += 1
        next_frontier = []
        for w in frontier:
            for t in gens:
                image = matmul(t, w)
                if image not in table:
                    table[image] = level
                    next_frontier.append(image)
        frontier = next_frontier
    return table


def _parity_matches(w: Matrix, k: int) -> bool:
    return _mat.det(w) == (1 if k % 2 == 0 else -1)


def factor_into_reflections(
    w: Matrix, count: int, pool: tuple[Reflection, ...]
) -> tuple[Reflection, ...] | None:
    """A product of exactly `count` pool reflections equal to w, or None.

    Depth-first search pruned by the rank of w - id (a product of k reflections
    moves a sublattice of rank at most k) and by determinant parity.
    """
    n = len(w)

    def search(target: Matrix, k: int) -> tuple[Reflection, ...] | None:
        if k == 0:
            return () if target == identity(n) else None
        if k == 1:
            # Pool-free last step: the remaining factor is forced to be the
            # target itself, so only reflection-hood needs checking.
            if is_reflection(target):
                return (Reflection(target, root_of_reflection(target)),)
            return None
        if not _parity_matches(target, k):
            return None
        if _mat.rank(mat_sub(target, identity(n))) > k:
            return None
        for t in pool:
            rest = search(matmul(t.matrix, target), k - 1)
            if rest is not None:
                return (t,) + rest
        return None

    return search(w, count)


_ADAPTIVE_DOUBLINGS = 4


def adaptive_pool_bounds(base: int) -> list[int]:
    """Height bounds 2*base, 4*base, ... rounded up to powers of two so the
    cached reflection pools are shared between queries."""
    bounds = []
    bound = 2
    while bound < 2 * max(base, 1):
        bound *= 2
    for _ in range(_ADAPTIVE_DOUBLINGS):
        bounds.append(bound)
        bound *= 2
    return bounds


def _moved_height(w: Matrix) -> int:
    """Largest height among the moved vectors w e_j - e_j."""
    n = len(w)
    return max(
        height(tuple(w[row][j] - (1 if row == j else 0) for row in range(n)))
        for j in range(n)
    )


def absolute_length(C: CartanMatrix, w: Matrix, cap: int | None = None) -> int | None:
    """Minimal number of reflections multiplying to w; None means unknown.

    Exact (and cap-free) for finite types via the cached group table.  For
    infinite types the reflection pool is height-bounded, starting at twice the
    tallest moved vector of w and doubling a few times; if no factorization of
    length <= cap is found the honest answer is None, never a guess.
    """
    if len(w) != C.n:
        raise ValueError("rank mismatch")
    if classify_type(C) is TypeClass.FINITE:
        table = _absolute_length_table(C)
        if w not in table:
            raise ValueError("matrix is not an element of the Weyl group")
        return table[w]
    if cap is None:
        cap = C.n
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if w == identity(C.n):
        return 0
    lower = _mat.rank(mat_sub(w, identity(C.n)))
    for k in range(lower, cap + 1):
        if not _parity_matches(w, k):
            continue
        for bound in adaptive_pool_bounds(_moved_height(w)):
            pool = _reflection_pool(C, bound)
            witness = factor_into_reflections(w, k, pool)
            if witness is not None:
                return k
    return None
