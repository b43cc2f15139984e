"""The interval below the Coxeter element in absolute order.

Membership uses only the defining identity l(u) + l(u^-1 w) = l(w); for finite
types every length comes from the cached group table, so the poset is exact.
For infinite types only the membership test is exposed, with certified
three-valued answers (an uncertified search result never produces a NO).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import weyl
from ._matrix import Matrix, det, identity, mat_sub, matmul, rank
from .cartan import CartanMatrix, TypeClass, classify_type
from .hurwitz import Factorization, Ternary
from .weyl import Reflection, coxeter_element


def length_lower_bound(w: Matrix) -> int:
    """rank(w - id), raised by one when determinant parity rules that value out.

    Any product of k reflections moves a sublattice of rank at most k and has
    determinant (-1)^k, so a length equal to this bound is certified minimal.
    """
    r = rank(mat_sub(w, identity(len(w))))
    return r if det(w) == (1 if r % 2 == 0 else -1) else r + 1


def absolute_leq(
    u: Matrix, w: Matrix, C: CartanMatrix, cap: int | None = None
) -> Ternary:
    """Does l(u) + l(u^-1 w) = l(w) hold?  Exact for finite types.

    For infinite types the three lengths come from bounded searches; YES needs
    the right-hand length to be certified minimal (it is then squeezed by
    subadditivity), NO needs all three certified, anything else is UNKNOWN.
    """
    if classify_type(C) is TypeClass.FINITE:
        table = weyl._absolute_length_table(C)
        quotient = matmul(weyl.inverse(u), w)
        if u not in table or quotient not in table:
            raise ValueError("matrix is not an element of the Weyl group")
        return (
            Ternary.YES
            if table[u] + table[quotient] == table[w]
            else Ternary.NO
        )
    quotient = matmul(weyl.inverse(u), w)
    lengths = {}
    certified = {}
    for key, m in (("u", u), ("q", quotient), ("w", w)):
        found = weyl.absolute_length(C, m, cap)
        if found is None:
            return Ternary.UNKNOWN
        lengths[key] = found
        certified[key] = found == length_lower_bound(m)
    if lengths["u"] + lengths["q"] == lengths["w"]:
        return Ternary.YES if certified["w"] else Ternary.UNKNOWN
    if all(certified.values()):
        return Ternary.NO
    return Ternary.UNKNOWN


@dataclass(frozen=True)
class NCPoset:
    """Elements between the identity and c in absolute order, graded by length."""

    cartan: CartanMatrix
    order: tuple[int, ...]
    elements: tuple[Matrix, ...]
    ranks: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]  # index pairs (lower, upper)

    @property
    def bottom(self) -> Matrix:
        return self.elements[0]

    @property
    def top(self) -> Matrix:
        return self.elements[-1]

    @property
    def n(self) -> int:
        return self.cartan.n

    def rank_of(self, w: Matrix) -> int:
        return self.ranks[self.elements.index(w)]

    def leq(self, i: int, j: int) -> bool:
        """Order relation between element indices via the defining identity."""
        table = weyl._absolute_length_table(self.cartan)
        u, w = self.elements[i], self.elements[j]
        quotient = matmul(weyl.inverse(u), w)
        return table[u] + table[quotient] == table[w]


def enumerate_nc(C: CartanMatrix, order: tuple[int, ...] | None = None) -> NCPoset:
    """Filter the full group by the membership identity and grade by length."""
    if classify_type(C) is not TypeClass.FINITE:
        raise ValueError("poset enumeration requires a finite-type matrix")
    order = weyl._check_order(C, order)
    c = coxeter_element(C, order)
    table = weyl._absolute_length_table(C)
    n = C.n
    members = [
        w
        for w in weyl.enumerate_group(C)
        if table[w] + table[matmul(weyl.inverse(w), c)] == n
    ]
    members.sort(key=lambda w: (table[w], w))
    ranks = tuple(table[w] for w in members)
    index = {w: i for i, w in enumerate(members)}
    covers = []
    for i, u in enumerate(members):
        for j, w in enumerate(members):
            if ranks[j] != ranks[i] + 1:
                continue
            quotient = matmul(weyl.inverse(u), w)
            if table[quotient] == 1:  # rank-adjacent and comparable
                covers.append((i, j))
    return NCPoset(C, order, tuple(members), ranks, tuple(covers))


@dataclass(frozen=True)
class IntervalFactorization:
    """Reflections stepping u up to w, extended to a full factorization of c."""

    steps: tuple[Reflection, ...]
    full: Factorization


def interval_factorization(
    u: Matrix, w: Matrix, poset: NCPoset
) -> IntervalFactorization:
    """Reflections t_1 ... t_m with u t_1 ... t_m = w and m = l(w) - l(u).

    Found by breadth-first search inside the interval; the returned sequence is
    also embedded in a full reflection factorization of c (identity to u, the
    steps, then w to c).
    """
    C = poset.cartan
    table = weyl._absolute_length_table(C)
    c = coxeter_element(C, poset.order)

    def check_leq(a: Matrix, b: Matrix) -> bool:
        return table[a] + table[matmul(weyl.inverse(a), b)] == table[b]

    if not (check_leq(u, w) and check_leq(w, c)):
        raise ValueError("interval requires u <= w <= c in absolute order")

    def climb(lower: Matrix, upper: Matrix) -> tuple[Reflection, ...]:
        if lower == upper:
            return ()
        parents: dict[Matrix, tuple[Matrix, Reflection] | None] = {lower: None}
        frontier = [lower]
        while frontier:
            next_frontier = []
            for x in frontier:
                for t in weyl.reflections(C):
                    y = matmul(x, t.matrix)
                    if y in parents or table[y] != table[x] + 1:
                        continue
                    if not check_leq(y, upper):
                        continue
                    parents[y] = (x, t)
                    if y == upper:
                        path = []
                        cursor = y
                        while parents[cursor] is not None:
                            prev, step = parents[cursor]
                            path.append(step)
                            cursor = prev
                        return tuple(reversed(path))
                    next_frontier.append(y)
            frontier = next_frontier
        raise AssertionError("graded interval must contain a saturated chain")

    steps = climb(u, w)
    prefix = climb(identity(C.n), u)
    suffix = climb(w, c)
    full = Factorization(prefix + steps + suffix, c)
    return IntervalFactorization(steps, full)


def maximal_chain_count(p: NCPoset) -> int:
    """Number of saturated bottom-to-top chains, by dynamic programming."""
    counts = [0] * len(p.elements)
    counts[0] = 1
    by_rank = sorted(range(len(p.elements)), key=lambda i: p.ranks[i])
    incoming: dict[int, list[int]] = {}
    for lo, hi in p.covers:
        incoming.setdefault(hi, []).append(lo)
    for i in by_rank:
        if p.ranks[i] == 0:
            continue
        counts[i] = sum(counts[j] for j in incoming.get(i, ()))
    return counts[len(p.elements) - 1]


@dataclass(frozen=True)
class PosetReport:
    rank_counts: tuple[int, ...]
    self_dual_rank_function: bool
    maximal_chains: int
    is_lattice: bool
    atom_count: int

    def to_json_dict(self) -> dict:
        return {
            "rank_counts": list(self.rank_counts),
            "self_dual_rank_function": self.self_dual_rank_function,
            "maximal_chains": self.maximal_chains,
            "is_lattice": self.is_lattice,
            "atom_count": self.atom_count,
        }


def poset_properties(p: NCPoset) -> PosetReport:
    """Aggregate order-theoretic checks: rank generating function and its
    palindromicity, chain count, meet/join existence, atom count."""
    size = len(p.elements)
    n = p.n
    rank_counts = [0] * (n + 1)
    for r in p.ranks:
        rank_counts[r] += 1
    leq = [[p.leq(i, j) for j in range(size)] for i in range(size)]

    def unique_extreme(candidates: list[int], upper: bool) -> bool:
        if not candidates:
            return False
        for z in candidates:
            if all(leq[x][z] if upper else leq[z][x] for x in candidates):
                return True
        return False

    lattice = True
    for i in range(size):
        for j in range(i + 1, size):
            lower = [k for k in range(size) if leq[k][i] and leq[k][j]]
            upper = [k for k in range(size) if leq[i][k] and leq[j][k]]
            if not unique_extreme(lower, upper=True) or not unique_extreme(
                upper, upper=False
            ):
                lattice = False
                break
        if not lattice:
            break
    return PosetReport(
        rank_counts=tuple(rank_counts),
        self_dual_rank_function=rank_counts == rank_counts[::-1],
        maximal_chains=maximal_chain_count(p),
        is_lattice=lattice,
        atom_count=rank_counts[1] if n >= 1 else 0,
    )
