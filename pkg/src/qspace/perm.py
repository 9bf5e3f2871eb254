"""Permutations of {1..n}, explicit permutation groups, and the compatible /
invariant permutation groups of a parameter matrix.

Composition follows function composition: ``(p * s)(i) == p(s(i))``.  With
this convention ``permutation_matrix(p) @ permutation_matrix(s)`` equals
``permutation_matrix(p * s)``.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import CapExceededError, GroupError, ParseError
from .matrix import FieldMatrix
from .qmatrix import BlockPartition, QMatrix, color_codes
from .scalar import QQ, Field

NAIVE_CAP = 10
PRUNED_CAP = 14


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}; ``images[i - 1] == pi(i)``.

    Ordering is lexicographic on ``images``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> Permutation:
        """Parse cycle notation such as ``"(1,2)(3,4)"``; ``"()"`` is the identity."""
        text = text.replace(" ", "")
        if not re.fullmatch(r"(\((\d+(,\d+)*)?\))*", text):
            raise ParseError(f"bad cycle notation: {text!r}")
        images = list(range(1, n + 1))
        seen = set()
        for body in re.findall(r"\(([^)]*)\)", text):
            if not body:
                continue
            cyc = [int(x) for x in body.split(",")]
            if any(not 1 <= x <= n for x in cyc) or seen & set(cyc) or len(set(cyc)) != len(cyc):
                raise ParseError(f"bad cycle ({body}) for n={n}")
            seen |= set(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        a = self.images
        return Permutation._raw(tuple([a[j - 1] for j in other.images]))

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> Permutation:
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation._raw(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p, k = p * self, k + 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least element."""
        seen, out = set(), []
        for i in range(1, self.n + 1):
            if i in seen or self(i) == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self):
        return f"Permutation({self})"

    def to_json(self) -> dict:
        return {"cycles": str(self), "images": list(self.images)}


def permutation_matrix(pi: Permutation, field: Field = QQ) -> FieldMatrix:
    """The matrix r_pi with r[i, j] = 1 iff i == pi(j)."""
    n = pi.n
    return FieldMatrix(field, [[int(i == pi(j)) for j in range(1, n + 1)] for i in range(1, n + 1)])


def _closure(gens: list[Permutation], n: int, limit: int | None = None) -> set[Permutation]:
    span = {Permutation.identity(n)}
    for k in range(len(gens)):
        if _extend(span, gens[: k + 1], limit):
            break
    return span


def _extend(span: set, gens: list[Permutation], limit: int | None) -> bool:
    """Grow ``span`` (closed under ``gens[:-1]``) to the closure under ``gens``.

    Returns True if the size limit was hit.
    """
    new = gens[-1]
    frontier = list(span)
    active = [new]
    while frontier:
        nxt = []
        for g in frontier:
            for s in active:
                h = g * s
                if h not in span:
                    span.add(h)
                    nxt.append(h)
                    if limit is not None and len(span) > limit:
                        return True
        frontier = nxt
        active = gens
    return False


class PermGroup:
    """An explicit subgroup of S_n stored as a sorted element list.

    Construction verifies that the elements form a group: a greedy generating
    set is grown until its closure covers every element, and the closure
    must not be larger than the list itself.
    """

    def __init__(self, n: int, elements: Iterable[Permutation], *, generators=None):
        elems = sorted(set(elements))
        if not elems or not elems[0].is_identity():
            raise GroupError("group must contain the identity")
        if any(p.n != n for p in elems):
            raise GroupError(f"all elements must act on 1..{n}")
        self.n = n
        self.elements: tuple[Permutation, ...] = tuple(elems)
        self._set = frozenset(elems)
        if generators is None:
            generators = self._greedy_generators()
        else:
            generators = tuple(generators)
            if _closure(list(generators), n, len(elems)) != self._set:
                raise GroupError("generators do not generate the element list")
        self.generators: tuple[Permutation, ...] = generators
        self._coset_min: dict[Permutation, Permutation] = {}

    def _greedy_generators(self) -> tuple[Permutation, ...]:
        gens: list[Permutation] = []
        span = {Permutation.identity(self.n)}
        for g in self.elements:
            if g in span:
                continue
            gens.append(g)
            hit = _extend(span, gens, len(self.elements))
            if hit or not span <= self._set:
                raise GroupError("element list is not closed under composition")
        return tuple(gens)

    @classmethod
    def generated_by(cls, n: int, gens: Iterable[Permutation]) -> PermGroup:
        gens = [g for g in gens if not g.is_identity()]
        return cls(n, _closure(gens, n), generators=gens)

    @classmethod
    def symmetric(cls, n: int) -> PermGroup:
        gens = []
        if n > 1:
            gens.append(Permutation.from_cycles("(1,2)", n))
        if n > 2:
            gens.append(Permutation(tuple(range(2, n + 1)) + (1,)))
        return cls.generated_by(n, gens)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p):
        return p in self._set

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.n == other.n and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return f"PermGroup(n={self.n}, order={self.order})"

    def coset_min(self, pi: Permutation) -> Permutation:
        """Least element of the left coset ``pi * G`` (cached per coset)."""
        rep = self._coset_min.get(pi)
        if rep is None:
            coset = [pi * h for h in self.elements]
            rep = min(coset)
            for x in coset:
                self._coset_min[x] = rep
        return rep

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.n == other.n and self._set <= other._set

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def conjugate(self, sigma: Permutation) -> PermGroup:
        """The group sigma G sigma^-1."""
        s_inv = sigma.inverse()
        return PermGroup(self.n, (sigma * g * s_inv for g in self.elements))


@dataclass
class CosetList:
    """Left cosets of a normal subgroup, each named by its least element."""

    parent: PermGroup
    subgroup: PermGroup
    representatives: tuple[Permutation, ...]
    _rep_of: dict = field(repr=False, default_factory=dict)

    def __len__(self):
        return len(self.representatives)

    @property
    def order(self) -> int:
        return len(self.representatives)

    def rep(self, p: Permutation) -> Permutation:
        """Canonical representative of the coset p * subgroup."""
        try:
            return self._rep_of[p]
        except KeyError:
            raise GroupError(f"{p} is not in the parent group") from None

    def coset(self, rep: Permutation) -> list[Permutation]:
        return sorted(rep * h for h in self.subgroup)

    def multiply(self, a: Permutation, b: Permutation) -> Permutation:
        return self.rep(a * b)


def quotient_cosets(parent: PermGroup, sub: PermGroup) -> CosetList:
    if not sub.is_subgroup_of(parent):
        raise GroupError("subgroup is not contained in the parent group")
    rep_of: dict[Permutation, Permutation] = {}
    reps = []
    for g in parent.elements:
        if g in rep_of:
            continue
        # g is the least element not yet covered, hence least in its coset.
        left = {g * h for h in sub.elements}
        right = {h * g for h in sub.elements}
        if left != right:
            raise GroupError(f"subgroup is not normal: cosets of {g} differ")
        for x in left:
            rep_of[x] = g
        reps.append(g)
    return CosetList(parent, sub, tuple(reps), rep_of)


# compatible and invariant permutations ----------------------------------------


def is_compatible(q: QMatrix, pi: Permutation) -> bool:
    rows = q.rows
    im = pi.images
    n = q.n
    for i in range(n):
        ri, rpi = rows[i], rows[im[i] - 1]
        for j in range(n):
            if rpi[im[j] - 1] != ri[j]:
                return False
    return True


def _naive_search(q: QMatrix, limit: int | None = None) -> Iterable[Permutation]:
    n = q.n
    c = color_codes(q)
    for k, perm in enumerate(itertools.permutations(range(n))):
        if limit is not None and k >= limit:
            return
        if all(c[perm[i]][perm[j]] == c[i][j] for i in range(n) for j in range(n)):
            yield Permutation._raw(tuple(x + 1 for x in perm))


def _pruned_search(q: QMatrix) -> list[tuple[int, ...]]:
    n = q.n
    c = color_codes(q)
    sizes = q.block_decomposition().block_of
    bsize = {i: len(q.block_decomposition().blocks[b - 1]) for i, b in sizes.items()}
    sig = [(bsize[i + 1], tuple(sorted(c[i])), tuple(sorted(r[i] for r in c))) for i in range(n)]
    cand = [[j for j in range(n) if sig[j] == sig[i]] for i in range(n)]
    img = [0] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []

    def extend(k: int):
        if k == n:
            found.append(tuple(x + 1 for x in img))
            return
        ck = c[k]
        for j in cand[k]:
            if used[j]:
                continue
            cj = c[j]
            for a in range(k):
                if cj[img[a]] != ck[a]:
                    break
            else:
                img[k] = j
                used[j] = True
                extend(k + 1)
                used[j] = False

    extend(0)
    return found


def compatible_group(q: QMatrix, engine: str = "pruned", cap: int | None = None) -> PermGroup:
    """All pi with q[pi(i), pi(j)] == q[i, j].

    ``engine="naive"`` scans S_n; ``"pruned"`` backtracks, restricting
    candidate images to indices with the same block size and row/column
    colour multisets and cutting any partial assignment that breaks an entry.
    ``cap`` bounds n (defaults 10 naive, 14 pruned).
    """
    n = q.n
    if engine == "naive":
        cap = NAIVE_CAP if cap is None else cap
        if n > cap:
            raise CapExceededError(f"n={n} exceeds the naive search cap {cap}")
        elements = list(_naive_search(q))
    elif engine == "pruned":
        cap = PRUNED_CAP if cap is None else cap
        if n > cap:
            raise CapExceededError(f"n={n} exceeds the pruned search cap {cap}")
        elements = [Permutation._raw(t) for t in _pruned_search(q)]
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return PermGroup(n, elements)


def fixes_blocks(pi: Permutation, blocks: BlockPartition) -> bool:
    return all({pi(i) for i in b} == set(b) for b in blocks.blocks)


def invariant_subgroup(q: QMatrix, P: PermGroup, blocks: BlockPartition | None = None) -> PermGroup:
    """The compatible permutations mapping every block onto itself."""
    blocks = blocks or q.block_decomposition()
    return PermGroup(P.n, (p for p in P if fixes_blocks(p, blocks)))


# small-group identification ---------------------------------------------------


@dataclass(frozen=True)
class GroupName:
    name: str
    order: int
    generators: tuple[str, ...] = ()

    def __str__(self):
        return self.name


def _element_orders(elements, mul: Callable, ident) -> Counter:
    orders = Counter()
    for g in elements:
        k, p = 1, g
        while p != ident:
            p, k = mul(p, g), k + 1
        orders[k] += 1
    return orders


def _name_from_invariants(order: int, abelian: bool, orders: Counter) -> str:
    if order == 1:
        return "C_1"
    if order in (2, 3, 5, 7):
        return f"C_{order}"
    if order == 4:
        return "C_4" if orders[4] else "C_2^2"
    if order == 6:
        return "C_6" if abelian else "S_3"
    if order == 8:
        if abelian:
            if orders[8]:
                return "C_8"
            return "C_4 × C_2" if orders[4] else "C_2^3"
        return "D_8" if orders[2] == 5 else "Q_8"
    raise ValueError(order)


def identify_small_group(G: PermGroup | CosetList) -> GroupName:
    """Name a group of order <= 8 from (order, abelian, element-order multiset).

    Larger groups are returned as ``"group of order N"`` with generators.
    """
    if isinstance(G, CosetList):
        elements = list(G.representatives)
        mul = G.multiply
        ident = G.rep(Permutation.identity(G.parent.n))
        gens = _quotient_generators(G)
    else:
        elements = list(G.elements)
        mul = Permutation.__mul__
        ident = Permutation.identity(G.n)
        gens = G.generators
    order = len(elements)
    gen_strs = tuple(str(g) for g in gens)
    if order > 8:
        return GroupName(f"group of order {order}", order, gen_strs)
    abelian = all(mul(a, b) == mul(b, a) for a in gens for b in gens)
    orders = _element_orders(elements, mul, ident)
    return GroupName(_name_from_invariants(order, abelian, orders), order, gen_strs)


def _quotient_generators(C: CosetList) -> tuple[Permutation, ...]:
    ident = C.rep(Permutation.identity(C.parent.n))
    gens: list[Permutation] = []
    span = {ident}
    for r in C.representatives:
        if r in span:
            continue
        gens.append(r)
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = C.multiply(a, g)
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
    return tuple(gens)
