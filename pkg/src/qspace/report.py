"""The structure of the graded automorphism group, and finite-field checks of it.

For a parameter matrix with blocks B_1..B_m, compatible group P and
invariant subgroup I, the group of members is

    (GL_{|B_1|} x ... x GL_{|B_m|}) x| P / I

``analyze`` computes every ingredient; ``census`` counts members over GF(p)
by brute force and compares with the order the structure predicts.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import prod

from .errors import CapExceededError, FieldError, PreconditionError
from .matrix import FieldMatrix, det_values
from .membership import is_member, phi_embed, skeleton_any, violation_in
from .perm import (
    CosetList,
    Permutation,
    PermGroup,
    compatible_group,
    identify_small_group,
    invariant_subgroup,
    permutation_matrix,
    quotient_cosets,
)
from .qmatrix import BlockPartition, QMatrix, color_codes
from .scalar import Field

CENSUS_BUDGET = 2**24
LISTING_LIMIT = 1000


def structure_string(blocks: BlockPartition, quotient_order: int, quotient_name: str) -> str:
    n = blocks.n
    if blocks.m == 1 and quotient_order == 1:
        return f"GL_{n}(k)"
    if all(b == 1 for b in blocks.sizes):
        base = f"(k*)^{n}"
    else:
        base = "(" + " × ".join(f"GL_{b}" for b in blocks.sizes) + ")"
    q = quotient_name if quotient_order <= 8 else f"Q(order {quotient_order})"
    return f"{base} ⋊ {q}"


@dataclass
class AutReport:
    n: int
    field: Field
    blocks: BlockPartition
    block_sizes: list[int]
    p_order: int
    p_generators: list[Permutation]
    p_name: str
    i_order: int
    i_name: str
    quotient_order: int
    quotient_name: str
    coset_representatives: list[Permutation]
    structure: str
    P: PermGroup = field(repr=False)
    I: PermGroup = field(repr=False)
    cosets: CosetList = field(repr=False)

    def __post_init__(self):
        assert self.p_order == self.i_order * self.quotient_order
        assert sum(self.block_sizes) == self.n

    def to_json(self) -> dict:
        def listing(G):
            return [str(p) for p in G] if G.order <= LISTING_LIMIT else None

        return {
            "n": self.n,
            "field": self.field.to_json(),
            "blocks": self.blocks.to_json(),
            "block_sizes": self.block_sizes,
            "p_order": self.p_order,
            "p_name": self.p_name,
            "p_generators": [g.to_json() for g in self.p_generators],
            "p_elements": listing(self.P),
            "i_order": self.i_order,
            "i_name": self.i_name,
            "i_elements": listing(self.I),
            "quotient_order": self.quotient_order,
            "quotient_name": self.quotient_name,
            "coset_representatives": [r.to_json() for r in self.coset_representatives],
            "structure": self.structure,
        }

    def to_text(self) -> str:
        blocks = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks.blocks)
        lines = [
            f"n = {self.n} over {self.field!r}",
            f"blocks: {blocks}  (sizes {self.block_sizes})",
            f"compatible group P_q: order {self.p_order} ({self.p_name}), "
            f"generators {' '.join(map(str, self.p_generators)) or '()'}",
        ]
        if self.p_order <= LISTING_LIMIT:
            lines.append("  elements: " + " ".join(map(str, self.P)))
        lines.append(f"invariant subgroup I_q: order {self.i_order} ({self.i_name})")
        if self.i_order <= LISTING_LIMIT:
            lines.append("  elements: " + " ".join(map(str, self.I)))
        lines.append(
            f"quotient P_q/I_q: order {self.quotient_order} ({self.quotient_name}), "
            f"representatives {' '.join(map(str, self.coset_representatives))}"
        )
        lines.append(f"Aut_gr = {self.structure}")
        return "\n".join(lines)


def analyze(q: QMatrix, engine: str = "pruned", cap: int | None = None) -> AutReport:
    blocks = q.block_decomposition()
    P = compatible_group(q, engine=engine, cap=cap)
    I = invariant_subgroup(q, P, blocks)
    cosets = quotient_cosets(P, I)
    quotient_name = str(identify_small_group(cosets))
    return AutReport(
        n=q.n,
        field=q.field,
        blocks=blocks,
        block_sizes=blocks.sizes,
        p_order=P.order,
        p_generators=list(P.generators),
        p_name=str(identify_small_group(P)),
        i_order=I.order,
        i_name=str(identify_small_group(I)),
        quotient_order=cosets.order,
        quotient_name=quotient_name,
        coset_representatives=list(cosets.representatives),
        structure=structure_string(blocks, cosets.order, quotient_name),
        P=P,
        I=I,
        cosets=cosets,
    )


def coset_rep(pi: Permutation, I: PermGroup) -> Permutation:
    """Least element of pi * I."""
    return I.coset_min(pi)


def gamma(q: QMatrix, blocks: BlockPartition | None, I: PermGroup, m: FieldMatrix) -> Permutation:
    """Send a member to the coset of its skeleton permutations, as its least element."""
    if not is_member(q, m):
        raise PreconditionError("gamma is defined on members only")
    return coset_rep(skeleton_any(m), I)


def gl_order(b: int, p: int) -> int:
    """|GL_b(F_p)|."""
    if b < 1:
        raise ValueError("block size must be positive")
    Field(p)
    return prod(p**b - p**i for i in range(b))


# census -------------------------------------------------------------------------


@dataclass
class CensusResult:
    p: int
    n: int
    counted_members: int
    predicted: int
    quotient_order: int
    block_sizes: list[int]

    @property
    def matches(self) -> bool:
        return self.counted_members == self.predicted

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "counted_members": self.counted_members,
            "predicted": self.predicted,
            "quotient_order": self.quotient_order,
            "block_sizes": self.block_sizes,
            "matches": self.matches,
        }


def _count_chunk(args) -> int:
    codes, n, p, prefix = args
    count = 0
    rest = n * n - len(prefix)
    for tail in itertools.product(range(p), repeat=rest):
        flat = prefix + tail
        rows = [flat[r * n : (r + 1) * n] for r in range(n)]
        if violation_in(codes, rows) is None and det_values(rows, p):
            count += 1
    return count


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("QSPACE_WORKERS", "1")))
    except ValueError:
        return 1


def count_members(q: QMatrix, budget: int = CENSUS_BUDGET, workers: int | None = None) -> int:
    """Brute-force count of members over GF(p), enumerating all p^(n^2) matrices."""
    p = q.field.prime
    if p is None:
        raise FieldError("census needs a prime field")
    n = q.n
    total = p ** (n * n)
    if total > budget:
        raise CapExceededError(f"{p}^{n * n} = {total} matrices exceeds the census budget {budget}")
    workers = default_workers() if workers is None else max(1, workers)
    codes = color_codes(q)
    plen = 0
    while p**plen < 8 * workers and plen < n * n:
        plen += 1
    tasks = [(codes, n, p, pre) for pre in itertools.product(range(p), repeat=plen)]
    if workers == 1:
        return sum(map(_count_chunk, tasks))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return sum(ex.map(_count_chunk, tasks))


def census(
    q: QMatrix,
    budget: int = CENSUS_BUDGET,
    workers: int | None = None,
    report: AutReport | None = None,
) -> CensusResult:
    report = report or analyze(q)
    p = q.field.prime
    counted = count_members(q, budget, workers)
    predicted = report.quotient_order * prod(gl_order(b, p) for b in report.block_sizes)
    return CensusResult(p, q.n, counted, predicted, report.quotient_order, report.block_sizes)


# random members ----------------------------------------------------------------


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_matrix(n: int, field: Field, rng, span: int = 3) -> FieldMatrix:
    """Uniform over GF(p); integers in [-span, span] over Q."""
    if field.prime is None:
        draw = lambda: rng.randint(-span, span)  # noqa: E731
    else:
        draw = lambda: rng.randrange(field.prime)  # noqa: E731
    return FieldMatrix(field, [[draw() for _ in range(n)] for _ in range(n)])


def random_invertible(n: int, field: Field, rng) -> FieldMatrix:
    while True:
        m = random_matrix(n, field, rng)
        if m.is_invertible():
            return m


def random_block_diagonal(blocks: BlockPartition, field: Field, rng) -> FieldMatrix:
    return phi_embed(blocks, [random_invertible(b, field, rng) for b in blocks.sizes])


def random_member(q: QMatrix, rng_seed=0, P: PermGroup | None = None) -> FieldMatrix:
    """r_sigma @ Phi(M_1..M_m) for uniform sigma in P and random invertible blocks."""
    rng = _rng(rng_seed)
    P = P or compatible_group(q)
    sigma = rng.choice(P.elements)
    g = random_block_diagonal(q.block_decomposition(), q.field, rng)
    return permutation_matrix(sigma, q.field) @ g


def verify_gamma_homomorphism(
    q: QMatrix,
    blocks: BlockPartition | None,
    I: PermGroup,
    samples: int = 100,
    rng_seed=0,
    P: PermGroup | None = None,
) -> bool:
    """gamma(m n) == gamma(m) gamma(n) (as cosets) on random member pairs."""
    rng = _rng(rng_seed)
    P = P or compatible_group(q)
    for _ in range(samples):
        m = random_member(q, rng, P)
        n = random_member(q, rng, P)
        lhs = gamma(q, blocks, I, m @ n)
        rhs = coset_rep(gamma(q, blocks, I, m) * gamma(q, blocks, I, n), I)
        if lhs != rhs:
            return False
    return True
