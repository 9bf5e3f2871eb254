"""Randomised and exhaustive property checks of the whole structure for one q.

Each check returns a :class:`Check`; ``run_sweep`` runs them all.  Checks are
exhaustive where the search space is small and seeded-random otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .errors import GroupError
from .matrix import FieldMatrix
from .membership import (
    satisfies_pair_equations,
    decompose_member,
    im_phi_member,
    is_member,
    iter_skeletons,
)
from .oq_algebra import relations_preserved
from .perm import permutation_matrix, quotient_cosets
from .qmatrix import QMatrix
from .report import (
    AutReport,
    analyze,
    coset_rep,
    gamma,
    random_block_diagonal,
    random_matrix,
    random_member,
    verify_gamma_homomorphism,
)

EXHAUSTIVE_BUDGET = 20_000
SKELETON_SAMPLE = 200
GROUP_SCAN_LIMIT = 5_000
CONJUGATION_LIMIT = 10**6


@dataclass
class Check:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"[{status}] {self.name}: {self.cases} cases{extra}"


def all_matrices(q: QMatrix):
    p, n = q.field.prime, q.n
    for flat in itertools.product(range(p), repeat=n * n):
        yield FieldMatrix(q.field, [flat[r * n : (r + 1) * n] for r in range(n)])


def sample_matrices(q: QMatrix, report: AutReport, samples: int, rng, budget: int = EXHAUSTIVE_BUDGET):
    """Every matrix when the field is small enough, otherwise random matrices,
    random members and single-entry perturbations of members."""
    p, n = q.field.prime, q.n
    if p is not None and p ** (n * n) <= budget:
        return list(all_matrices(q))
    out = []
    for _ in range(samples):
        out.append(random_matrix(n, q.field, rng))
        m = random_member(q, rng, report.P)
        out.append(m)
        rows = [list(r) for r in m.rows]
        i, j = rng.randrange(n), rng.randrange(n)
        rows[i][j] = rows[i][j] + q.field.one
        out.append(FieldMatrix(q.field, rows))
    return out


def _first_failure(cases, pred: Callable) -> tuple[int, str]:
    count = 0
    for c in cases:
        count += 1
        if not pred(c):
            return count, f"counterexample: {c!r}"
    return count, ""


def _check(name, cases, pred) -> Check:
    count, detail = _first_failure(cases, pred)
    return Check(name, not detail, count, detail)


def members_sample(q, report, samples, rng):
    return [random_member(q, rng, report.P) for _ in range(samples)]


def check_oracle(q, mats) -> Check:
    return _check(
        "oracle equivalence (criterion vs relation preservation)",
        mats,
        lambda m: is_member(q, m) == (relations_preserved(q, m) and m.is_invertible()),
    )


def check_pair_equations_agreement(q, mats) -> Check:
    return _check(
        "two-equation form agrees with the criterion",
        mats,
        lambda m: is_member(q, m) == (satisfies_pair_equations(q, m) and m.is_invertible()),
    )


def check_transpose(q, mats) -> Check:
    return _check("transpose closure", mats, lambda m: is_member(q, m) == is_member(q, m.T))


def check_group_closure(q, members, rng) -> Check:
    def pred(m):
        n = rng.choice(members)
        return is_member(q, m @ n) and is_member(q, m.inverse())

    return _check("members closed under product and inverse", members, pred)


def _group_sample(G, rng, limit=GROUP_SCAN_LIMIT):
    return list(G) if G.order <= limit else [rng.choice(G.elements) for _ in range(limit)]


def check_permutation_matrices(q, report, rng) -> Check:
    return _check(
        "r_pi is a member for every compatible pi",
        _group_sample(report.P, rng),
        lambda p: is_member(q, permutation_matrix(p, q.field)),
    )


def check_skeletons_compatible(q, report, members) -> Check:
    def pred(m):
        return all(s in report.P for s in itertools.islice(iter_skeletons(m), SKELETON_SAMPLE))

    return _check("skeletons of members are compatible", members, pred)


def check_skeleton_rows(q, report, members) -> Check:
    """Nonzero m[pi(i), j] forces B(i) == B(j) for a skeleton pi."""
    b = report.blocks.block_of

    def pred(m):
        for pi in itertools.islice(iter_skeletons(m), 20):
            for i in range(1, q.n + 1):
                for j in range(1, q.n + 1):
                    if m[pi(i), j] and b[i] != b[j]:
                        return False
        return True

    return _check("skeleton rows stay inside blocks", members, pred)


def check_block_images(q, report, rng) -> Check:
    blocks = report.blocks

    def pred(p):
        return all(
            frozenset(p(x) for x in blocks.block(i)) == blocks.block(p(i)) for i in range(1, q.n + 1)
        )

    return _check("compatible permutations map blocks to blocks", _group_sample(report.P, rng), pred)


def check_block_relation(q, report, rng) -> Check:
    """B(i) == B(j) iff B(pi(i)) == B(pi(j))."""
    b = report.blocks.block_of
    n = q.n

    def pred(p):
        return all((b[i] == b[j]) == (b[p(i)] == b[p(j)]) for i in range(1, n + 1) for j in range(1, n + 1))

    return _check("block relation is preserved by compatible permutations", _group_sample(report.P, rng), pred)


def check_normality(q, report) -> Check:
    P, I = report.P, report.I
    if P.order * I.order <= CONJUGATION_LIMIT:
        pairs = [(s, p) for s in P for p in I]
    else:
        pairs = [(s, p) for s in P.generators for p in I.generators]
    check = _check(
        "invariant subgroup is normal",
        pairs,
        lambda sp: sp[0].inverse() * sp[1] * sp[0] in I,
    )
    try:
        quotient_cosets(P, I)
    except GroupError as exc:
        check.passed, check.detail = False, str(exc)
    return check


def check_im_phi_conjugation(q, report, members, rng) -> Check:
    blocks = report.blocks

    def pred(n):
        g = random_block_diagonal(blocks, q.field, rng)
        p = rng.choice(report.P.elements)
        r = permutation_matrix(p, q.field)
        by_perm = r @ g @ permutation_matrix(p.inverse(), q.field)
        by_member = n @ g @ n.inverse()
        return im_phi_member(q, blocks, by_perm) and im_phi_member(q, blocks, by_member) and is_member(q, g)

    return _check("block-diagonal subgroup is stable under conjugation", members, pred)


def check_decomposition(q, report, members) -> Check:
    def pred(m):
        sigma, g = decompose_member(q, report.blocks, m, report.I)
        return (
            permutation_matrix(sigma, q.field) @ g == m
            and im_phi_member(q, report.blocks, g)
            and sigma in report.P
            and sigma in report.coset_representatives
        )

    return _check("members factor as r_sigma times block-diagonal", members, pred)


def check_gamma_well_defined(q, report, members) -> Check:
    I = report.I

    def pred(m):
        reps = {coset_rep(s, I) for s in itertools.islice(iter_skeletons(m), SKELETON_SAMPLE)}
        return len(reps) == 1

    return _check("gamma is constant on the skeletons of a member", members, pred)


def check_gamma_homomorphism(q, report, samples, rng) -> Check:
    ok = verify_gamma_homomorphism(q, report.blocks, report.I, samples, rng, report.P)
    return Check("gamma is a homomorphism", ok, samples)


def check_gamma_surjective(q, report) -> Check:
    return _check(
        "gamma hits every coset",
        report.coset_representatives,
        lambda r: gamma(q, report.blocks, report.I, permutation_matrix(r, q.field)) == r,
    )


def check_gamma_kernel(q, report, members) -> Check:
    ident = coset_rep(report.P.elements[0], report.I)
    return _check(
        "gamma kernel is the block-diagonal subgroup",
        members,
        lambda m: (gamma(q, report.blocks, report.I, m) == ident) == im_phi_member(q, report.blocks, m),
    )


def exhaustive_members(q: QMatrix, budget: int = EXHAUSTIVE_BUDGET):
    """All members over a small prime field, or None when out of budget."""
    p = q.field.prime
    if p is None or p ** (q.n * q.n) > budget:
        return None
    return [m for m in all_matrices(q) if is_member(q, m)]


def run_sweep(q: QMatrix, samples: int = 200, seed: int = 0, report: AutReport | None = None) -> list[Check]:
    rng = random.Random(seed)
    report = report or analyze(q)
    mats = sample_matrices(q, report, samples, rng)
    members = members_sample(q, report, samples, rng)
    all_members = exhaustive_members(q)
    kernel_members = all_members if all_members is not None else members
    return [
        check_oracle(q, mats),
        check_pair_equations_agreement(q, mats),
        check_transpose(q, mats),
        check_group_closure(q, members, rng),
        check_permutation_matrices(q, report, rng),
        check_skeletons_compatible(q, report, members),
        check_skeleton_rows(q, report, members),
        check_block_images(q, report, rng),
        check_block_relation(q, report, rng),
        check_normality(q, report),
        check_im_phi_conjugation(q, report, members, rng),
        check_decomposition(q, report, members),
        check_gamma_well_defined(q, report, kernel_members),
        check_gamma_homomorphism(q, report, samples, rng),
        check_gamma_surjective(q, report),
        check_gamma_kernel(q, report, kernel_members),
    ]
