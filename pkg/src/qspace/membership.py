"""Which invertible matrices induce graded automorphisms, and how they factor.

A matrix ``m`` acts on generators by ``x_i -> sum_j m[i, j] x_j``.  It is a
member when it is invertible and ``(q[i,j] - q[s,t]) * m[i,s] * m[j,t] == 0``
for all ``i, j, s, t``.
"""

from __future__ import annotations

from .errors import CapExceededError, FieldError, NotInvertibleError, PreconditionError, SchemaError
from .matrix import FieldMatrix
from .perm import Permutation, PermGroup, permutation_matrix
from .qmatrix import BlockPartition, QMatrix, color_codes

SKELETON_CAP = 10**6


def _check_pair(q: QMatrix, m: FieldMatrix):
    if q.n != m.n:
        raise SchemaError(f"dimension mismatch: q is {q.n}x{q.n}, m is {m.n}x{m.n}")
    if q.field != m.field:
        raise FieldError(f"field mismatch: {q.field!r} vs {m.field!r}")


def violation_in(codes: list[list[int]], rows) -> tuple[int, int, int, int] | None:
    """Criterion kernel over raw entries: ``codes`` from :func:`color_codes`,
    ``rows`` any square array whose falsy entries are the zeros."""
    nz = [(i, s) for i, r in enumerate(rows) for s, x in enumerate(r) if x]
    for i, s in nz:
        ci, cs = codes[i], codes[s]
        for j, t in nz:
            if ci[j] != cs[t]:
                return (i + 1, j + 1, s + 1, t + 1)
    return None


def first_violation(q: QMatrix, m: FieldMatrix) -> tuple[int, int, int, int] | None:
    """First 1-based ``(i, j, s, t)`` with ``(q_ij - q_st) m_is m_jt != 0``, or None.

    Only nonzero entries of ``m`` are visited, in row-major order.
    """
    _check_pair(q, m)
    return violation_in(color_codes(q), m.rows)


def is_member(q: QMatrix, m: FieldMatrix) -> bool:
    """True iff ``m`` induces a graded automorphism of O_q(k^n)."""
    return first_violation(q, m) is None and m.is_invertible()


def satisfies_pair_equations(q: QMatrix, m: FieldMatrix) -> bool:
    """The two-equation form of relation preservation, checked independently.

    For all i < j and s < t::

        (q_ij - q_st) m_is m_jt == (1 - q_ij q_st) m_js m_it
        (q_ij - 1) m_is m_js == 0          (every s)

    Invertibility is not checked here.
    """
    _check_pair(q, m)
    n = q.n
    one = q.field.one
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            qij = q[i, j]
            for s in range(1, n + 1):
                if (qij - one) * m[i, s] * m[j, s]:
                    return False
                for t in range(s + 1, n + 1):
                    qst = q[s, t]
                    lhs = (qij - qst) * m[i, s] * m[j, t]
                    rhs = (one - qij * qst) * m[j, s] * m[i, t]
                    if lhs != rhs:
                        return False
    return True


# skeleton permutations --------------------------------------------------------


def _support(m: FieldMatrix) -> list[list[int]]:
    """For each column c, the ascending rows r with m[r, c] != 0 (0-based)."""
    n = m.n
    return [[r for r in range(n) if m.rows[r][c]] for c in range(n)]


def _has_perfect_matching(adj: list[list[int]], cols: list[int], free_rows: set[int]) -> bool:
    """Kuhn's augmenting-path matching of ``cols`` into ``free_rows``."""
    match: dict[int, int] = {}

    def augment(c, seen):
        for r in adj[c]:
            if r in free_rows and r not in seen:
                seen.add(r)
                if r not in match or augment(match[r], seen):
                    match[r] = c
                    return True
        return False

    return all(augment(c, set()) for c in cols)


def skeleton_any(m: FieldMatrix) -> Permutation:
    """The lexicographically least pi with m[pi(i), i] != 0 for every i.

    Columns are fixed in order, each taking the least row that still admits a
    perfect matching of the remaining columns.
    """
    if not m.is_invertible():
        raise NotInvertibleError("skeleton permutations need an invertible matrix")
    n = m.n
    adj = _support(m)
    free = set(range(n))
    images = []
    for c in range(n):
        for r in adj[c]:
            if r not in free:
                continue
            free.discard(r)
            if _has_perfect_matching(adj, list(range(c + 1, n)), free):
                images.append(r + 1)
                break
            free.add(r)
        else:  # pragma: no cover - an invertible matrix always has a matching
            raise AssertionError("no perfect matching on an invertible matrix")
    return Permutation(tuple(images))


def iter_skeletons(m: FieldMatrix):
    """Yield every skeleton permutation of ``m`` in lexicographic order."""
    n = m.n
    adj = _support(m)
    images = [0] * n
    used = [False] * n

    def extend(c):
        if c == n:
            yield Permutation._raw(tuple(images))
            return
        for r in adj[c]:
            if not used[r]:
                used[r] = True
                images[c] = r + 1
                yield from extend(c + 1)
                used[r] = False

    return extend(0)


def skeleton_all(m: FieldMatrix, cap: int = SKELETON_CAP) -> list[Permutation]:
    """Every skeleton permutation of ``m`` in lexicographic order, at most ``cap``."""
    if cap < 1:
        raise ValueError("cap must be positive")
    if not m.is_invertible():
        raise NotInvertibleError("skeleton permutations need an invertible matrix")
    out = []
    for pi in iter_skeletons(m):
        if len(out) >= cap:
            raise CapExceededError(f"more than {cap} skeleton permutations")
        out.append(pi)
    return out


def is_skeleton(m: FieldMatrix, pi: Permutation) -> bool:
    return all(m[pi(i), i] for i in range(1, m.n + 1))


# the block-diagonal subgroup --------------------------------------------------


def im_phi_member(q: QMatrix, blocks: BlockPartition | None, m: FieldMatrix) -> bool:
    """True iff ``m`` is invertible and zero off the block-diagonal pattern."""
    blocks = blocks or q.block_decomposition()
    b = blocks.block_of
    for i, j in m.nonzero_positions():
        if b[i] != b[j]:
            return False
    return m.is_invertible()


def phi_embed(blocks: BlockPartition, gl_blocks) -> FieldMatrix:
    """Place ``gl_blocks[k]`` on the rows and columns of the k-th block."""
    gl_blocks = list(gl_blocks)
    if len(gl_blocks) != blocks.m:
        raise SchemaError(f"expected {blocks.m} blocks, got {len(gl_blocks)}")
    field = gl_blocks[0].field
    n = blocks.n
    out = [[field.zero] * n for _ in range(n)]
    for idx, M in zip(blocks.blocks, gl_blocks):
        if M.n != len(idx):
            raise SchemaError(f"block {list(idx)} needs a {len(idx)}x{len(idx)} matrix, got {M.n}x{M.n}")
        if M.field != field:
            raise FieldError("blocks live in different fields")
        if not M.is_invertible():
            raise NotInvertibleError(f"block {list(idx)} is singular")
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                out[i - 1][j - 1] = M.rows[a][b]
    return FieldMatrix(field, out)


def decompose_member(
    q: QMatrix,
    blocks: BlockPartition | None,
    m: FieldMatrix,
    invariant: PermGroup | None = None,
) -> tuple[Permutation, FieldMatrix]:
    """Split a member as ``m == r_sigma @ g`` with ``g`` block-diagonal.

    ``sigma`` is the least skeleton of ``m`` (a compatible permutation).  When
    the invariant subgroup is supplied, ``sigma`` is replaced by the least
    element of its coset ``sigma * I`` and ``g`` adjusted to match.
    """
    if not is_member(q, m):
        raise PreconditionError("matrix is not a graded automorphism of this algebra")
    sigma = skeleton_any(m)
    if invariant is not None:
        sigma = invariant.coset_min(sigma)
    g = permutation_matrix(sigma.inverse(), m.field) @ m
    return sigma, g
