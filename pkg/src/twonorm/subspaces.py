"""Subspaces, weighted complements and oblique projections.

Subspaces are stored through Euclidean-orthonormal bases (columns of an
``n x r`` matrix).  All comparisons between subspaces go through principal
angles computed from singular values of cross-Gram matrices; no other
comparison primitive is used anywhere in the package.

The central construction is the oblique projection ``P`` with a prescribed
range ``S`` and nullspace ``T`` for a pair splitting the space.  Its
plus-adjoint is itself an oblique projection, onto the weighted complement
of ``T`` along the weighted complement of ``S``; the constructor builds
that second projection independently and cross-checks the two routes.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .errors import (
    BiorthogonalityViolated,
    DependentInput,
    DimMismatch,
    NotComplementary,
)
from .space import Operator, WeightedSpace, as_matrix, _as_vector, _spec_norm

__all__ = [
    "Subspace",
    "ProjPair",
    "CompanionReport",
    "NullspacePlusReport",
    "span",
    "complement_L",
    "direct_sum_gap",
    "oblique_projection",
    "is_proper_companion",
    "gram_schmidt_L",
    "finite_rank_proper_projection",
    "nullspace_plus_check",
    "principal_angles",
    "max_principal_angle",
    "subspace_contained",
    "subspace_equal",
]

TOL_RANK = 1e-10
TOL_GAP = 1e-10
TOL_ANGLE = 1e-8
TOL_BIO = 1e-8


@dataclass(frozen=True)
class Subspace:
    """A subspace held as a Euclidean-orthonormal basis.

    ``basis`` has shape ``(n, r)``; ``r == 0`` encodes the zero subspace.
    """

    basis: np.ndarray
    space: WeightedSpace

    def __post_init__(self):
        b = np.array(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != self.space.dim:
            raise DimMismatch(
                f"basis must be {self.space.dim} x r, got shape {b.shape}"
            )
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def rank(self):
        return self.basis.shape[1]


@dataclass(frozen=True)
class ProjPair:
    """An idempotent together with its plus-adjoint and the two subspaces
    it is built from (range and nullspace of ``p``)."""

    p: Operator
    p_plus: Operator
    range_sub: Subspace
    null_sub: Subspace


@dataclass(frozen=True)
class CompanionReport:
    """Splitting quality of a subspace pair and of its weighted complements."""

    gap: float
    complement_gap: float
    ok: bool


@dataclass(frozen=True)
class NullspacePlusReport:
    """Principal-angle residuals of the kernel/range duality under the
    plus-adjoint."""

    null_angle: float
    range_angle: float
    ok: bool


def _vectors_as_columns(ws, vectors):
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        cols = np.array(vectors, dtype=complex)
        if cols.shape[0] != ws.dim:
            raise DimMismatch(
                f"column stack must have height {ws.dim}, got {cols.shape[0]}"
            )
        return cols
    vecs = [_as_vector(v, ws.dim, "vector") for v in vectors]
    if not vecs:
        return np.zeros((ws.dim, 0), dtype=complex)
    return np.stack(vecs, axis=1)


def span(ws, vectors, tol_rank=TOL_RANK):
    """Orthonormalized span of a family of vectors.

    Rank decisions truncate singular values below ``tol_rank`` relative to
    the largest one.  An empty family yields the zero subspace.

    Parameters
    ----------
    ws : WeightedSpace
    vectors : sequence of vectors or (n, m) ndarray
    tol_rank : float

    Returns
    -------
    Subspace
    """
    cols = _vectors_as_columns(ws, vectors)
    if cols.shape[1] == 0:
        return Subspace(cols, ws)
    u, s, _ = la.svd(cols, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return Subspace(np.zeros((ws.dim, 0), dtype=complex), ws)
    r = int(np.sum(s > tol_rank * s[0]))
    return Subspace(u[:, :r], ws)


def _from_orthonormal(ws, basis):
    return Subspace(np.asarray(basis, dtype=complex), ws)


def complement_L(ws, s):
    """Weighted orthogonal complement of a subspace, inside the space.

    A vector is weighted-orthogonal to ``S`` exactly when its image under
    the weight is Euclidean-orthogonal to ``S``, so the complement is the
    inverse weight applied to the Euclidean complement, re-orthonormalized.
    Its dimension is ``n - dim S``.
    """
    n = ws.dim
    if s.rank == 0:
        return _from_orthonormal(ws, np.eye(n))
    if s.rank == n:
        return _from_orthonormal(ws, np.zeros((n, 0), dtype=complex))
    ortho = la.null_space(s.basis.conj().T)
    raw = ws.solve_weight(ortho)
    return _from_orthonormal(ws, la.orth(raw))


def direct_sum_gap(s, t):
    """Smallest singular value of the stacked bases ``[B_S | B_T]``.

    Zero when the dimensions do not add up to the ambient dimension; a
    positive gap certifies that the pair splits the space.
    """
    n = s.space.dim
    if s.rank + t.rank != n:
        return 0.0
    m = np.hstack([s.basis, t.basis])
    return float(la.svdvals(m)[-1])


def principal_angles(s1, s2):
    """Principal angles between two subspaces, largest first.

    Computed from singular values of cross-Gram matrices of the orthonormal
    bases, with the sine-based refinement for small angles.  An empty array
    is returned when either subspace is zero.
    """
    if s1.rank == 0 or s2.rank == 0:
        return np.zeros(0)
    return la.subspace_angles(s1.basis, s2.basis)


def max_principal_angle(s1, s2):
    ang = principal_angles(s1, s2)
    return float(ang.max()) if ang.size else 0.0


def subspace_contained(inner, outer, tol=TOL_ANGLE):
    """True when ``inner`` sits inside ``outer`` at the angle tolerance."""
    if inner.rank == 0:
        return True
    if inner.rank > outer.rank:
        return False
    return max_principal_angle(inner, outer) <= tol


def subspace_equal(s1, s2, tol=TOL_ANGLE):
    """Equality as subspaces: same dimension, all principal angles small."""
    if s1.rank != s2.rank:
        return False
    return max_principal_angle(s1, s2) <= tol


def _validate_idempotent_pair(ws, p, p_plus, range_sub, null_sub):
    """Internal consistency checks for a freshly built projection pair.

    Tolerances are scaled by the size of the projection and the weight
    conditioning so that legitimately tilted pairs are not rejected; the
    unscaled contract figures are enforced by the test suites on their
    random ensembles.
    """
    n = ws.dim
    scale = max(1.0, _spec_norm(p)) ** 2 * max(1.0, ws.weight_cond)
    if _spec_norm(p @ p - p) > 1e-10 * scale:
        raise ArithmeticError("projection failed the idempotency check")
    if _spec_norm(p_plus @ p_plus - p_plus) > 1e-10 * scale:
        raise ArithmeticError("plus-adjoint failed the idempotency check")
    if _spec_norm(ws.plus_matrix(p) - p_plus) > 1e-9 * scale:
        raise ArithmeticError("stored plus-adjoint disagrees with the weight")
    rank = range_sub.rank
    if rank not in (0, n):
        u, s, vh = la.svd(p)
        got = _from_orthonormal(ws, u[:, :rank])
        if not subspace_equal(got, range_sub, TOL_ANGLE):
            raise ArithmeticError("projection range drifted from its subspace")
        ker = _from_orthonormal(ws, vh[rank:].conj().T)
        if not subspace_equal(ker, null_sub, TOL_ANGLE):
            raise ArithmeticError("projection kernel drifted from its subspace")


def _block_solve_projection(ws, s, t):
    """Idempotent with range ``s`` and nullspace ``t`` by a block solve."""
    n = ws.dim
    m = np.hstack([s.basis, t.basis])
    inv = la.inv(m)
    return s.basis @ inv[: s.rank], m


def oblique_projection(ws, s, t, tol_gap=TOL_GAP):
    """Projection with prescribed range and nullspace, plus its adjoint.

    The matrix is obtained by solving against the stacked bases, never by a
    difference-of-projections formula (those identities are verification
    targets elsewhere, not construction routes).  The plus-adjoint is
    cross-checked against the independently constructed projection onto the
    weighted complement of ``t`` along the weighted complement of ``s``.

    Parameters
    ----------
    ws : WeightedSpace
    s, t : Subspace
        Must split the space: dimensions adding to ``n`` and a stacked-basis
        gap above ``tol_gap``.

    Returns
    -------
    ProjPair

    Raises
    ------
    NotComplementary
        If the pair does not split the space at the gap tolerance.
    """
    gap = direct_sum_gap(s, t)
    if gap <= tol_gap:
        raise NotComplementary(
            f"pair does not split the space (gap {gap:.3e} <= {tol_gap:.0e})"
        )
    p, m = _block_solve_projection(ws, s, t)
    p_plus = ws.plus_matrix(p)

    s_comp = complement_L(ws, t)
    t_comp = complement_L(ws, s)
    p_indep, m2 = _block_solve_projection(ws, s_comp, t_comp)
    kappa = float(np.linalg.cond(m))
    cross_tol = 1e-9 * max(1.0, kappa ** 2) * max(1.0, ws.weight_cond)
    cross = _spec_norm(p_plus - p_indep)
    if cross > cross_tol:
        raise ArithmeticError(
            f"plus-adjoint routes disagree ({cross:.3e} > {cross_tol:.3e})"
        )
    _validate_idempotent_pair(ws, p, p_plus, s, t)
    return ProjPair(Operator(p, ws), Operator(p_plus, ws), s, t)


def is_proper_companion(ws, s, t, tol_gap=TOL_GAP):
    """Whether a pair splits the space together with its weighted complements.

    Both the pair itself and the complement pair must have a positive
    stacked-basis gap; this is the finite-dimensional form of the companion
    relation behind every projection built here.
    """
    gap = direct_sum_gap(s, t)
    comp_gap = direct_sum_gap(complement_L(ws, t), complement_L(ws, s))
    ok = gap > tol_gap and comp_gap > tol_gap
    return CompanionReport(gap=gap, complement_gap=comp_gap, ok=bool(ok))


def gram_schmidt_L(ws, vectors, tol_rank=TOL_RANK):
    """Orthonormalize vectors in the weighted inner product.

    Modified Gram-Schmidt with one full reorthogonalization pass.  The
    output columns satisfy ``<q_i, q_j>_L = delta_ij``.

    Raises
    ------
    DependentInput
        If some vector loses all but ``tol_rank`` of its weighted length to
        the span of its predecessors.
    """
    cols = _vectors_as_columns(ws, vectors)
    out = []
    for j in range(cols.shape[1]):
        v = cols[:, j].copy()
        original = ws.lnorm_vec(v)
        if original <= tol_rank:
            raise DependentInput(f"vector {j} has negligible weighted length")
        for _ in range(2):
            for q in out:
                v = v - ws.inner(v, q) * q
        norm = ws.lnorm_vec(v)
        if norm <= tol_rank * original:
            raise DependentInput(
                f"vector {j} is dependent on its predecessors"
            )
        out.append(v / norm)
    return np.stack(out, axis=1) if out else np.zeros((ws.dim, 0), complex)


def finite_rank_proper_projection(ws, f_list, h_list, tol_bio=TOL_BIO):
    """Finite-rank idempotent ``x -> sum_i <x, h_i>_L f_i``.

    The families must be weighted-biorthogonal (``<f_i, h_j>_L = delta_ij``);
    the plus-adjoint is then the same construction with the families
    swapped, which is cross-checked against the weight route.  The range is
    the span of the ``f_i`` and the nullspace is the weighted complement of
    the span of the ``h_i``.

    Returns
    -------
    ProjPair

    Raises
    ------
    BiorthogonalityViolated
        If the cross-Gram of the families is not the identity at ``tol_bio``.
    """
    f = _vectors_as_columns(ws, f_list)
    h = _vectors_as_columns(ws, h_list)
    if f.shape[1] != h.shape[1]:
        raise DimMismatch("the two families must have equal length")
    m = f.shape[1]
    gram = h.conj().T @ ws.weight @ f
    dev = np.abs(gram - np.eye(m)).max() if m else 0.0
    if dev > tol_bio:
        raise BiorthogonalityViolated(
            f"cross-Gram deviates from identity by {dev:.3e}"
        )
    p = f @ (h.conj().T @ ws.weight)
    p_plus = h @ (f.conj().T @ ws.weight)
    cross = _spec_norm(ws.plus_matrix(p) - p_plus)
    scale = max(1.0, _spec_norm(p)) * max(1.0, ws.weight_cond)
    if cross > 1e-9 * scale:
        raise ArithmeticError(
            f"swapped-family adjoint disagrees with the weight ({cross:.3e})"
        )
    range_sub = span(ws, f)
    null_sub = complement_L(ws, span(ws, h))
    _validate_idempotent_pair(ws, p, p_plus, range_sub, null_sub)
    return ProjPair(Operator(p, ws), Operator(p_plus, ws), range_sub, null_sub)


def nullspace_plus_check(ws, t, tol=TOL_ANGLE):
    """Kernel/range duality of the plus-adjoint, in principal angles.

    Checks that the kernel of ``T+`` is the weighted complement of the range
    of ``T`` and that the range of ``T+`` is the weighted complement of the
    kernel of ``T``.  Reports the largest principal angle of each pair.
    """
    m = as_matrix(t, ws)
    mp = ws.plus_matrix(m)

    def _range(mat):
        return span(ws, mat)

    def _null(mat):
        basis = la.null_space(mat)
        return _from_orthonormal(ws, basis)

    lhs1 = _null(mp)
    rhs1 = complement_L(ws, _range(m))
    ang1 = max_principal_angle(lhs1, rhs1) if lhs1.rank == rhs1.rank else np.pi
    lhs2 = _range(mp)
    rhs2 = complement_L(ws, _null(m))
    ang2 = max_principal_angle(lhs2, rhs2) if lhs2.rank == rhs2.rank else np.pi
    return NullspacePlusReport(
        null_angle=float(ang1),
        range_angle=float(ang2),
        ok=bool(ang1 <= tol and ang2 <= tol),
    )
