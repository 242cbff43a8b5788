"""Compatibility of subspaces: margins, canonical projections, identities.

For a subspace ``S`` with companion ``T`` the operator ``C = P + P+ - I``
built from the oblique projection ``P`` onto ``S`` along ``T`` agrees with
its own plus-adjoint and has an invertible weighted extension.  Its inverse
turns the tilted projection into the canonical one: ``Q_S = C^{-1} P+`` is
the unique idempotent onto ``S`` that equals its plus-adjoint, and it
coincides with the restriction of the weighted-orthogonal projection.  The
smallest singular value of ``C`` serves as a quantitative compatibility
margin; it degrades along truncation families whose limiting subspace loses
compatibility.

The module also verifies, never assumes, the classical difference-of-
projections identities relating oblique and orthogonal projections, and it
provides the transport operator moving one companion onto another while
fixing the subspace.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .errors import IllConditionedWarning, NotIdempotent, RangeOverlap
from .space import Operator, as_matrix, opnorm, proper_norm, _spec_norm
from .subspaces import (
    Subspace,
    ProjPair,
    complement_L,
    max_principal_angle,
    oblique_projection,
    span,
    subspace_contained,
    subspace_equal,
    _from_orthonormal,
    _validate_idempotent_pair,
)

__all__ = [
    "CompatReport",
    "BuckholtzReport",
    "LemmaReport",
    "c_operator",
    "compat_projection",
    "compat_margin",
    "krein_check",
    "buckholtz_verify",
    "symm_identity_verify",
    "companion_transport",
    "companion_metric",
    "algebraic_lemma_check",
]

TOL_ANGLE = 1e-8


@dataclass(frozen=True)
class CompatReport:
    """Quantitative compatibility data for a subspace.

    ``margin_c`` is the smallest singular value of ``C = P + P+ - I`` in
    ambient coordinates (Frobenius coordinates under the trace tag);
    ``q_norm`` is the ambient operator norm of the canonical projection;
    ``residual_cross`` is the disagreement between the inverse-formula and
    direct constructions of that projection (None when the formula route
    was suppressed as ill-conditioned); ``is_compatible`` records margin
    positivity.
    """

    margin_c: float
    q_norm: float
    residual_cross: float | None
    is_compatible: bool

    def to_json_dict(self):
        return {
            "margin_c": self.margin_c,
            "q_norm": self.q_norm,
            "residual_cross": self.residual_cross,
            "is_compatible": self.is_compatible,
        }


@dataclass(frozen=True)
class BuckholtzReport:
    """Residuals of the difference-of-projections identities."""

    res_inverse: float
    res_projection: float
    res_symmetric: float
    kappa: float


@dataclass(frozen=True)
class LemmaReport:
    """Both sides of the kernel-sum / range-sum equivalence."""

    nullspace_sum_full: bool
    range_sum_matches: bool
    one_sided: bool
    agree: bool


def c_operator(ws, s, t):
    """The symmetrized splitting operator ``C = P + P+ - I``.

    ``P`` is the oblique projection onto ``s`` along ``t``.  The result
    agrees with its plus-adjoint up to rounding and is invertible whenever
    the pair splits the space.
    """
    pair = oblique_projection(ws, s, t)
    c = pair.p.matrix + pair.p_plus.matrix - np.eye(ws.dim)
    return Operator(c, ws)


def _lproj_matrix(ws, s):
    """Weighted-orthogonal projection onto ``s`` as a matrix on the space:
    ``B (B* A B)^{-1} B* A`` for an orthonormal basis ``B``."""
    if s.rank == 0:
        return np.zeros((ws.dim, ws.dim), dtype=complex)
    b = s.basis
    gram = b.conj().T @ ws.weight @ b
    return b @ la.solve(gram, b.conj().T @ ws.weight, assume_a="pos")


def _compat_data(ws, s, t):
    """Shared worker: canonical projection by two routes plus margin data."""
    if t is None:
        t = complement_L(ws, s)
    pair = oblique_projection(ws, s, t)
    n = ws.dim
    c = pair.p.matrix + pair.p_plus.matrix - np.eye(n)
    svals = la.svdvals(c)
    margin = float(svals[-1])
    q_direct = _lproj_matrix(ws, s)
    residual = None
    if margin < 1e-12 * svals[0]:
        warnings.warn(
            "splitting operator is numerically singular; using the direct "
            "projection route only",
            IllConditionedWarning,
            stacklevel=3,
        )
    else:
        q_formula = la.solve(c, pair.p_plus.matrix)
        residual = _spec_norm(q_formula - q_direct)
        kappa_c = float(svals[0] / svals[-1])
        agree_tol = 1e-9 * max(1.0, kappa_c) * max(1.0, ws.weight_cond)
        if residual > agree_tol:
            raise ArithmeticError(
                f"projection routes disagree ({residual:.3e} > {agree_tol:.3e})"
            )
    return pair, t, c, margin, q_direct, residual


def compat_projection(ws, s, t=None):
    """Canonical plus-self-adjoint projection onto a subspace.

    Built two ways: through the inverse of the splitting operator applied
    to the adjoint of the oblique projection, and directly from the basis
    and the weight.  The two must agree; the direct route is returned.
    When ``t`` is omitted the weighted complement of ``s`` is used, in which
    case the construction reduces to the weighted-orthogonal projection.

    Returns
    -------
    ProjPair
        With range ``s`` and nullspace the weighted complement of ``s``.
    """
    _, _, _, _, q, _ = _compat_data(ws, s, t)
    q_plus = ws.plus_matrix(q)
    null_sub = complement_L(ws, s)
    _validate_idempotent_pair(ws, q, q_plus, s, null_sub)
    return ProjPair(Operator(q, ws), Operator(q_plus, ws), s, null_sub)


def compat_margin(ws, s, t=None):
    """Compatibility margin and canonical-projection norm for a subspace.

    Returns
    -------
    CompatReport
    """
    _, _, _, margin, q, residual = _compat_data(ws, s, t)
    return CompatReport(
        margin_c=margin,
        q_norm=opnorm(ws, q, "E"),
        residual_cross=residual,
        is_compatible=bool(margin > 0.0),
    )


def krein_check(ws, s, q, tol=TOL_ANGLE):
    """Whether an idempotent has range ``s`` and kernel inside the weighted
    complement of ``s``.

    This pair of conditions singles out the canonical projection among all
    idempotents onto ``s``.

    Raises
    ------
    NotIdempotent
        If ``q`` is not a projection at tolerance ``1e-8`` (scaled by its
        squared norm).
    """
    m = as_matrix(q, ws)
    scale = max(1.0, _spec_norm(m)) ** 2
    if _spec_norm(m @ m - m) > 1e-8 * scale:
        raise NotIdempotent("candidate matrix is not a projection")
    u, sv, vh = la.svd(m)
    rank = int(np.sum(sv > 0.5))
    rng = _from_orthonormal(ws, u[:, :rank])
    ker = _from_orthonormal(ws, vh[rank:].conj().T)
    if not subspace_equal(rng, s, tol):
        return False
    return subspace_contained(ker, complement_L(ws, s), tol)


def buckholtz_verify(ws, s, t):
    """Residuals of the difference-of-projections identities.

    With ``P`` the oblique projection onto ``s`` along ``t`` and ``P_S,
    P_T`` the weighted-orthogonal projections onto the two subspaces, the
    identities under test are

    * ``(P_S - P_T)^{-1} = P + P+ - I``,
    * ``P = P_S (P_S - P_T)^{-1}``,
    * ``P_S - P_T = (2P - I)(P_S + P_T)``.

    All three are computed from independently constructed ingredients and
    reported as spectral-norm residuals together with the stacked-basis
    condition number.
    """
    pair = oblique_projection(ws, s, t)
    n = ws.dim
    ps = _lproj_matrix(ws, s)
    pt = _lproj_matrix(ws, t)
    diff = ps - pt
    c = pair.p.matrix + pair.p_plus.matrix - np.eye(n)
    res1 = _spec_norm(diff @ c - np.eye(n))
    res2 = _spec_norm(ps @ la.inv(diff) - pair.p.matrix)
    res3 = _spec_norm(diff - (2.0 * pair.p.matrix - np.eye(n)) @ (ps + pt))
    m = np.hstack([s.basis, t.basis])
    return BuckholtzReport(
        res_inverse=res1,
        res_projection=res2,
        res_symmetric=res3,
        kappa=float(np.linalg.cond(m)),
    )


def symm_identity_verify(ws, s, t):
    """Residual of ``P_S - P_T = (2P - I)(P_S + P_T)`` alone."""
    return buckholtz_verify(ws, s, t).res_symmetric


def companion_transport(ws, s, t, t1):
    """Invertible operator fixing ``s`` pointwise and carrying ``t`` to ``t1``.

    Both ``t`` and ``t1`` must be companions of ``s``.  The operator is

        ``G = P_{s//t} + P_{t1//s} P_{t//s}``,

    whose plus-adjoint is the analogous transport between the weighted
    complements; that displayed form is verified against the weight route
    before returning.

    Returns
    -------
    Operator
    """
    pair_st = oblique_projection(ws, s, t)
    pair_t1s = oblique_projection(ws, t1, s)
    pair_ts = oblique_projection(ws, t, s)
    g = pair_st.p.matrix + pair_t1s.p.matrix @ pair_ts.p.matrix
    g_plus_formula = (
        pair_st.p_plus.matrix
        + pair_ts.p_plus.matrix @ pair_t1s.p_plus.matrix
    )
    scale = max(1.0, _spec_norm(g)) * max(1.0, ws.weight_cond)
    res = _spec_norm(ws.plus_matrix(g) - g_plus_formula)
    if res > 1e-9 * scale:
        raise ArithmeticError(
            f"transport adjoint disagrees with its closed form ({res:.3e})"
        )
    if s.rank and not subspace_equal(span(ws, g @ s.basis), s, TOL_ANGLE):
        raise ArithmeticError("transport moved the fixed subspace")
    if t.rank and not subspace_equal(span(ws, g @ t.basis), t1, TOL_ANGLE):
        raise ArithmeticError("transport missed the target companion")
    if la.svdvals(g)[-1] <= 0.0:
        raise ArithmeticError("transport operator is singular")
    return Operator(g, ws)


def companion_metric(ws, s, t1, t2):
    """Distance between two companions of ``s``: the proper norm of the
    difference of the oblique projections onto them along ``s``."""
    pair1 = oblique_projection(ws, t1, s)
    pair2 = oblique_projection(ws, t2, s)
    return proper_norm(ws, pair1.p.matrix - pair2.p.matrix)


def algebraic_lemma_check(ws, t1, t2):
    """Kernel-sum versus range-sum equivalence for operators with disjoint
    ranges.

    For operators whose ranges meet only at zero, the kernels summing to
    the whole space is equivalent to ``R(T1) + R(T2) = R(T1 + T2)``, and
    the one-sided inclusion ``R(T1) <= R(T1 + T2)`` is equivalent to the
    same equality.  All three conditions are evaluated by rank counts and
    reported; ``agree`` records whether they coincide.

    Raises
    ------
    RangeOverlap
        If the ranges of the two operators overlap nontrivially.
    """
    m1 = as_matrix(t1, ws)
    m2 = as_matrix(t2, ws)
    n = ws.dim
    r1 = int(np.linalg.matrix_rank(m1))
    r2 = int(np.linalg.matrix_rank(m2))
    r_stack = int(np.linalg.matrix_rank(np.hstack([m1, m2])))
    if r_stack < r1 + r2:
        raise RangeOverlap(
            f"ranges share a subspace of dimension {r1 + r2 - r_stack}"
        )
    null1 = la.null_space(m1)
    null2 = la.null_space(m2)
    null_rank = int(np.linalg.matrix_rank(np.hstack([null1, null2]))) \
        if null1.size + null2.size else 0
    lhs = null_rank == n
    r_sum = int(np.linalg.matrix_rank(m1 + m2))
    rhs = r_sum == r1 + r2
    one_sided = int(np.linalg.matrix_rank(np.hstack([m1 + m2, m1]))) == r_sum
    return LemmaReport(
        nullspace_sum_full=bool(lhs),
        range_sum_matches=bool(rhs),
        one_sided=bool(one_sided),
        agree=bool(lhs == rhs == one_sided),
    )
