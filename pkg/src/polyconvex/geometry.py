"""Symplectic form, Lagrangian frames, and unitary reduction to R^n.

C^n carries the standard symplectic form w0 = sum dx_j ^ dy_j, i.e.
w0(u, v) = Im <u, v> with the Hermitian inner product <u, v> = sum conj(u_j) v_j.
A frame of n real-independent vectors on which w0 vanishes pairwise spans a
Lagrangian subspace, and some unitary maps that subspace onto R^n.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateFrame, DimensionMismatch, NotLagrangian

TOL_SYMPL = 1e-10
TOL_UNITARY = 1e-10
_RANK_RTOL = 1e-8


def _as_vector(u):
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 1 or u.size < 1:
        raise DimensionMismatch("expected a 1-d complex vector")
    if not np.all(np.isfinite(u.view(np.float64))):
        raise DimensionMismatch("vector entries must be finite")
    return u


def symplectic_form(u, v) -> float:
    """w0(u, v) = sum(Re u_j Im v_j - Im u_j Re v_j) = Im <u, v>."""
    u = _as_vector(u)
    v = _as_vector(v)
    if u.shape != v.shape:
        raise DimensionMismatch(f"dimension mismatch: {u.size} vs {v.size}")
    return float(np.imag(np.vdot(u, v)))


@dataclass(frozen=True)
class LagrangianFrame:
    """n vectors in C^n, stored as rows of ``basis``."""

    basis: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=np.complex128)
        if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
            raise DimensionMismatch("frame must consist of n vectors of dimension n")
        object.__setattr__(self, "basis", basis)

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]


@dataclass
class LagrangianDiagnostics:
    ok: bool
    independent: bool
    max_pairing: float
    violating_pair: tuple | None = None
    messages: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _real_rank_ok(basis: np.ndarray) -> bool:
    # real-linear independence: rank of the 2n x n real coordinate matrix
    real_mat = np.vstack([basis.real.T, basis.imag.T])
    sv = np.linalg.svd(real_mat, compute_uv=False)
    return sv[-1] > _RANK_RTOL * sv[0]


def is_lagrangian(frame: LagrangianFrame, tol: float = TOL_SYMPL) -> LagrangianDiagnostics:
    """Check real independence and pairwise vanishing of w0 on the frame."""
    basis = frame.basis
    diag = LagrangianDiagnostics(ok=True, independent=True, max_pairing=0.0)
    if not _real_rank_ok(basis):
        diag.ok = False
        diag.independent = False
        diag.messages.append("frame is not real-linearly independent")
    gram = basis.conj() @ basis.T  # <v_j, v_k>
    pairing = np.abs(np.imag(gram))
    j, k = np.unravel_index(np.argmax(pairing), pairing.shape)
    diag.max_pairing = float(pairing[j, k])
    scale = max(1.0, float(np.abs(gram).max()))
    if diag.max_pairing > tol * scale:
        diag.ok = False
        diag.violating_pair = (int(j), int(k))
        diag.messages.append(
            f"w0(v{j}, v{k}) = {np.imag(gram[j, k]):.3e} exceeds tolerance"
        )
    return diag


def reduce_to_real(frame: LagrangianFrame, tol: float = TOL_UNITARY) -> np.ndarray:
    """Unitary T with T(span_R frame) = R^n.

    Modified Gram-Schmidt in the Hermitian inner product; on a Lagrangian
    frame the projection coefficients are real, so the orthonormalized frame
    stays inside the subspace and T = (frame matrix)* maps it to the standard
    real basis.
    """
    diag = is_lagrangian(frame, tol=max(tol, TOL_SYMPL))
    if not diag.independent:
        raise DegenerateFrame("frame has real rank < n")
    if not diag.ok:
        raise NotLagrangian("; ".join(diag.messages))
    q = frame.basis.astype(np.complex128).copy()
    n = q.shape[0]
    for j in range(n):
        for k in range(j):
            # coefficient is real up to tol since the frame is Lagrangian
            q[j] -= np.real(np.vdot(q[k], q[j])) * q[k]
        norm = np.linalg.norm(q[j])
        if norm < 1e-12:
            raise DegenerateFrame("frame collapsed during orthonormalization")
        q[j] /= norm
    # columns of q.T are the orthonormal frame; T is its adjoint
    return q.conj()
