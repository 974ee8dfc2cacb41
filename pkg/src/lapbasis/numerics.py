"""Sparse symmetric solvers and the shift-invert Lanczos eigensolver.

Everything downstream (bases, metrics, seeds) reduces to three primitives:
SPD solves, shifted complex-symmetric solves, and the smallest generalized
eigenpairs of a stiffness/mass pencil.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.linalg import eigh, eigh_tridiagonal, solve_triangular
from scipy.sparse import csgraph

from .errors import (
    FactorizationFailed,
    NearSingularShift,
    NotConverged,
    SingularSystem,
)


@dataclass(frozen=True)
class SparseSymMatrix:
    """A sparse matrix with a symmetry/definiteness tag.

    kind is one of "pd", "psd", "indefinite", or "general" (the last for
    non-symmetric operators such as the mean-value scheme, which are
    excluded from the eigen path).
    """

    data: sp.spmatrix
    kind: str = "psd"

    def __post_init__(self):
        if self.kind not in ("pd", "psd", "indefinite", "general"):
            raise ValueError(f"unknown matrix kind {self.kind!r}")

    @property
    def shape(self):
        return self.data.shape


def matrix_data(A):
    """Underlying scipy matrix of a SparseSymMatrix or raw sparse/array."""
    if isinstance(A, SparseSymMatrix):
        return A.data
    return A


@dataclass
class EigenSystem:
    """The k smallest generalized eigenpairs of (L, B), B-orthonormal.

    values are sorted ascending; vectors[:, i] belongs to values[i] and the
    set satisfies X^T B X = I.
    """

    values: np.ndarray
    vectors: np.ndarray
    L: object = field(repr=False, default=None)
    B: object = field(repr=False, default=None)

    @property
    def k(self):
        return len(self.values)


def component_nullspace(L, B):
    """B-orthonormal kernel basis of L built from connected components.

    Candidate vectors are the indicator functions of the components of L's
    sparsity graph; only candidates that L actually annihilates are kept
    (a screened operator has the same sparsity but no kernel).  Returns an
    (n, q) array, possibly with q = 0.
    """
    Lm = matrix_data(L).tocsr()
    Bm = matrix_data(B)
    n = Lm.shape[0]
    ncomp, labels = csgraph.connected_components(Lm, directed=False)
    scale = np.abs(Lm).sum(axis=1).max()
    vecs = []
    for c in range(ncomp):
        v = (labels == c).astype(float)
        if np.linalg.norm(Lm @ v) <= 1e-10 * scale * np.linalg.norm(v):
            vecs.append(v / np.sqrt(v @ (Bm @ v)))
    if not vecs:
        return np.zeros((n, 0))
    return np.column_stack(vecs)


# ---------------------------------------------------------------------------
# linear solvers


def solve_spd(A, b, tol=1e-10, nullspace=None):
    """Solve A x = b for symmetric positive (semi-)definite A.

    Jacobi-preconditioned conjugate gradients with an iteration cap of 10n;
    falls back to a sparse direct factorisation when CG stagnates.  For PSD
    systems pass ``nullspace`` (columns spanning ker A, Euclidean-orthonormal
    or close to it); the right-hand side and the iterates are projected onto
    the range and the returned solution is orthogonal to the kernel.
    """
    if isinstance(A, SparseSymMatrix) and A.kind == "general":
        raise ValueError("solve_spd requires a symmetric operator")
    Am = matrix_data(A).tocsr()
    b = np.asarray(b, dtype=float)
    n = Am.shape[0]

    Q = None
    if nullspace is not None and nullspace.shape[1] > 0:
        # Euclidean orthonormal basis; range(A) is its orthogonal complement
        Q, _ = np.linalg.qr(nullspace)
        b = b - Q @ (Q.T @ b)

    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return np.zeros(n)

    d = Am.diagonal()
    if np.any(d <= 0):
        raise SingularSystem("non-positive diagonal entry in SPD solve")
    M = spla.LinearOperator((n, n), matvec=lambda v: v / d)

    if Q is None:
        op = Am
    else:
        def projected_matvec(v):
            v = v - Q @ (Q.T @ v)
            w = Am @ v
            return w - Q @ (Q.T @ w)

        op = spla.LinearOperator((n, n), matvec=projected_matvec)

    x, info = spla.cg(op, b, rtol=tol, atol=0.0, maxiter=10 * n, M=M)
    if info == 0:
        if Q is not None:
            x = x - Q @ (Q.T @ x)
        return x

    # CG stagnated; direct factorisation (kernel handled by pinning one
    # row/column per kernel vector, which leaves an SPD submatrix)
    keep = np.ones(n, dtype=bool)
    if Q is not None:
        for col in Q.T:
            keep[np.argmax(np.abs(col))] = False
    try:
        lu = spla.splu(Am[keep][:, keep].tocsc())
        xr = lu.solve(b[keep])
    except RuntimeError as exc:
        raise SingularSystem(f"direct factorisation failed: {exc}") from exc
    x = np.zeros(n)
    x[keep] = xr
    if Q is not None:
        x = x - Q @ (Q.T @ x)
    resid = np.linalg.norm(Am @ x - b if Q is None else projected_matvec(x) - b)
    if not np.isfinite(resid) or resid > max(tol, 1e-8) * bnorm:
        raise NotConverged(
            f"SPD solve residual {resid / bnorm:.2e} above tolerance"
        )
    return x


def shifted_factor(B, L, beta, tol=1e-10):
    """Factorise (B + beta L) once; returns a solver closure rhs -> g.

    Complex shifts give complex symmetric (non-Hermitian) systems; these are
    solved by sparse LU with iterative refinement.  Raises NearSingularShift
    when the factorisation looks numerically singular (estimated condition
    above 1e14); the closure raises NotConverged when refinement stalls.
    """
    Bm = matrix_data(B)
    Lm = matrix_data(L)
    dtype = complex if np.iscomplexobj(np.asarray(beta)) else float
    M = (Bm + beta * Lm).astype(dtype).tocsc() if beta != 0 else Bm.astype(float).tocsc()
    try:
        lu = spla.splu(M)
    except RuntimeError as exc:
        raise FactorizationFailed(f"shifted factorisation failed: {exc}") from exc

    u = np.abs(lu.U.diagonal())
    if u.min() == 0.0 or u.max() / u.min() > 1e14:
        raise NearSingularShift(
            f"estimated condition {u.max() / max(u.min(), 1e-300):.1e} "
            "for shift beta=" + repr(beta)
        )

    def solve(rhs):
        b = np.asarray(rhs).astype(dtype)
        bnorm = np.linalg.norm(b)
        if bnorm == 0.0:
            return np.zeros_like(b, dtype=dtype)
        x = lu.solve(b)
        for _ in range(3):
            r = b - M @ x
            if np.linalg.norm(r) <= tol * bnorm:
                break
            x = x + lu.solve(r)
        else:
            rel = np.linalg.norm(b - M @ x) / bnorm
            if rel > tol:
                raise NotConverged(f"shifted solve residual {rel:.2e}")
        return x

    return solve


def solve_shifted(B, L, beta, rhs, tol=1e-10):
    """Solve (B + beta L) g = rhs for a real or complex shift beta."""
    return shifted_factor(B, L, beta, tol)(rhs).astype(complex)


# ---------------------------------------------------------------------------
# eigensolver


def _tridiag_eigs(a, b):
    """Eigen-decomposition of a symmetric tridiagonal matrix.

    The fast LAPACK driver can fail on block-split matrices with tightly
    clustered values (breakdown restarts insert zero off-diagonals); fall
    back to a dense solve, which is cheap at Krylov sizes.
    """
    try:
        return eigh_tridiagonal(a, b)
    except np.linalg.LinAlgError:
        T = np.diag(a)
        if len(b):
            T += np.diag(b, 1) + np.diag(b, -1)
        return eigh(T)


def smallest_eigenpairs(L, B, k, sigma=-1e-8, tol=1e-10, seed=0):
    """The k algebraically smallest generalized eigenpairs of L x = lam B x.

    Shift-invert Lanczos in the B-inner product with full
    reorthogonalisation.  The kernel of L (constants per connected
    component) is deflated analytically so the Krylov runs never mix the
    near-infinite shift-inverted kernel with the finite spectrum.  Restarts
    continue until the k smallest locked values are certified: a fresh
    deflated run finds nothing below the current k-th value.  A final
    inverse-iteration + Rayleigh-Ritz pass polishes the non-kernel block.

    tol is the relative Ritz-residual threshold for locking a pair.
    """
    Lm = matrix_data(L).tocsr()
    Bm = matrix_data(B).tocsr()
    n = Lm.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    rng = np.random.default_rng(seed)

    A = (Lm - sigma * Bm).tocsc()
    try:
        lu = spla.splu(A)
    except RuntimeError as exc:
        raise FactorizationFailed(f"shift factorisation failed: {exc}") from exc

    def solve(r):
        # the factorised matrix is nearly singular (kernel of L); one step
        # of iterative refinement recovers the lost digits
        y = lu.solve(r)
        return y + lu.solve(r - A @ y)

    kernel = component_nullspace(Lm, Bm)
    locked_vecs = [kernel[:, i] for i in range(kernel.shape[1])]
    locked_vals = [0.0] * len(locked_vecs)

    if k <= len(locked_vals):
        X = np.column_stack(locked_vecs[:k])
        return EigenSystem(np.zeros(k), X, L, B)

    def deflate(w):
        for x in locked_vecs:
            w = w - x * (x @ (Bm @ w))
        return w

    def run_once(m_max):
        """One deflated Lanczos run; returns converged (value, vector)s."""
        if m_max <= 0:
            return []
        v = deflate(rng.standard_normal(n))
        nv = np.sqrt(v @ (Bm @ v))
        if nv < 1e-14:
            return []
        Q = np.zeros((n, m_max))
        alphas = np.zeros(m_max)
        betas = np.zeros(m_max)
        Q[:, 0] = v / nv
        j = 0
        b_last = 0.0
        while j < m_max:
            w = solve(Bm @ Q[:, j])
            a = w @ (Bm @ Q[:, j])
            alphas[j] = a
            w = w - a * Q[:, j]
            if j > 0:
                w = w - betas[j - 1] * Q[:, j - 1]
            # full reorthogonalisation, twice, against the run and the locks
            for _ in range(2):
                w = w - Q[:, : j + 1] @ (Q[:, : j + 1].T @ (Bm @ w))
                w = deflate(w)
            b = np.sqrt(max(w @ (Bm @ w), 0.0))
            b_last = b
            if j + 1 < m_max:
                if b < 1e-13 * max(1.0, abs(a)):
                    # invariant subspace found; continue from a fresh vector
                    v2 = deflate(rng.standard_normal(n))
                    for _ in range(2):
                        v2 = v2 - Q[:, : j + 1] @ (Q[:, : j + 1].T @ (Bm @ v2))
                        v2 = deflate(v2)
                    nv2 = np.sqrt(v2 @ (Bm @ v2))
                    if nv2 < 1e-12:
                        j += 1
                        break
                    Q[:, j + 1] = v2 / nv2
                    betas[j] = 0.0
                else:
                    Q[:, j + 1] = w / b
                    betas[j] = b
            j += 1
        m = j
        theta, S = _tridiag_eigs(alphas[:m], betas[: m - 1])
        resid = np.abs(b_last * S[m - 1, :])
        out = []
        for idx in np.argsort(-theta):
            th = theta[idx]
            if th <= 0 or resid[idx] > tol * abs(th):
                continue
            x = deflate(Q[:, :m] @ S[:, idx])
            nx = np.sqrt(x @ (Bm @ x))
            if nx < 0.5:
                continue
            out.append((sigma + 1.0 / th, x / nx))
        return out

    max_restarts = 40 + 4 * k
    restarts = 0
    empty_runs = 0
    while restarts < max_restarts:
        want = k - len(locked_vals)
        m_max = min(n - len(locked_vals), max(2 * max(want, 1) + 30, 40))
        if empty_runs:
            m_max = min(n - len(locked_vals), m_max * 2**empty_runs)
        found = run_once(m_max)
        restarts += 1
        if not found:
            if len(locked_vals) >= k:
                break  # nothing left below the locked set: certified
            if m_max >= n - len(locked_vals) or empty_runs >= 4:
                raise NotConverged(
                    f"Lanczos locked only {len(locked_vals)} of {k} pairs"
                )
            empty_runs += 1
            continue
        empty_runs = 0
        new_min = min(lam for lam, _ in found)
        for lam, x in found:
            locked_vals.append(lam)
            locked_vecs.append(x)
        if len(locked_vals) >= n:
            break
        if len(locked_vals) >= k:
            kth = np.sort(locked_vals)[k - 1]
            if new_min >= kth - 1e-8 * max(1.0, abs(kth)):
                break
    else:
        raise NotConverged(f"Lanczos restart cap hit with {len(locked_vals)} pairs")

    vals = np.array(locked_vals)
    order = np.argsort(vals, kind="stable")[:k]
    vals = vals[order]
    X = np.column_stack([locked_vecs[i] for i in order])

    # inverse-iteration sweep + Rayleigh-Ritz on the non-kernel block; the
    # kernel is analytic and must stay out (shift-inversion blows it up)
    mask = vals <= 1e-8 * max(1.0, float(np.abs(vals).max()))
    Xn, Xr = X[:, mask], X[:, ~mask]
    if Xr.shape[1]:
        P = solve(np.asarray(Bm @ Xr))
        if Xn.shape[1]:
            for _ in range(2):
                P -= Xn @ (Xn.T @ (Bm @ P))
        P /= np.sqrt(np.einsum("ij,ij->j", P, np.asarray(Bm @ P)))
        G = P.T @ (Bm @ P)
        C = np.linalg.cholesky(G)
        P = solve_triangular(C, P.T, lower=True).T
        H = P.T @ (Lm @ P)
        w, U = eigh(0.5 * (H + H.T))
        Xr, vr = P @ U, w
    else:
        vr = np.empty(0)
    vals = np.concatenate([vals[mask], vr])
    X = np.column_stack([Xn, Xr]) if Xn.shape[1] else Xr
    order = np.argsort(vals, kind="stable")
    return EigenSystem(vals[order], X[:, order], L, B)
