"""Basis families: harmonic, Hamiltonian, eigenbasis, filtered-spectral
(truncated and spectrum-free), diffusion, and Green-kernel columns.

Two evaluation routes exist for a spectral operator K_phi.  The truncated
route expands over k computed eigenpairs; the spectrum-free route replaces
phi by a rational partial fraction and evaluates K_phi f as alpha0 f plus a
few shifted sparse solves (B + beta_j L) g_j = B f, no eigendecomposition.
"""

import math
import warnings

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import numerics
from .errors import (
    DisconnectedMesh,
    DuplicateSeeds,
    SchemeNotSymmetric,
    SingularSystem,
)
from .fields import BasisSet, ScalarField, field_values
from .filters import (
    FilterSpec,
    evaluate,
    exp_chebyshev_coefficients,
    partial_fractions,
)

# eigenvalues at or below this (relative) size count as the kernel of L
KERNEL_REL_TOL = 1e-8


def _seed_indices(seeds, n):
    idx = np.asarray(list(seeds), dtype=int)
    if idx.ndim != 1 or len(idx) == 0:
        raise ValueError("seed set must be a nonempty 1-D index list")
    if np.any(idx < 0) or np.any(idx >= n):
        raise IndexError("seed index out of range")
    if len(np.unique(idx)) != len(idx):
        raise DuplicateSeeds("seed indices must be distinct")
    return idx


def _constrained_basis(M, seeds, family, params):
    """Solve M g = e_i with every seed row replaced by a unit row.

    Equivalent elimination form: fix g at the seeds, solve the free block
    M_ff g_f = -M_fs g_s once per seed with a single factorisation.  Works
    for non-symmetric schemes too (general sparse LU).
    """
    n = M.shape[0]
    idx = _seed_indices(seeds, n)
    free = np.ones(n, dtype=bool)
    free[idx] = False
    Mc = M.tocsc()
    Mff = Mc[free][:, free]
    Mfs = Mc[free][:, idx].toarray()
    try:
        lu = spla.splu(Mff.tocsc())
    except RuntimeError as exc:
        raise SingularSystem(
            "constrained system is singular; is the mesh connected?"
        ) from exc
    fields = []
    for j, s in enumerate(idx):
        g = np.zeros(n)
        g[s] = 1.0
        if Mfs.shape[0]:
            g[free] = lu.solve(-Mfs[:, j])
        fields.append(ScalarField(g, tag=f"{family}[seed={s}]"))
    return BasisSet(fields, family, seeds=list(idx), params=params)


def harmonic_basis(op, seeds):
    """Harmonic interpolants: Delta psi_i = 0 away from the seeds with
    Lagrange values psi_i(p_j) = delta_ij at every seed.

    All seed rows are constrained simultaneously, so the returned set is an
    exact partition of unity on a connected mesh.
    """
    return _constrained_basis(
        numerics.matrix_data(op.L),
        seeds,
        "harmonic",
        {"scheme": op.scheme},
    )


def hamiltonian_basis(op, V, mu, seeds):
    """Basis of the screened operator H = L + mu * B diag(V).

    Same constrained solves as harmonic_basis with H in place of L; mu = 0
    reduces to the harmonic basis.  A potential that makes H indefinite
    (mu * min V < 0) is allowed but reported as a warning.
    """
    v = field_values(V)
    Lm = numerics.matrix_data(op.L)
    Bm = numerics.matrix_data(op.B)
    if len(v) != Lm.shape[0]:
        raise ValueError("potential length does not match the operator")
    if mu * v.min() < 0:
        warnings.warn(
            "mu*min(V) < 0: the screened operator may be indefinite",
            stacklevel=2,
        )
    H = (Lm + mu * (Bm @ sp.diags(v))).tocsc()
    return _constrained_basis(
        H, seeds, "hamiltonian", {"scheme": op.scheme, "mu": mu}
    )


def eigen_basis(op, k, tol=1e-10, seed=0):
    """The k smallest B-orthonormal eigenpairs of L x = lambda B x."""
    if not op.is_symmetric:
        raise SchemeNotSymmetric(
            f"scheme {op.scheme!r} is not symmetric; no eigenbasis"
        )
    return numerics.smallest_eigenpairs(op.L, op.B, k, tol=tol, seed=seed)


def eigen_fields(eig):
    """Wrap an EigenSystem's eigenvectors as a BasisSet."""
    fields = [
        ScalarField(eig.vectors[:, i], tag=f"eigen[{i}] lam={eig.values[i]:.6g}")
        for i in range(eig.k)
    ]
    return BasisSet(fields, "eigen", params={"k": eig.k})


def spectral_coefficients(eig, f):
    """Expansion coefficients alpha_i = x_i^T B f."""
    fv = field_values(f)
    Bm = numerics.matrix_data(eig.B)
    return eig.vectors.T @ (Bm @ fv)


def reconstruct(eig, alpha, k_use, f=None):
    """Partial sum f_k = sum_{i<=k_use} alpha_i x_i with a residual report.

    The report compares the measured B-norm residual against the bound
    (f^T L f) / lambda_{k_use+1}; when f is omitted the full stored
    expansion stands in for it (exact when the spectrum is complete).
    """
    alpha = np.asarray(alpha, dtype=float)
    if not 1 <= k_use <= eig.k or len(alpha) > eig.k:
        raise ValueError("k_use must lie in 1..k of the stored eigenpairs")
    fk = eig.vectors[:, :k_use] @ alpha[:k_use]
    fv = field_values(f) if f is not None else eig.vectors @ alpha
    Bm = numerics.matrix_data(eig.B)
    Lm = numerics.matrix_data(eig.L)
    r = fv - fk
    resid_sq = float(r @ (Bm @ r))
    energy = float(fv @ (Lm @ fv))
    lam_next = float(eig.values[k_use]) if k_use < eig.k else math.inf
    bound = energy / lam_next if lam_next > 0 else math.inf
    report = {
        "k_use": int(k_use),
        "residual_sq": resid_sq,
        "energy": energy,
        "bound": bound,
        "satisfied": bool(resid_sq <= bound * (1 + 1e-9) + 1e-12),
    }
    return ScalarField(fk, tag=f"reconstruct[k={k_use}]"), report


def _deflated(values, filt):
    """Mode mask after deflating the kernel for singular filters."""
    lam = np.maximum(values, 0.0)  # clamp rounding noise at the kernel
    keep = np.ones(len(lam), dtype=bool)
    if filt.singular_at_zero:
        keep = lam > KERNEL_REL_TOL * max(1.0, lam.max(initial=0.0))
    return lam, keep


def truncated_spectral(eig, filt, f):
    """Filtered expansion sum_j phi(lambda_j) (x_j^T B f) x_j.

    Filters singular at zero drop the kernel modes (constant on a closed
    connected mesh); the deflation is recorded in the provenance tag.
    """
    fv = field_values(f)
    lam, keep = _deflated(eig.values, filt)
    phi = evaluate(filt, lam[keep])
    alpha = eig.vectors[:, keep].T @ (numerics.matrix_data(eig.B) @ fv)
    out = eig.vectors[:, keep] @ (phi * alpha)
    tag = f"truncated[{filt.describe()},k={eig.k}]"
    if not keep.all():
        tag += " deflated"
    return ScalarField(out, tag=tag)


class ChebyshevKernel:
    """Spectrum-free evaluator of K_phi via a rational partial fraction.

    K_phi f ~ alpha0 f + sum_j alpha_j g_j with (B + beta_j L) g_j = B f.
    Each distinct shift is factorised once and reused across applications;
    conjugate pole pairs are solved once and doubled through the real part.
    Poles with multiplicity m chain m first-order solves.
    """

    def __init__(self, op, pf, tol=1e-10):
        self.op = op
        self.pf = pf
        self.tol = tol
        self._factors = {}

    def _factor(self, beta):
        key = complex(beta)
        if key not in self._factors:
            self._factors[key] = numerics.shifted_factor(
                self.op.B, self.op.L, beta, self.tol
            )
        return self._factors[key]

    def _stage(self, beta, mult, Bf):
        Bm = numerics.matrix_data(self.op.B)
        solve = self._factor(beta)
        g = solve(Bf)
        for _ in range(mult - 1):
            g = solve(Bm @ g)
        return g

    def apply(self, f):
        fv = field_values(f)
        Bm = numerics.matrix_data(self.op.B)
        Bf = Bm @ fv
        acc = self.pf.alpha0 * fv.astype(complex)
        solved = {}
        # fixed term order keeps the reduction deterministic
        for a, b, m in self.pf.terms:
            b = complex(b)
            if b.imag >= 0:
                key = (b, m)
                if key not in solved:
                    solved[key] = self._stage(b, m, Bf)
                g = solved[key]
            else:
                # conjugate of an already (or to-be) solved pole
                key = (b.conjugate(), m)
                if key not in solved:
                    solved[key] = self._stage(b.conjugate(), m, Bf)
                g = np.conj(solved[key])
            acc = acc + a * g
        scale = np.abs(acc).max()
        if scale > 0 and np.abs(acc.imag).max() > 1e-10 * scale:
            raise ArithmeticError(
                "spectrum-free evaluation produced a non-real field"
            )
        return acc.real


def chebyshev_spectral(op, pf, f):
    """One-shot spectrum-free evaluation of K_phi f (see ChebyshevKernel)."""
    out = ChebyshevKernel(op, pf).apply(f)
    return ScalarField(out, tag=f"chebyshev[deg={pf.degree}]")


def diffusion_basis(op, t, seed, method="chebyshev", r=5, k=100, eig=None,
                    kernel=None):
    """Heat-kernel column K_t e_seed at diffusion scale t.

    method "chebyshev" folds t into the pole nodes of the precomputed
    degree-r rational approximation of exp(-s) and performs r shifted
    solves; "truncated" expands over k eigenpairs (accuracy of the
    truncation cannot be estimated without the whole spectrum).  Pass a
    ChebyshevKernel or EigenSystem to reuse work across seeds.
    """
    if t <= 0:
        raise ValueError("diffusion scale t must be positive")
    n = op.n
    (s,) = _seed_indices([seed], n)
    delta = np.zeros(n)
    delta[s] = 1.0
    if method == "chebyshev":
        if kernel is None:
            kernel = ChebyshevKernel(op, exp_chebyshev_coefficients(r).scaled(t))
        out = kernel.apply(delta)
        tag = f"diffusion[t={t!r},seed={s},chebyshev r={r}]"
    elif method == "truncated":
        if eig is None:
            if k < n:
                warnings.warn(
                    "truncated diffusion with k < n: approximation quality "
                    "cannot be estimated without the whole spectrum",
                    stacklevel=2,
                )
            eig = eigen_basis(op, min(k, n))
        out = field_values(
            truncated_spectral(eig, FilterSpec.exponential(t), delta)
        )
        tag = f"diffusion[t={t!r},seed={s},truncated k={eig.k}]"
    else:
        raise ValueError(f"unknown diffusion method {method!r}")
    return ScalarField(out, tag=tag)


def diffusion_set(op, t, seeds, method="chebyshev", r=5, k=100, eig=None):
    """Diffusion columns for several seeds, sharing factorisations."""
    kernel = None
    if method == "chebyshev":
        kernel = ChebyshevKernel(op, exp_chebyshev_coefficients(r).scaled(t))
    elif method == "truncated" and eig is None:
        eig = eigen_basis(op, min(k, op.n))
    fields = [
        diffusion_basis(op, t, s, method=method, r=r, k=k, eig=eig,
                        kernel=kernel)
        for s in seeds
    ]
    return BasisSet(fields, "diffusion", seeds=list(seeds),
                    params={"t": t, "method": method, "r": r, "k": k})


def green_column(op, seed, role="harmonic", t=None, filt=None, r=5):
    """Column of the Green kernel of the chosen operator at a seed.

    role "harmonic": the deflated inverse of the Laplacian, solving
    L g = B(e_seed - constant projection) with <g, 1>_B = 0; requires a
    connected mesh.  role "diffusion" needs t and delegates to the heat
    column; role "general" needs a rational-form filter and delegates to
    the spectrum-free evaluator.
    """
    n = op.n
    (s,) = _seed_indices([seed], n)
    if role == "diffusion":
        if t is None:
            raise ValueError("diffusion role needs a scale t")
        return diffusion_basis(op, t, s, method="chebyshev", r=r)
    if role == "general":
        if filt is None:
            raise ValueError("general role needs a filter")
        out = chebyshev_spectral(op, partial_fractions(filt, r), _delta(n, s))
        out.tag = f"green[general,{filt.describe()},seed={s}]"
        return out
    if role != "harmonic":
        raise ValueError(f"unknown green kernel role {role!r}")

    Lm = numerics.matrix_data(op.L)
    Bm = numerics.matrix_data(op.B)
    kernel = numerics.component_nullspace(Lm, Bm)
    if kernel.shape[1] != 1:
        raise DisconnectedMesh(
            "harmonic Green kernel needs one connected component, found "
            f"{kernel.shape[1]}"
        )
    ones = np.ones(n)
    area = ones @ (Bm @ ones)
    delta = _delta(n, s)
    f = delta - (ones @ (Bm @ delta)) / area * ones
    g = numerics.solve_spd(Lm, Bm @ f, nullspace=ones[:, None])
    g = g - (ones @ (Bm @ g)) / area * ones
    return ScalarField(g, tag=f"green[harmonic,seed={s}]")


def _delta(n, s):
    v = np.zeros(n)
    v[s] = 1.0
    return v
