"""Gapped one-dimensional model families and their boundary planes.

Three families are implemented. A constant-mass Dirac operator
(-i sigma_3 d/dt + mass coupling W) whose half-line solution planes at
energy zero are the spectral subspaces of the flattened mass matrix; a
constant-potential Schrodinger operator (-d^2/dt^2 + V) below its
spectrum; and a periodic block tight-binding chain whose planes come
from the stable and unstable subspaces of the transfer matrix over one
period. Each bulk ships with planes on both sides, their unitaries in
the canonical split, and a gap certificate.

Piecewise-constant Dirac profiles extend the Dirac family: the plane
that decays on a far side is transported across the steps to any point,
staying Lagrangian because the flow preserves the boundary pairing.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from .errors import DimensionMismatch, GapClosed, NotInGap, NotInvertible, NotLagrangian
from .linalg import (
    TOL,
    Frame,
    Tolerances,
    _as_square,
    hermitian_eig,
    orthonormalize,
    stable_unstable_split,
)
from .symplectic import (
    LagrangianPlane,
    SymplecticForm,
    canonical_split,
    crossing_dim,
    is_lagrangian,
    plane_to_unitary,
)

__all__ = [
    "BulkData",
    "dirac_form",
    "dirac_bulk",
    "schrodinger_bulk",
    "TightBindingModel",
    "tb_form",
    "tb_bulk",
    "PiecewiseDiracProfile",
    "propagate_plane",
]


class BulkData:
    """Boundary data of one gapped bulk at one energy.

    Carries the form, its canonical split, the Lagrangian planes of
    solutions decaying to the right (plus) and to the left (minus),
    their unitaries, and a positive gap certificate (distance from the
    energy to the spectrum, in the model's own units).
    """

    __slots__ = ("form", "split", "plane_plus", "plane_minus", "u_plus",
                 "u_minus", "gap", "energy")

    def __init__(self, form, split, plane_plus, plane_minus, u_plus, u_minus,
                 gap, energy):
        self.form = form
        self.split = split
        self.plane_plus = plane_plus
        self.plane_minus = plane_minus
        self.u_plus = u_plus
        self.u_minus = u_minus
        self.gap = float(gap)
        self.energy = float(energy)

    def __repr__(self):
        return (f"BulkData(n={self.split.n}, energy={self.energy:g}, "
                f"gap={self.gap:.3g})")


def _finish_bulk(form, split, f_plus, f_minus, gap, energy, tol) -> BulkData:
    plane_plus = LagrangianPlane(f_plus, form, tol)
    plane_minus = LagrangianPlane(f_minus, form, tol)
    u_plus = plane_to_unitary(plane_plus, split, tol)
    u_minus = plane_to_unitary(plane_minus, split, tol)
    # in-gap energies force transverse planes
    if crossing_dim(u_plus, u_minus, tol):
        raise GapClosed("half-line planes intersect; the energy is not in a gap")
    return BulkData(form, split, plane_plus, plane_minus, u_plus, u_minus,
                    gap, energy)


def dirac_form(N: int) -> SymplecticForm:
    """Boundary form of an N-channel Dirac operator: J = blkdiag(iI, -iI)."""
    d = np.concatenate([1j * np.ones(N), -1j * np.ones(N)])
    return SymplecticForm(np.diag(d))


def _flat_mass(W: np.ndarray) -> np.ndarray:
    N = W.shape[0]
    A = np.zeros((2 * N, 2 * N), dtype=complex)
    A[:N, N:] = W
    A[N:, :N] = W.conj().T
    return A


def _dirac_generator(W: np.ndarray, energy: float) -> np.ndarray:
    """First-order coefficient matrix: solutions satisfy psi' = B psi."""
    N = W.shape[0]
    sigma3 = np.diag(np.concatenate([np.ones(N), -np.ones(N)]))
    return 1j * energy * sigma3 - _flat_mass(W)


def _hyperbolic_frames(B: np.ndarray, tol: Tolerances):
    """Frames of the decaying (Re < 0) and growing (Re > 0) subspaces."""
    lam = np.linalg.eigvals(B)
    margin = tol.rank_tol * max(1.0, float(np.abs(B).max()))
    if np.abs(lam.real).min() <= margin:
        raise GapClosed("coefficient matrix has a near-imaginary eigenvalue")
    _, z_dec, k_dec = sla.schur(B, output="complex", sort=lambda z: z.real < 0)
    _, z_gro, k_gro = sla.schur(B, output="complex", sort=lambda z: z.real > 0)
    if k_dec + k_gro != B.shape[0]:
        raise GapClosed("hyperbolic split is incomplete")
    return Frame(z_dec[:, :k_dec], tol), Frame(z_gro[:, :k_gro], tol)


def dirac_bulk(W, tol: Tolerances = TOL, energy: float = 0.0) -> BulkData:
    """Boundary data of the constant Dirac operator with mass coupling W.

    The spectrum is the complement of (-m0, m0) with m0 the smallest
    singular value of W; GapClosed is raised when m0 vanishes or the
    energy is not strictly inside the gap. At energy zero the planes
    are the positive and negative spectral subspaces of the flattened
    mass matrix.
    """
    W = _as_square(W, "W")
    N = W.shape[0]
    s = np.linalg.svd(W, compute_uv=False)
    m0 = float(s[-1])
    if m0 <= tol.rank_tol * max(1.0, float(s[0])):
        raise GapClosed(f"smallest singular value of W is {m0:.3e}")
    gap = m0 - abs(energy)
    if gap <= tol.rank_tol * max(1.0, m0):
        raise GapClosed(f"energy {energy:g} is not inside the gap (m0 = {m0:.6g})")
    form = dirac_form(N)
    split = canonical_split(form, tol)
    if energy == 0.0:
        evals, evecs = hermitian_eig(_flat_mass(W), tol)
        V = evecs.matrix
        f_plus = Frame(V[:, evals > 0], tol)
        f_minus = Frame(V[:, evals < 0], tol)
    else:
        f_plus, f_minus = _hyperbolic_frames(_dirac_generator(W, energy), tol)
    return _finish_bulk(form, split, f_plus, f_minus, gap, energy, tol)


def schrodinger_bulk(V, energy: float, tol: Tolerances = TOL) -> BulkData:
    """Boundary data of -d^2/dt^2 + V at an energy below the spectrum.

    V is a constant hermitian potential; the spectrum starts at its
    lowest eigenvalue, so NotInGap is raised unless energy < min(V).
    Traces are (psi(0), psi'(0)) and the decaying solutions have slope
    -sqrt(mu - E) along each potential eigenvector.
    """
    V = _as_square(V, "V")
    M = V.shape[0]
    mu, vecs = hermitian_eig(V, tol)
    scale = max(1.0, float(np.abs(mu).max()), abs(energy))
    gap = float(mu[0]) - energy
    if gap <= tol.rank_tol * scale:
        raise NotInGap(
            f"energy {energy:g} is not below the spectrum bottom {mu[0]:.6g}"
        )
    J = np.zeros((2 * M, 2 * M), dtype=complex)
    J[:M, M:] = np.eye(M)
    J[M:, :M] = -np.eye(M)
    form = SymplecticForm(J)
    split = canonical_split(form, tol)
    kappa = np.sqrt(mu - energy)
    Vm = vecs.matrix
    f_plus = orthonormalize(np.vstack([Vm, -Vm * kappa[None, :]]), tol)
    f_minus = orthonormalize(np.vstack([Vm, Vm * kappa[None, :]]), tol)
    return _finish_bulk(form, split, f_plus, f_minus, gap, energy, tol)


class TightBindingModel:
    """Periodic block chain: sites carry b_n = b_n*, bond (n, n+1) carries a_n.

    The operator acts as (h psi)_n = a_{n-1}* psi_{n-1} + b_n psi_n
    + a_n psi_{n+1}, with both sequences periodic with the same period.
    Arrays are indexed by n mod period; a[0] is the bond between the
    two trace sites 0 and 1.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b, tol: Tolerances = TOL):
        a = [_as_square(x, "a") for x in a]
        b = [_as_square(x, "b") for x in b]
        if len(a) != len(b) or not a:
            raise DimensionMismatch(
                f"need equally many bond and site blocks, got {len(a)} and {len(b)}"
            )
        N = a[0].shape[0]
        for x in a + b:
            if x.shape[0] != N:
                raise DimensionMismatch("all blocks must share one size")
        for x in b:
            if np.abs(x - x.conj().T).max() > tol.frame_tol * max(1.0, np.abs(x).max()):
                raise ValueError("site blocks must be hermitian")
        self.a = [x.copy() for x in a]
        self.b = [x.copy() for x in b]

    @property
    def period(self) -> int:
        return len(self.a)

    @property
    def block_dim(self) -> int:
        return self.a[0].shape[0]

    def site(self, n: int) -> np.ndarray:
        return self.b[n % self.period]

    def bond(self, n: int) -> np.ndarray:
        return self.a[n % self.period]

    def __repr__(self):
        return f"TightBindingModel(period={self.period}, block_dim={self.block_dim})"


def tb_form(model: TightBindingModel, tol: Tolerances = TOL) -> SymplecticForm:
    """Boundary form on the trace (psi_0, psi_1): J = [[0, -a0], [a0*, 0]]."""
    a0 = model.a[0]
    N = model.block_dim
    J = np.zeros((2 * N, 2 * N), dtype=complex)
    J[:N, N:] = -a0
    J[N:, :N] = a0.conj().T
    return SymplecticForm(J, tol)


def tb_bulk(model: TightBindingModel, energy: float = 0.0,
            tol: Tolerances = TOL) -> BulkData:
    """Boundary data of a periodic chain at an in-gap energy.

    The transfer matrix over one period maps (psi_0, psi_1) to
    (psi_q, psi_{q+1}); an energy is in a gap exactly when it has no
    unit-circle eigenvalues, and then the decaying plane is its stable
    subspace. NotInvertible is raised when a bond block is singular,
    GapClosed when unit-circle modes exist.
    """
    N = model.block_dim
    q = model.period
    for x in model.a:
        s = np.linalg.svd(x, compute_uv=False)
        if s[-1] <= tol.rank_tol * max(1.0, s[0]):
            raise NotInvertible(f"bond block with sigma_min {s[-1]:.3e}")
    form = tb_form(model, tol)
    split = canonical_split(form, tol)
    M = np.eye(2 * N, dtype=complex)
    for n in range(1, q + 1):
        a_n = model.bond(n)
        top = np.hstack([np.zeros((N, N)), np.eye(N)])
        low_left = -np.linalg.solve(a_n, model.bond(n - 1).conj().T)
        low_right = np.linalg.solve(a_n, energy * np.eye(N) - model.site(n))
        M = np.vstack([top, np.hstack([low_left, low_right])]) @ M
    lam = np.linalg.eigvals(M)
    gap = float(np.abs(np.abs(lam) - 1.0).min())
    # a defective band-edge pair splits by O(sqrt(eps)) in eigvals and can
    # land just outside eig_tol; anything that close to the circle is on it
    floor = np.sqrt(np.finfo(float).eps) * max(1.0, float(np.abs(lam).max()))
    if gap <= 10.0 * floor:
        raise GapClosed(f"transfer spectrum within {gap:.3e} of the unit circle")
    stable, unstable, on_circle = stable_unstable_split(M, tol)
    if on_circle:
        raise GapClosed(f"{on_circle} unit-circle modes at energy {energy:g}")
    if stable.rank != N or unstable.rank != N:
        raise GapClosed(
            f"stable/unstable ranks ({stable.rank}, {unstable.rank}) are unbalanced"
        )
    return _finish_bulk(form, split, stable, unstable, gap, energy, tol)


class PiecewiseDiracProfile:
    """Piecewise-constant Dirac mass profile.

    masses[j] applies between breakpoints[j-1] and breakpoints[j], with
    masses[0] to the left of everything and masses[-1] to the right.
    """

    __slots__ = ("masses", "breakpoints")

    def __init__(self, masses, breakpoints):
        masses = [_as_square(W, "mass") for W in masses]
        breakpoints = [float(t) for t in breakpoints]
        if len(masses) != len(breakpoints) + 1:
            raise DimensionMismatch(
                f"{len(masses)} masses need {len(masses) - 1} breakpoints, "
                f"got {len(breakpoints)}"
            )
        N = masses[0].shape[0]
        for W in masses:
            if W.shape[0] != N:
                raise DimensionMismatch("all masses must share one size")
        if any(b2 <= b1 for b1, b2 in zip(breakpoints, breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self.masses = [W.copy() for W in masses]
        self.breakpoints = breakpoints

    @property
    def block_dim(self) -> int:
        return self.masses[0].shape[0]

    @property
    def steps(self) -> int:
        return len(self.breakpoints)

    def mass_at(self, t: float) -> np.ndarray:
        """Mass on the segment containing t (right-continuous)."""
        j = 0
        for b in self.breakpoints:
            if t < b:
                break
            j += 1
        return self.masses[j]

    def __repr__(self):
        return (f"PiecewiseDiracProfile(block_dim={self.block_dim}, "
                f"steps={self.steps})")


def propagate_plane(profile: PiecewiseDiracProfile, energy: float, side: str,
                    t: float = 0.0, tol: Tolerances = TOL) -> LagrangianPlane:
    """Trace plane at position t of the solutions decaying on one far side.

    side '+' transports the decaying plane of the rightmost segment
    leftwards to t; side '-' transports the growing plane of the
    leftmost segment rightwards. The flow preserves the boundary
    pairing, so the result is re-orthonormalized per segment. The
    residual isotropy defect of the computed frame scales with the
    accumulated growth of the flow (a stiff segment of strength
    kappa * span conditions the plane like exp(2 kappa * span)), so the
    construction gate follows that budget instead of the fixed frame
    tolerance; it still rejects anything a symplectic flow cannot
    explain.
    """
    if side not in ("+", "-"):
        raise ValueError(f"side must be '+' or '-', got {side!r}")
    if not profile.breakpoints:
        raise ValueError("profile has no breakpoints; use dirac_bulk instead")
    form = dirac_form(profile.block_dim)
    bps = profile.breakpoints

    if side == "+":
        anchor = bps[-1]
        B_far = _dirac_generator(profile.masses[-1], energy)
        F, _ = _hyperbolic_frames(B_far, tol)
        if t >= anchor:
            # constant coefficients beyond the last step: the plane is
            # translation invariant there
            return LagrangianPlane(F, form, tol)
        stops = [b for b in reversed(bps) if t < b <= anchor]
        path = [anchor] + stops[1:] + [t]
    else:
        anchor = bps[0]
        B_far = _dirac_generator(profile.masses[0], energy)
        _, F = _hyperbolic_frames(B_far, tol)
        if t <= anchor:
            return LagrangianPlane(F, form, tol)
        stops = [b for b in bps if anchor <= b < t]
        path = [anchor] + stops[1:] + [t]

    X = F.matrix
    growth = 1.0
    for start, stop in zip(path, path[1:]):
        mid = 0.5 * (start + stop)
        B = _dirac_generator(profile.mass_at(mid), energy)
        # cap the growth per exponential so re-orthonormalization can
        # keep the columns independent on stiff segments
        rate = float(np.linalg.norm(B, 2))
        nsub = max(1, int(np.ceil(abs(stop - start) * rate / 4.0)))
        P = sla.expm(B * ((stop - start) / nsub))
        growth *= float(np.linalg.norm(P, 2)) ** nsub
        for _ in range(nsub):
            X = orthonormalize(P @ X, tol).matrix
    frame = Frame(X, tol)
    defect, _ = is_lagrangian(frame, form, tol)
    # transverse error amplifies like the growth while the in-plane
    # normalization divides by it, so the conditioning is growth squared
    budget = 64.0 * np.finfo(float).eps * max(1.0, growth) ** 2
    if defect > max(tol.frame_tol, min(budget, 1e-6)):
        raise NotLagrangian(
            f"transported frame has isotropy defect {defect:.3e}, "
            f"beyond the flow conditioning budget {budget:.3e}"
        )
    return LagrangianPlane(frame, form, tol, check=False)
