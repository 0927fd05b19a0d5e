"""Tenfold-way symmetry data: classes, generators, membership, sampling.

A symmetry set holds up to two antiunitary generators (time reversal T
and charge conjugation C, each squaring to +1 or -1) and a chiral
unitary S. The combination determines one of ten Cartan labels. For
each label the boundary unitaries of gapped operators form a specific
matrix manifold (orthogonal, symplectic, hermitian-unitary and so on);
membership tests, canonical generator bases, and Haar-style samplers
for those manifolds live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    AmbiguousKernel,
    BadParity,
    DimensionMismatch,
    InconsistentSymmetries,
    NotInClass,
    NotUnitary,
)
from .linalg import TOL, Tolerances, _as_square
from .symplectic import LagrangianPlane, LerayUnitary, SymplecticForm

__all__ = [
    "CartanClass",
    "AntiUnitary",
    "SymmetrySet",
    "cartan_class",
    "check_J_compatibility",
    "JCompatibility",
    "plane_respects",
    "PlaneSymmetryReport",
    "membership",
    "canonical_symmetry_basis",
    "symplectic_grassmannian_check",
    "GrassmannianReport",
    "antiunitary_normal_form",
    "standard_omega",
    "random_unitary",
    "random_orthogonal",
    "random_symplectic_unitary",
    "random_member",
    "realizable_indices",
]

# label -> (t_sign, c_sign, has chiral, index kind, needs even dimension)
_CLASS_DATA = {
    "A": (0, 0, False, "zero", False),
    "AIII": (0, 0, True, "kernel_dim", False),
    "AI": (1, 0, False, "zero", False),
    "BDI": (1, 1, True, "kernel_dim", False),
    "D": (0, 1, False, "sign", False),
    "DIII": (-1, 1, True, "sign", True),
    "AII": (-1, 0, False, "zero", True),
    "CII": (-1, -1, True, "kernel_dim", True),
    "C": (0, -1, False, "zero", True),
    "CI": (1, -1, True, "zero", True),
}

_MANIFOLDS = {
    "A": "U(N)",
    "AIII": "U(N)/(U(k) x U(N-k)), k = 0..N",
    "AI": "U(N)/O(N)",
    "BDI": "O(N)/(O(k) x O(N-k)), k = 0..N",
    "D": "O(N)",
    "DIII": "O(2n)/U(n)",
    "AII": "U(2n)/Sp(n)",
    "CII": "Sp(n)/(Sp(k) x Sp(n-k)), k = 0..n",
    "C": "Sp(n)",
    "CI": "Sp(n)/U(n)",
}

_INDEX_RANGES = {
    "zero": "none",
    "kernel_dim": "dim ker(U - 1)",
    "sign": "sign in {+1, -1}",
}


class CartanClass(str, Enum):
    A = "A"
    AIII = "AIII"
    AI = "AI"
    BDI = "BDI"
    D = "D"
    DIII = "DIII"
    AII = "AII"
    CII = "CII"
    C = "C"
    CI = "CI"

    @classmethod
    def coerce(cls, label) -> "CartanClass":
        if isinstance(label, CartanClass):
            return label
        try:
            return cls(str(label))
        except ValueError:
            raise ValueError(
                f"unknown class {label!r}; expected one of {[c.value for c in cls]}"
            ) from None

    @property
    def t_sign(self) -> int:
        return _CLASS_DATA[self.value][0]

    @property
    def c_sign(self) -> int:
        return _CLASS_DATA[self.value][1]

    @property
    def has_chiral(self) -> bool:
        return _CLASS_DATA[self.value][2]

    @property
    def index_kind(self) -> str:
        return _CLASS_DATA[self.value][3]

    @property
    def needs_even_dim(self) -> bool:
        return _CLASS_DATA[self.value][4]

    @property
    def manifold(self) -> str:
        return _MANIFOLDS[self.value]

    @property
    def index_range(self) -> str:
        return _INDEX_RANGES[self.index_kind]


class AntiUnitary:
    """Antiunitary map x -> V conj(x) with V unitary and V conj(V) = sign."""

    __slots__ = ("V", "sign")

    def __init__(self, V, sign: int, tol: Tolerances = TOL):
        V = _as_square(V, "V")
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign!r}")
        n = V.shape[0]
        if np.abs(V.conj().T @ V - np.eye(n)).max() > tol.frame_tol:
            raise NotUnitary("V is not unitary")
        if np.abs(V @ np.conj(V) - sign * np.eye(n)).max() > tol.frame_tol:
            raise ValueError(f"V conj(V) is not {sign:+d} times identity")
        V = V.copy()
        V.flags.writeable = False
        self.V = V
        self.sign = int(sign)

    @property
    def dim(self) -> int:
        return self.V.shape[0]

    def apply(self, x) -> np.ndarray:
        """Image of a vector, or columnwise image of a matrix."""
        return self.V @ np.conj(np.asarray(x, dtype=complex))

    def __repr__(self):
        return f"AntiUnitary(dim={self.dim}, sign={self.sign:+d})"


class SymmetrySet:
    """Generators present for an operator: T and C antiunitary, S unitary."""

    __slots__ = ("T", "C", "S")

    def __init__(self, T: AntiUnitary | None = None, C: AntiUnitary | None = None,
                 S=None, tol: Tolerances = TOL):
        dims = set()
        if T is not None:
            dims.add(T.dim)
        if C is not None:
            dims.add(C.dim)
        if S is not None:
            S = _as_square(S, "S")
            n = S.shape[0]
            if np.abs(S.conj().T @ S - np.eye(n)).max() > tol.frame_tol:
                raise NotUnitary("S is not unitary")
            if np.abs(S @ S - np.eye(n)).max() > tol.frame_tol:
                raise ValueError("S must square to the identity")
            S = S.copy()
            S.flags.writeable = False
            dims.add(n)
        if len(dims) > 1:
            raise DimensionMismatch(f"generator dimensions differ: {sorted(dims)}")
        self.T = T
        self.C = C
        self.S = S

    @property
    def dim(self) -> int | None:
        for g in (self.T, self.C):
            if g is not None:
                return g.dim
        return None if self.S is None else self.S.shape[0]

    def __repr__(self):
        parts = []
        if self.T is not None:
            parts.append(f"T{self.T.sign:+d}")
        if self.C is not None:
            parts.append(f"C{self.C.sign:+d}")
        if self.S is not None:
            parts.append("S")
        return f"SymmetrySet({', '.join(parts) or 'none'})"


def cartan_class(sym: SymmetrySet, tol: Tolerances = TOL) -> CartanClass:
    """Cartan label of a symmetry set.

    Raises InconsistentSymmetries when the presence pattern matches no
    class (a chiral generator alongside exactly one antiunitary), when
    T and C fail their sign-graded commutation relation, or when a
    provided S is not (up to sign) the composition of T and C.
    """
    T, C, S = sym.T, sym.C, sym.S
    if T is not None and C is not None:
        eps = T.sign * C.sign
        lhs = T.V @ np.conj(C.V)
        rhs = eps * (C.V @ np.conj(T.V))
        if np.abs(lhs - rhs).max() > 10 * tol.frame_tol:
            raise InconsistentSymmetries(
                "T and C do not satisfy the sign-graded commutation relation"
            )
        if S is not None:
            if not (np.abs(S - lhs).max() <= 10 * tol.frame_tol
                    or np.abs(S + lhs).max() <= 10 * tol.frame_tol):
                raise InconsistentSymmetries("S is not the composition of T and C")
        key = (T.sign, C.sign)
        label = {(1, 1): "BDI", (-1, 1): "DIII", (-1, -1): "CII", (1, -1): "CI"}[key]
        return CartanClass(label)
    if T is None and C is None:
        return CartanClass.AIII if S is not None else CartanClass.A
    if S is not None:
        raise InconsistentSymmetries(
            "a chiral generator with exactly one antiunitary matches no class"
        )
    if T is not None:
        return CartanClass.AI if T.sign == 1 else CartanClass.AII
    return CartanClass.D if C.sign == 1 else CartanClass.C


@dataclass(frozen=True)
class JCompatibility:
    """Defects of the generator relations against a boundary form."""

    defect_t: float | None
    defect_c: float | None
    defect_s: float | None
    ok: bool


def check_J_compatibility(sym: SymmetrySet, form: SymplecticForm,
                          tol: Tolerances = TOL) -> JCompatibility:
    """Whether the generators transform the boundary form correctly.

    T must intertwine J with conj(J), C with -conj(J), and S must
    anticommute with J. Defects are relative to the norm of J.
    """
    J = form.J
    scale = form.norm
    d_t = d_c = d_s = None
    if sym.T is not None:
        if sym.T.dim != form.dim:
            raise DimensionMismatch("T and form dimensions differ")
        d_t = float(np.abs(sym.T.V @ np.conj(J) - J @ sym.T.V).max() / scale)
    if sym.C is not None:
        if sym.C.dim != form.dim:
            raise DimensionMismatch("C and form dimensions differ")
        d_c = float(np.abs(sym.C.V @ np.conj(J) + J @ sym.C.V).max() / scale)
    if sym.S is not None:
        if sym.S.shape[0] != form.dim:
            raise DimensionMismatch("S and form dimensions differ")
        d_s = float(np.abs(sym.S @ J + J @ sym.S).max() / scale)
    defects = [d for d in (d_t, d_c, d_s) if d is not None]
    ok = all(d <= tol.frame_tol for d in defects)
    return JCompatibility(d_t, d_c, d_s, ok)


@dataclass(frozen=True)
class PlaneSymmetryReport:
    """Invariance defects of a plane under each present generator."""

    defect_t: float | None
    defect_c: float | None
    defect_s: float | None
    ok: bool


def plane_respects(plane: LagrangianPlane, sym: SymmetrySet,
                   tol: Tolerances = TOL) -> PlaneSymmetryReport:
    """Whether each generator maps the plane onto itself.

    The defect per generator is the largest component of the image
    frame sticking out of the plane.
    """
    F = plane.frame.matrix
    P = plane.frame.projector()
    resid = lambda X: float(np.abs(X - P @ X).max())
    d_t = d_c = d_s = None
    if sym.T is not None:
        if sym.T.dim != plane.dim:
            raise DimensionMismatch("T and plane dimensions differ")
        d_t = resid(sym.T.apply(F))
    if sym.C is not None:
        if sym.C.dim != plane.dim:
            raise DimensionMismatch("C and plane dimensions differ")
        d_c = resid(sym.C.apply(F))
    if sym.S is not None:
        if sym.S.shape[0] != plane.dim:
            raise DimensionMismatch("S and plane dimensions differ")
        d_s = resid(sym.S @ F)
    defects = [d for d in (d_t, d_c, d_s) if d is not None]
    ok = all(d <= 10 * tol.frame_tol for d in defects)
    return PlaneSymmetryReport(d_t, d_c, d_s, ok)


def standard_omega(n: int) -> np.ndarray:
    """The 2n-dimensional block form [[0, I], [-I, 0]]."""
    O = np.zeros((2 * n, 2 * n))
    O[:n, n:] = np.eye(n)
    O[n:, :n] = -np.eye(n)
    return O


def _unpack_unitary(U):
    if isinstance(U, LerayUnitary):
        return U.U
    return _as_square(U, "U")


def membership(U, label, tol: Tolerances = TOL) -> bool:
    """Whether a unitary lies in the matrix manifold of a class.

    Tests only the structural relation (reality, symmetry, symplectic
    intertwining); unitarity is the caller's responsibility. Raises
    BadParity when the class requires an even dimension.
    """
    label = CartanClass.coerce(label)
    M = _unpack_unitary(U)
    n = M.shape[0]
    if label.needs_even_dim and n % 2:
        raise BadParity(f"class {label.value} needs even dimension, got {n}")
    t = tol.eig_tol
    close = lambda X, Y: bool(np.abs(X - Y).max() <= t)
    real = lambda X: bool(np.abs(X.imag).max() <= t)
    if label == CartanClass.A:
        return True
    if label == CartanClass.AIII:
        return close(M, M.conj().T)
    if label == CartanClass.AI:
        return close(M, M.T)
    if label == CartanClass.BDI:
        return real(M) and close(M, M.T)
    if label == CartanClass.D:
        return real(M)
    if label == CartanClass.DIII:
        return real(M) and close(M, -M.T)
    if label == CartanClass.AII:
        return close(M, -M.T)
    Om = standard_omega(n // 2)
    symplectic = close(Om @ M, np.conj(M) @ Om)
    if label == CartanClass.C:
        return symplectic
    if label == CartanClass.CII:
        return symplectic and close(M, M.conj().T)
    return symplectic and close(M, M.T)  # CI


def _canonical_form(N: int) -> SymplecticForm:
    d = np.concatenate([1j * np.ones(N), -1j * np.ones(N)])
    return SymplecticForm(np.diag(d))


def canonical_symmetry_basis(label, N: int, tol: Tolerances = TOL):
    """Reference generators of a class on the 2N-dimensional trace space.

    Returns a SymmetrySet together with the boundary form
    J = blkdiag(i I_N, -i I_N) that the generators are compatible with.
    Raises BadParity when the class needs even N.
    """
    label = CartanClass.coerce(label)
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if label.needs_even_dim and N % 2:
        raise BadParity(f"class {label.value} needs even N, got {N}")
    I = np.eye(N)
    Z = np.zeros((N, N))
    swap = np.block([[Z, I], [I, Z]])
    form = _canonical_form(N)
    T = C = S = None
    if label == CartanClass.AIII:
        S = swap
    elif label == CartanClass.AI:
        T = AntiUnitary(swap, 1, tol)
    elif label == CartanClass.BDI:
        T = AntiUnitary(swap, 1, tol)
        C = AntiUnitary(np.eye(2 * N), 1, tol)
        S = swap
    elif label == CartanClass.D:
        C = AntiUnitary(np.eye(2 * N), 1, tol)
    elif label == CartanClass.DIII:
        T = AntiUnitary(np.block([[Z, -I], [I, Z]]), -1, tol)
        C = AntiUnitary(1j * np.eye(2 * N), 1, tol)
        S = np.block([[Z, 1j * I], [-1j * I, Z]])
    elif label == CartanClass.AII:
        T = AntiUnitary(np.block([[Z, -I], [I, Z]]), -1, tol)
    elif label in (CartanClass.CII, CartanClass.C, CartanClass.CI):
        Om = standard_omega(N // 2)
        v_c = np.block([[Om, Z], [Z, Om]])
        if label == CartanClass.CII:
            T = AntiUnitary(np.block([[Z, -Om], [-Om, Z]]), -1, tol)
            C = AntiUnitary(v_c, -1, tol)
            S = swap
        elif label == CartanClass.C:
            C = AntiUnitary(v_c, -1, tol)
        else:
            T = AntiUnitary(1j * swap, 1, tol)
            C = AntiUnitary(v_c, -1, tol)
            S = 1j * np.block([[Z, Om], [Om, Z]])
    return SymmetrySet(T, C, S, tol), form


def _count_kernel(evals: np.ndarray, tol: Tolerances) -> int:
    """Count eigenvalues at +1 with a guard band against ambiguity."""
    dist = np.abs(evals - 1.0)
    inside = dist <= tol.eig_tol
    guard = (dist > tol.eig_tol) & (dist <= 10 * tol.eig_tol)
    if np.any(guard):
        raise AmbiguousKernel(
            f"eigenvalue at distance {dist[guard].min():.3e} from 1 "
            f"falls inside the guard band ({tol.eig_tol:.1e}, {10 * tol.eig_tol:.1e}]"
        )
    return int(np.count_nonzero(inside))


@dataclass(frozen=True)
class GrassmannianReport:
    """Involution data of a symplectic Grassmannian point."""

    n: int
    kernel_dim: int
    defect_hermitian: float
    defect_involution: float
    defect_quaternionic: float


def symplectic_grassmannian_check(A, tol: Tolerances = TOL, omega=None) -> GrassmannianReport:
    """Validate a hermitian involution as a symplectic Grassmannian point.

    The point must be hermitian, square to the identity, intertwine the
    quaternionic structure of omega (A Omega = Omega conj(A)), and have
    a (+1)-eigenspace of even dimension. Defaults to the standard block
    omega; pass a pair-interleaved omega for involutions written in a
    paired basis.
    """
    A = _as_square(A, "A")
    dim = A.shape[0]
    if dim % 2:
        raise BadParity(f"dimension {dim} is odd")
    if omega is None:
        omega = standard_omega(dim // 2)
    else:
        omega = np.asarray(omega, dtype=float)
        if omega.shape != A.shape:
            raise DimensionMismatch("omega shape does not match A")
    scale = max(1.0, float(np.abs(A).max()))
    d_h = float(np.abs(A - A.conj().T).max() / scale)
    d_i = float(np.abs(A @ A - np.eye(dim)).max() / scale)
    d_q = float(np.abs(A @ omega - omega @ np.conj(A)).max() / scale)
    for name, d in (("hermitian", d_h), ("involution", d_i), ("quaternionic", d_q)):
        if d > 10 * tol.frame_tol:
            raise NotInClass(f"{name} defect {d:.3e}")
    evals = np.linalg.eigvalsh(A)
    k = _count_kernel(evals, tol)
    if k % 2:
        raise NotInClass(f"(+1)-eigenspace has odd dimension {k}")
    return GrassmannianReport(dim // 2, k, d_h, d_i, d_q)


def antiunitary_normal_form(a: AntiUnitary, tol: Tolerances = TOL):
    """Basis in which an antiunitary becomes plain conjugation (experimental).

    For sign +1 returns (W, I) with W unitary and V conj(W) = W: the
    columns are a real basis fixed by the map. For sign -1 returns
    (W, X) with X = [[0, -I], [I, 0]] and V conj(W) = W X: the columns
    come in quaternionic pairs (w, V conj(w)).

    This routine is experimental: the constructive pairing is validated
    on exit, but column choices depend on the standard basis and are
    not continuous in V.
    """
    V = a.V
    dim = a.dim
    theta = lambda x: V @ np.conj(x)
    threshold = 1e-6

    def residual(x, cols):
        for c in cols:
            x = x - c * np.vdot(c, x)
        return x

    if a.sign == 1:
        cols = []
        for k in range(dim):
            if len(cols) == dim:
                break
            e = np.zeros(dim, dtype=complex)
            e[k] = 1.0
            for cand in (e + theta(e), 1j * (e - theta(e))):
                if len(cols) == dim:
                    break
                r = residual(cand, cols)
                norm = np.linalg.norm(r)
                if norm > threshold:
                    cols.append(r / norm)
        W = np.column_stack(cols)
        X = np.eye(dim)
    else:
        if dim % 2:
            raise BadParity(f"sign -1 antiunitaries need even dimension, got {dim}")
        half = dim // 2
        ws = []
        for k in range(dim):
            if len(ws) == half:
                break
            e = np.zeros(dim, dtype=complex)
            e[k] = 1.0
            taken = ws + [theta(w) for w in ws]
            r = residual(e, taken)
            norm = np.linalg.norm(r)
            if norm > threshold:
                ws.append(r / norm)
        W = np.column_stack(ws + [theta(w) for w in ws])
        X = np.block([
            [np.zeros((half, half)), -np.eye(half)],
            [np.eye(half), np.zeros((half, half))],
        ])
    if np.abs(V @ np.conj(W) - W @ X).max() > 1e-8:
        raise ValueError("normal-form construction failed to converge")
    return W, X


# ---------------------------------------------------------------------------
# samplers


def random_unitary(n: int, rng=None) -> np.ndarray:
    """Haar-distributed unitary."""
    rng = np.random.default_rng(rng)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def random_orthogonal(n: int, rng=None) -> np.ndarray:
    """Haar-distributed real orthogonal (both determinant components)."""
    rng = np.random.default_rng(rng)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))[None, :]


def random_symplectic_unitary(n: int, rng=None) -> np.ndarray:
    """Haar-style symplectic unitary of even dimension n.

    Polar factor of a quaternionic Gaussian; the quaternionic block
    structure survives the polar decomposition, so the result satisfies
    Omega U = conj(U) Omega exactly up to roundoff.
    """
    if n % 2:
        raise BadParity(f"symplectic unitaries need even dimension, got {n}")
    rng = np.random.default_rng(rng)
    half = n // 2
    for _ in range(16):
        x1 = rng.standard_normal((half, half)) + 1j * rng.standard_normal((half, half))
        x2 = rng.standard_normal((half, half)) + 1j * rng.standard_normal((half, half))
        X = np.block([[x1, x2], [-np.conj(x2), np.conj(x1)]])
        u, s, vh = np.linalg.svd(X)
        if s[-1] > 1e-8 * s[0]:
            return u @ vh
    raise ValueError("failed to draw an invertible quaternionic Gaussian")


def _sigma_pairs(half: int) -> np.ndarray:
    """Block diagonal of [[0, 1], [-1, 0]] pairs."""
    S = np.zeros((2 * half, 2 * half))
    for j in range(half):
        S[2 * j, 2 * j + 1] = 1.0
        S[2 * j + 1, 2 * j] = -1.0
    return S


def realizable_indices(label, N: int) -> list:
    """Index values realized on the class manifold in dimension N."""
    label = CartanClass.coerce(label)
    if label.needs_even_dim and N % 2:
        raise BadParity(f"class {label.value} needs even dimension, got {N}")
    kind = label.index_kind
    if kind == "zero":
        return [0]
    if kind == "sign":
        return [1, -1]
    step = 2 if label == CartanClass.CII else 1
    return list(range(0, N + 1, step))


def random_member(label, N: int, rng=None, index=None) -> np.ndarray:
    """Random point of a class manifold, optionally with a pinned index.

    For kernel-counting classes ``index`` is dim ker(U - 1); for sign
    classes it is the determinant (D) or Pfaffian (DIII) sign. Classes
    with no invariant accept only index None or 0.
    """
    label = CartanClass.coerce(label)
    rng = np.random.default_rng(rng)
    if label.needs_even_dim and N % 2:
        raise BadParity(f"class {label.value} needs even dimension, got {N}")
    allowed = realizable_indices(label, N)
    if index is not None and label.index_kind == "zero" and index != 0:
        raise ValueError(f"class {label.value} carries no index")
    if index is not None and label.index_kind != "zero" and index not in allowed:
        raise ValueError(f"index {index!r} not realizable for {label.value} at N={N}")

    if label == CartanClass.A:
        return random_unitary(N, rng)
    if label == CartanClass.AI:
        V = random_unitary(N, rng)
        return V @ V.T
    if label == CartanClass.AII:
        V = random_unitary(N, rng)
        return V @ _sigma_pairs(N // 2) @ V.T
    if label == CartanClass.C:
        return random_symplectic_unitary(N, rng)
    if label == CartanClass.CI:
        V = random_symplectic_unitary(N, rng)
        return V @ V.T

    if label in (CartanClass.AIII, CartanClass.BDI):
        k = int(rng.integers(0, N + 1)) if index is None else int(index)
        signs = np.concatenate([np.ones(k), -np.ones(N - k)])
        if label == CartanClass.AIII:
            V = random_unitary(N, rng)
            return (V * signs[None, :]) @ V.conj().T
        O = random_orthogonal(N, rng)
        return (O * signs[None, :]) @ O.T
    if label == CartanClass.D:
        s = int(rng.choice([1, -1])) if index is None else int(index)
        O = random_orthogonal(N, rng)
        if int(round(np.linalg.det(O))) != s:
            O[:, 0] = -O[:, 0]
        return O
    if label == CartanClass.DIII:
        s = int(rng.choice([1, -1])) if index is None else int(index)
        O = random_orthogonal(N, rng)
        if int(round(np.linalg.det(O))) != s:
            O[:, 0] = -O[:, 0]
        return O @ _sigma_pairs(N // 2) @ O.T
    # CII: conjugated projector difference built on symplectic frame columns
    half = N // 2
    m = (int(rng.integers(0, half + 1)) if index is None else int(index) // 2)
    U = random_symplectic_unitary(N, rng)
    cols = list(range(m)) + list(range(half, half + m))
    Phi = U[:, cols]
    return 2.0 * (Phi @ Phi.conj().T) - np.eye(N)
