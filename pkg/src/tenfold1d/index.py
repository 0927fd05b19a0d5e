"""Topological indices of boundary unitaries and their junction bounds.

Three kinds of invariant occur across the ten classes: none (the
manifold is connected), a kernel dimension dim ker(U - 1) (chiral
classes, where it counts the +1 eigenvalues of a hermitian unitary),
and a sign (determinant for real orthogonal, Pfaffian for real
antisymmetric orthogonal). The relative index of two bulks lower-bounds
the number of protected zero modes at a junction between them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import KindMismatch, NotInClass
from .linalg import TOL, Tolerances, pfaffian
from .symmetry import CartanClass, _count_kernel, _unpack_unitary, membership

__all__ = [
    "IndexValue",
    "topological_index",
    "relative_index",
    "bulk_consistency_check",
]


@dataclass(frozen=True)
class IndexValue:
    """Topological index with its kind ('zero', 'kernel_dim' or 'sign')."""

    kind: str
    value: int

    def __post_init__(self):
        if self.kind not in ("zero", "kernel_dim", "sign"):
            raise ValueError(f"unknown index kind {self.kind!r}")
        if self.kind == "zero" and self.value != 0:
            raise ValueError("zero-kind index must have value 0")
        if self.kind == "kernel_dim" and self.value < 0:
            raise ValueError("kernel dimension cannot be negative")
        if self.kind == "sign" and self.value not in (1, -1):
            raise ValueError("sign index must be +1 or -1")

    @classmethod
    def zero(cls) -> "IndexValue":
        return cls("zero", 0)

    @classmethod
    def kernel_dim(cls, value: int) -> "IndexValue":
        return cls("kernel_dim", int(value))

    @classmethod
    def sign(cls, value: int) -> "IndexValue":
        return cls("sign", int(value))

    def __str__(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "sign":
            return f"{self.value:+d}"
        return str(self.value)


def _snap_sign(x: float, what: str) -> int:
    if abs(x - 1.0) <= 1e-6:
        return 1
    if abs(x + 1.0) <= 1e-6:
        return -1
    raise NotInClass(f"{what} is {x:.6f}, not within 1e-6 of +1 or -1")


def topological_index(U, label, tol: Tolerances = TOL) -> IndexValue:
    """Index of a boundary unitary within its class manifold.

    Raises NotInClass when the membership test fails, and
    AmbiguousKernel when a kernel eigenvalue falls inside the guard
    band where counting would depend on the tolerance.
    """
    label = CartanClass.coerce(label)
    M = _unpack_unitary(U)
    if not membership(M, label, tol):
        raise NotInClass(f"matrix fails the {label.value} membership test")
    kind = label.index_kind
    if kind == "zero":
        return IndexValue.zero()
    if kind == "kernel_dim":
        # hermitian unitary: spectrum sits at +1 and -1
        evals = np.linalg.eigvalsh(M)
        return IndexValue.kernel_dim(_count_kernel(evals, tol))
    if label == CartanClass.D:
        det = np.linalg.det(M)
        return IndexValue.sign(_snap_sign(float(det.real), "det(U)"))
    return IndexValue.sign(_snap_sign(pfaffian(M, tol), "Pf(U)"))


def relative_index(label, left: IndexValue, right: IndexValue) -> int:
    """Lower bound on protected zero modes from two bulk indices.

    Kernel-dim classes give |right - left|; sign classes give 1 when
    the signs differ; classes without an invariant give 0.
    """
    label = CartanClass.coerce(label)
    kind = label.index_kind
    if left.kind != kind or right.kind != kind:
        raise KindMismatch(
            f"class {label.value} carries {kind!r} indices, "
            f"got {left.kind!r} and {right.kind!r}"
        )
    if kind == "zero":
        return 0
    if kind == "kernel_dim":
        return abs(right.value - left.value)
    return 0 if left.value == right.value else 1


def bulk_consistency_check(label, index_plus: IndexValue, index_minus: IndexValue,
                           N: int) -> bool:
    """Relation between the two boundary indices of a single gapped bulk.

    The decaying and growing half-line planes of one operator are not
    independent: kernel-dim classes satisfy k+ + k- = N, the
    determinant signs of D agree up to (-1)^N, and the Pfaffian signs
    of DIII agree up to (-1)^(N/2). Classes without an invariant always
    pass.
    """
    label = CartanClass.coerce(label)
    kind = label.index_kind
    if index_plus.kind != kind or index_minus.kind != kind:
        raise KindMismatch(
            f"class {label.value} carries {kind!r} indices, "
            f"got {index_plus.kind!r} and {index_minus.kind!r}"
        )
    if kind == "zero":
        return True
    if kind == "kernel_dim":
        return index_plus.value + index_minus.value == N
    if label == CartanClass.D:
        flip = 1 if N % 2 == 0 else -1
        return index_plus.value == flip * index_minus.value
    flip = 1 if (N // 2) % 2 == 0 else -1
    return index_plus.value == flip * index_minus.value
