"""Dense complex linear algebra over labeled tensor-product spaces.

States and operators are plain numpy arrays; a :class:`SubsystemLayout` names
the tensor factors so that partial traces and partial transpositions can be
requested by subsystem label instead of raw index arithmetic.  The basis
convention throughout is the computational product basis ordered with the
leftmost label as the most significant digit, i.e. for a layout (A, B) of two
qubits the basis is |00>, |01>, |10>, |11> with A's bit first.

Everything here is immutable after construction and all operations are pure
functions, so values can be shared freely between concurrent workers.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from typing import Iterable

import numpy as np

# Structural checks (Hermiticity, trace, normalization) hold to near machine
# precision; spectral checks lose a couple of digits to the eigensolver.
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
NORM_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered subsystem labels with their local dimensions."""

    labels: tuple[str, ...]
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(self.labels) != len(self.dims):
            raise ValueError(
                f"{len(self.labels)} labels but {len(self.dims)} dimensions"
            )
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate subsystem labels in {self.labels}")
        if any(d < 2 for d in self.dims):
            raise ValueError(f"local dimensions must be >= 2, got {self.dims}")

    @property
    def dim(self) -> int:
        """Total Hilbert-space dimension (product of local dimensions)."""
        return math.prod(self.dims)

    def position(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown subsystem label {label!r}; have {self.labels}") from None

    def positions(self, labels: Iterable[str]) -> list[int]:
        """Factor positions of ``labels``, sorted into layout order."""
        return sorted(self.position(lab) for lab in labels)

    def restrict(self, keep: Iterable[str]) -> "SubsystemLayout":
        """Sub-layout containing only ``keep``, in the original factor order."""
        pos = self.positions(keep)
        return SubsystemLayout(
            tuple(self.labels[i] for i in pos), tuple(self.dims[i] for i in pos)
        )


def qubits(*labels: str) -> SubsystemLayout:
    """Layout of one qubit per label."""
    return SubsystemLayout(tuple(labels), (2,) * len(labels))


def state_vector(amplitudes) -> np.ndarray:
    """Validate a normalized complex amplitude vector and freeze it.

    Raises ValueError when | ||psi||^2 - 1 | exceeds ``NORM_TOL``.
    """
    psi = np.array(amplitudes, dtype=complex).reshape(-1)
    norm2 = float(np.vdot(psi, psi).real)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise ValueError(f"state vector is not normalized: ||psi||^2 = {norm2!r}")
    psi.setflags(write=False)
    return psi


@dataclass(frozen=True)
class DensityOperator:
    """A labeled density matrix: Hermitian, unit trace, positive semidefinite.

    Construction enforces Hermiticity and trace to ``1e-12`` and rejects
    eigenvalues below ``EIGENVALUE_FLOOR``; round-off negatives above the
    floor are tolerated here and clamped where entropies are evaluated.
    """

    mat: np.ndarray
    layout: SubsystemLayout
    # Constructors that are positive by construction (a projector of a
    # normalized vector) may skip the eigensolve; spectra are still bounded
    # by the Hermiticity and trace checks plus the rank-1 structure.
    check_spectrum: InitVar[bool] = True

    def __post_init__(self, check_spectrum: bool):
        mat = np.array(self.mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        if mat.shape[0] != self.layout.dim:
            raise ValueError(
                f"matrix dimension {mat.shape[0]} does not match layout "
                f"{self.layout.labels} of dimension {self.layout.dim}"
            )
        herm_defect = float(np.abs(mat - mat.conj().T).max())
        if herm_defect > HERMITIAN_TOL:
            raise ValueError(f"matrix is not Hermitian: defect {herm_defect!r}")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must be 1, got {tr!r}")
        if check_spectrum:
            lo = float(np.linalg.eigvalsh(mat)[0])
            if lo < EIGENVALUE_FLOOR:
                raise ValueError(f"minimum eigenvalue {lo!r} below {EIGENVALUE_FLOOR}")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product (a x b)[(i*rb + k), (j*cb + l)] = a[i,j] * b[k,l]."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("tensor_product expects two matrices")
    return np.kron(a, b)


def outer(psi, layout: SubsystemLayout) -> DensityOperator:
    """Rank-1 projector |psi><psi| as a density operator on ``layout``."""
    psi = state_vector(psi)
    if psi.size != layout.dim:
        raise ValueError(
            f"state of dimension {psi.size} does not match layout of dimension {layout.dim}"
        )
    return DensityOperator(np.outer(psi, psi.conj()), layout, check_spectrum=False)


def partial_trace(rho: DensityOperator, keep: Iterable[str]) -> DensityOperator:
    """Trace out every subsystem not named in ``keep``.

    The result keeps the original factor order.  Keeping every label returns
    the operator unchanged.
    """
    keep = set(keep)
    if not keep:
        raise ValueError("must keep at least one subsystem")
    pos_keep = rho.layout.positions(keep)
    n = len(rho.layout.dims)
    if len(pos_keep) == n:
        return rho
    dims = rho.layout.dims
    tensor = rho.mat.reshape(dims + dims)
    remaining = list(dims)
    for i in sorted(set(range(n)) - set(pos_keep), reverse=True):
        tensor = np.trace(tensor, axis1=i, axis2=i + len(remaining))
        remaining.pop(i)
    d = int(np.prod(remaining))
    return DensityOperator(tensor.reshape(d, d), rho.layout.restrict(keep))


def partial_transpose(rho: DensityOperator, subsystem: str) -> np.ndarray:
    """Transpose the indices of one factor only.

    Returns a bare matrix (the result of transposing an entangled state need
    not be positive, so it is not a density operator).  Applying the same
    transposition twice restores the input.
    """
    i = rho.layout.position(subsystem)
    dims = rho.layout.dims
    n = len(dims)
    tensor = rho.mat.reshape(dims + dims)
    out = np.swapaxes(tensor, i, i + n).reshape(rho.layout.dim, rho.layout.dim)
    out = np.ascontiguousarray(out)
    out.setflags(write=False)
    return out


def hermitian_eigenvalues(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Raises ValueError for non-square input or a Hermiticity defect above
    ``tol``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    defect = float(np.abs(m - m.conj().T).max())
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: defect {defect!r} > {tol!r}")
    return np.linalg.eigvalsh(m)


def purity(rho: DensityOperator) -> float:
    """Tr rho^2, in [1/d, 1]."""
    return float(np.einsum("ij,ji->", rho.mat, rho.mat).real)
