"""Noisy qubit channels as explicit system+environment dilations.

Each memoryless channel is defined by the isometry its interaction unitary
induces on one (system qubit, fresh environment qubit) pair, with the
environment starting in |0>.  The correlated amplitude damping channel acts
jointly on the two-qubit system and a shared two-qubit environment.  Kraus
operators are obtained by projecting the same isometry onto the environment
basis, K_e = <e|U|0>_E, so the operator-sum route and the dilate-then-trace
route realize the same map by construction.

Channel roster and noise parameter p in [0, 1]:

* ``ADC``  amplitude damping: |1> decays to |0> with probability p, emitting
  one environment excitation.  Two-qubit system, one environment qubit each.
* ``CADC`` correlated amplitude damping: mixes the memoryless map (weight
  1 - mu) with a fully correlated one (weight mu) where only |11> can decay,
  and it decays jointly.  Shared two-qubit environment.
* ``PDC``  phase damping: the environment records which basis state the
  system is in, with no energy exchange.
* ``BFC``  bit flip: each computational state is flipped with probability
  p/2, the flip being recorded in the environment.
* ``PFC``  phase flip: |1> acquires a pi phase with probability p.
  One-qubit system.
* ``BPFC`` bit-phase flip: flip combined with the phase, i.e. a sigma_y
  branch with probability p.  One-qubit system.
* ``DC``   depolarizing: the state survives intact with probability p and is
  otherwise replaced by the maximally mixed one; realized with an identity
  branch of weight (1+p)/2 and a sigma_y branch of weight (1-p)/2, which
  reproduces that convex mixture for real-amplitude pure inputs.  Note the
  orientation: p = 1 is the identity channel, p = 0 full depolarization.
  One-qubit system.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import DensityOperator, SubsystemLayout, qubits, state_vector

#: Kraus operators with Frobenius norm below this are dropped (they appear at
#: the endpoints p = 0, 1 and would only clutter completeness checks).
PRUNE_TOL = 1e-14

#: A Kraus set applied to a state may deviate from completeness by at most this.
COMPLETENESS_TOL = 1e-10


class ChannelKind(enum.Enum):
    ADC = "adc"
    CADC = "cadc"
    PDC = "pdc"
    BFC = "bfc"
    PFC = "pfc"
    BPFC = "bpfc"
    DC = "dc"

    @property
    def n_system_qubits(self) -> int:
        return 2 if self in _TWO_QUBIT_KINDS else 1

    @property
    def shared_environment(self) -> bool:
        return self is ChannelKind.CADC


_TWO_QUBIT_KINDS = frozenset(
    {ChannelKind.ADC, ChannelKind.CADC, ChannelKind.PDC, ChannelKind.BFC}
)


@dataclass(frozen=True)
class ChannelSpec:
    """A channel kind with its noise parameter p and memory weight mu.

    ``mu`` is meaningful for CADC only (0 recovers the memoryless map, 1 the
    fully correlated one) and must be 0 for every other kind.
    """

    kind: ChannelKind
    p: float
    mu: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p!r}")
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must lie in [0, 1], got {self.mu!r}")
        if self.mu != 0.0 and self.kind is not ChannelKind.CADC:
            raise ValueError(f"mu is only meaningful for CADC, got mu={self.mu!r} for {self.kind}")


@dataclass(frozen=True)
class KrausSet:
    """System-space operators representing a channel as sum_i K rho K^dag.

    Sets produced by :func:`kraus_set` satisfy sum_i K^dag K = I to ~1e-15;
    arbitrary sets may be constructed (e.g. to measure their completeness
    defect with :func:`validate_kraus`).
    """

    operators: tuple[np.ndarray, ...]
    source: ChannelSpec

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        if not ops:
            raise ValueError("a Kraus set needs at least one operator")
        d = ops[0].shape[0]
        for k in ops:
            if k.ndim != 2 or k.shape != (d, d):
                raise ValueError("all Kraus operators must be square and same-dimensional")
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]


@dataclass(frozen=True)
class DilationResult:
    """Pure global state over system (x) environment after the interaction."""

    state: np.ndarray
    layout: SubsystemLayout


def _local_isometry(kind: ChannelKind, p: float) -> np.ndarray:
    """Isometry V : H_k -> H_k (x) H_Ek with V|j> = U|j,0>, as a (2,2,2) tensor.

    Index order is V[m, e, j]: system output m, environment output e, system
    input j.
    """
    V = np.zeros((2, 2, 2), dtype=complex)
    if kind is ChannelKind.ADC:
        V[0, 0, 0] = 1.0
        V[1, 0, 1] = np.sqrt(1.0 - p)  # excited state survives
        V[0, 1, 1] = np.sqrt(p)        # decays, photon emitted
    elif kind is ChannelKind.PDC:
        V[0, 0, 0] = 1.0
        V[1, 0, 1] = np.sqrt(1.0 - p)
        V[1, 1, 1] = np.sqrt(p)        # environment tagged, no transition
    elif kind is ChannelKind.BFC:
        keep, flip = np.sqrt(1.0 - p / 2.0), np.sqrt(p / 2.0)
        V[0, 0, 0] = keep
        V[1, 1, 0] = flip
        V[1, 0, 1] = keep
        V[0, 1, 1] = flip
    elif kind is ChannelKind.PFC:
        V[0, 0, 0] = np.sqrt(1.0 - p)
        V[0, 1, 0] = np.sqrt(p)
        V[1, 0, 1] = np.sqrt(1.0 - p)
        V[1, 1, 1] = -np.sqrt(p)       # pi phase on |1>
    elif kind is ChannelKind.BPFC:
        V[0, 0, 0] = np.sqrt(1.0 - p)
        V[1, 1, 0] = 1j * np.sqrt(p)   # sigma_y branch
        V[1, 0, 1] = np.sqrt(1.0 - p)
        V[0, 1, 1] = -1j * np.sqrt(p)
    elif kind is ChannelKind.DC:
        keep, mix = np.sqrt((1.0 + p) / 2.0), np.sqrt((1.0 - p) / 2.0)
        V[0, 0, 0] = keep
        V[1, 1, 0] = 1j * mix          # sigma_y branch
        V[1, 0, 1] = keep
        V[0, 1, 1] = -1j * mix
    else:
        raise ValueError(f"{kind} has no single-qubit interaction")
    return V


def _correlated_isometry(p: float) -> np.ndarray:
    """Fully correlated amplitude damping isometry as a (4,4,4) tensor W[s,e,c].

    Only |11> decays, and it decays jointly into the shared environment
    excitation |11>_E; the other basis states pass through untouched.
    """
    W = np.zeros((4, 4, 4), dtype=complex)
    for c in range(3):
        W[c, 0, c] = 1.0
    W[3, 0, 3] = np.sqrt(1.0 - p)
    W[0, 3, 3] = np.sqrt(p)
    return W


def _local_kraus(kind: ChannelKind, p: float) -> list[np.ndarray]:
    V = _local_isometry(kind, p)
    return [V[:, e, :] for e in range(2)]


def _prune(ops: list[np.ndarray]) -> list[np.ndarray]:
    return [k for k in ops if np.linalg.norm(k) >= PRUNE_TOL]


def dilate(spec: ChannelSpec, system, sys_layout: SubsystemLayout) -> DilationResult:
    """Evolve a pure system state jointly with fresh |0> environment qubits.

    The returned layout appends one environment label ``E_<label>`` per
    system qubit; for CADC the two environment qubits are acted on jointly
    but keep individual labels so partial traces can address them.

    Raises ValueError when the system arity does not match the channel kind,
    when a depolarizing input has complex amplitudes (its identity-plus-
    sigma_y realization describes the intended mixture only on real
    amplitude vectors), or for CADC with fractional mu (the mixed map has no
    dilation on a two-qubit environment; use the Kraus route instead).
    """
    kind = spec.kind
    n = kind.n_system_qubits
    if len(sys_layout.labels) != n or any(d != 2 for d in sys_layout.dims):
        raise ValueError(
            f"{kind.value} acts on {n} qubit(s); layout has dims {sys_layout.dims}"
        )
    psi = state_vector(system)
    if psi.size != sys_layout.dim:
        raise ValueError(f"state dimension {psi.size} != layout dimension {sys_layout.dim}")

    env_labels = tuple(f"E_{lab}" for lab in sys_layout.labels)
    out_layout = qubits(*sys_layout.labels, *env_labels)

    if kind is ChannelKind.DC and float(np.abs(psi.imag).max()) > 1e-12:
        raise ValueError("the depolarizing dilation requires real amplitudes")

    if kind is ChannelKind.CADC:
        if spec.mu == 1.0:
            W = _correlated_isometry(spec.p)
            out = np.einsum("sec,c->se", W, psi)
        elif spec.mu == 0.0:
            V = _local_isometry(ChannelKind.ADC, spec.p)
            out = np.einsum("aej,bfk,jk->abef", V, V, psi.reshape(2, 2))
        else:
            raise ValueError(
                "CADC with 0 < mu < 1 is a proper mixture; it has no dilation on "
                "a two-qubit environment (apply kraus_set instead)"
            )
    elif n == 2:
        V = _local_isometry(kind, spec.p)
        out = np.einsum("aej,bfk,jk->abef", V, V, psi.reshape(2, 2))
    else:
        V = _local_isometry(kind, spec.p)
        out = np.einsum("aej,j->ae", V, psi)

    return DilationResult(state_vector(out.reshape(-1)), out_layout)


def kraus_set(spec: ChannelSpec) -> KrausSet:
    """Kraus operators of the channel, K_e = <e|U|0>_E, zero operators pruned.

    Memoryless two-qubit kinds return the product set {K_i (x) K_j}; CADC
    returns {sqrt(1-mu) K_i (x) K_j} U {sqrt(mu) K_e^corr}.
    """
    kind = spec.kind
    if kind is ChannelKind.CADC:
        local = _local_kraus(ChannelKind.ADC, spec.p)
        ops = [
            np.sqrt(1.0 - spec.mu) * np.kron(ka, kb) for ka in local for kb in local
        ]
        W = _correlated_isometry(spec.p)
        ops += [np.sqrt(spec.mu) * W[:, e, :] for e in range(4)]
    elif kind.n_system_qubits == 2:
        local = _local_kraus(kind, spec.p)
        ops = [np.kron(ka, kb) for ka in local for kb in local]
    else:
        ops = _local_kraus(kind, spec.p)
    return KrausSet(tuple(_prune(ops)), spec)


def validate_kraus(ks: KrausSet) -> float:
    """Completeness defect max_ij |sum_e K^dag K - I|_ij."""
    d = ks.dim
    acc = np.zeros((d, d), dtype=complex)
    for k in ks.operators:
        acc += k.conj().T @ k
    return float(np.abs(acc - np.eye(d)).max())


def apply_kraus(rho: DensityOperator, ks: KrausSet) -> DensityOperator:
    """Apply the operator-sum map sum_e K rho K^dag.

    Raises ValueError on dimension mismatch or when the set's completeness
    defect exceeds ``COMPLETENESS_TOL`` (the map would not preserve trace).
    """
    if ks.dim != rho.dim:
        raise ValueError(f"Kraus dimension {ks.dim} != state dimension {rho.dim}")
    defect = validate_kraus(ks)
    if defect > COMPLETENESS_TOL:
        raise ValueError(f"incomplete Kraus set: defect {defect!r}")
    out = np.zeros_like(rho.mat)
    for k in ks.operators:
        out = out + k @ rho.mat @ k.conj().T
    return DensityOperator(out, rho.layout)
