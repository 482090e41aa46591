"""Single-qubit reduced states, von Neumann entropy and multipartite mutual information."""
from __future__ import annotations

import numpy as np

from ..errors import DomainError, NumericalDomainError
from ..network import PureState, StepOperator, evolve, evolve_density

EIG_CLAMP = 1e-12
PSD_TOL = 1e-10


def reduced_qubit_state(state: PureState, i: int) -> np.ndarray:
    """2x2 density matrix of qubit ``i`` with every other qubit traced out."""
    q = state.qubit_count
    if not 0 <= i < q:
        raise DomainError(f"qubit {i} out of range for {q} qubits")
    if not state.is_sparse:
        t = state.amplitudes.reshape(1 << i, 2, 1 << (q - 1 - i))
        return np.einsum("aib,ajb->ij", t, t.conj())
    return _reduced_from_support(state, i)


def _reduced_from_support(state: PureState, i: int) -> np.ndarray:
    idx, val = state.support()
    mask = 1 << (state.qubit_count - 1 - i)
    bit = (idx & mask) != 0
    p = np.abs(val) ** 2
    rho = np.zeros((2, 2), dtype=complex)
    rho[0, 0] = p[~bit].sum()
    rho[1, 1] = p[bit].sum()
    lo, vlo = idx[~bit], val[~bit]
    pos = np.searchsorted(idx, lo | mask)
    pos = np.minimum(pos, len(idx) - 1)
    hit = idx[pos] == (lo | mask)
    rho[0, 1] = np.sum(vlo[hit] * val[pos[hit]].conj())
    rho[1, 0] = np.conj(rho[0, 1])
    return rho


def reduced_states(state: PureState) -> list[np.ndarray]:
    return [reduced_qubit_state(state, i) for i in range(state.qubit_count)]


def validate_density(rho: np.ndarray, tol: float = 1e-12) -> None:
    """Raise unless ``rho`` is Hermitian, unit trace and PSD within tolerance."""
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise NumericalDomainError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise NumericalDomainError(f"trace {np.trace(rho).real!r} is not 1")
    w = np.linalg.eigvalsh(rho)
    if w.min() < -PSD_TOL or w.max() > 1 + PSD_TOL:
        raise NumericalDomainError(f"eigenvalues {w} outside [0, 1]")


def von_neumann_entropy(rho: np.ndarray) -> float:
    """``-sum(l log2 l)`` over eigenvalues, in bits."""
    w = np.linalg.eigvalsh(rho)
    if w.min() < -PSD_TOL:
        raise NumericalDomainError(f"negative eigenvalue {w.min():.3g}")
    w = w[(w > EIG_CLAMP) & (w < 1 - EIG_CLAMP)]
    return float(-(w * np.log2(w)).sum()) + 0.0


def multipartite_mutual_information(state: PureState) -> float:
    """Sum of single-qubit entropies; the global term vanishes for a pure state."""
    total = sum(von_neumann_entropy(reduced_qubit_state(state, i))
                for i in range(state.qubit_count))
    return max(total, 0.0)


def partial_trace_qubit(rho: np.ndarray, q: int, i: int) -> np.ndarray:
    """Single-qubit marginal of a full ``2**q`` density matrix."""
    t = rho.reshape(1 << i, 2, 1 << (q - 1 - i), 1 << i, 2, 1 << (q - 1 - i))
    return np.einsum("aibajb->ij", t)


def mutual_information_density(rho: np.ndarray, q: int) -> float:
    """Multipartite mutual information computed from a full density matrix."""
    total = sum(von_neumann_entropy(partial_trace_qubit(rho, q, i)) for i in range(q))
    return max(total - von_neumann_entropy(rho), 0.0)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(0.5 * np.abs(np.linalg.eigvalsh(a - b)).sum())


def _binary_entropy_from_blocks(r00, r11, r01) -> np.ndarray:
    # eigenvalues of [[r00, r01], [r01*, r11]] in closed form
    gap = np.sqrt((r00 - r11) ** 2 + 4 * np.abs(r01) ** 2)
    out = np.zeros_like(r00)
    for lam in ((r00 + r11 + gap) / 2, (r00 + r11 - gap) / 2):
        ok = (lam > EIG_CLAMP) & (lam < 1 - EIG_CLAMP)
        out[ok] -= lam[ok] * np.log2(lam[ok])
    return out


def im_batch(amplitudes: np.ndarray, q: int) -> np.ndarray:
    """I_m for each row of a ``(T, 2**q)`` array of pure-state amplitudes."""
    a = np.asarray(amplitudes)
    total = np.zeros(a.shape[0])
    for i in range(q):
        t = a.reshape(a.shape[0], 1 << i, 2, 1 << (q - 1 - i))
        lo, hi = t[:, :, 0, :], t[:, :, 1, :]
        r00 = np.sum(np.abs(lo) ** 2, axis=(1, 2))
        r11 = np.sum(np.abs(hi) ** 2, axis=(1, 2))
        r01 = np.sum(lo * hi.conj(), axis=(1, 2))
        total += _binary_entropy_from_blocks(r00, r11, r01)
    return np.maximum(total, 0.0)


def trajectory_chunks(W: StepOperator, initial: PureState, steps: int, chunk: int = 2048):
    """Dense amplitude arrays for ``t = 0..steps``, ``chunk`` rows at a time."""
    state = initial.amplitudes
    remaining = steps + 1
    while remaining:
        n = min(chunk, remaining)
        block = np.empty((n, len(state)), dtype=complex)
        for r in range(n):
            block[r] = state
            nxt = np.empty_like(state)
            nxt[W.index_map] = state
            state = nxt
        remaining -= n
        yield block


def im_series(W: StepOperator, initial: PureState, steps: int) -> np.ndarray:
    """I_m at ``t = 0..steps`` along the trajectory."""
    if initial.is_sparse:
        return np.array([multipartite_mutual_information(s) for s in evolve(initial, W, steps)])
    return np.concatenate([im_batch(b, W.qubit_count)
                           for b in trajectory_chunks(W, initial, steps)])


def im_series_density(W: StepOperator, initial: PureState, steps: int) -> np.ndarray:
    """Same series via full density-matrix evolution; a check on the pure backend."""
    rho = initial.density()
    out = []
    for _ in range(steps + 1):
        out.append(mutual_information_density(rho, W.qubit_count))
        rho = evolve_density(rho, W)
    return np.array(out)
