"""Complex linear algebra on qubit registers.

Operators are dense complex matrices of shape ``(2**k, 2**k)`` acting on k
sites; states are flat complex vectors of length ``2**n``.  Site 1 is the
leftmost tensor factor / most significant bit, so basis state
|b1 b2 ... bn> lives at index sum(b_i * 2**(n - i)).  Every function here
is pure and never mutates its inputs, so the whole module is safe to call
concurrently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "arity_of",
    "register_size_of",
    "identity",
    "kron",
    "embed",
    "apply",
    "frobenius_distance",
    "is_unitary",
    "equal_up_to_global_phase",
    "random_state",
    "random_operator",
    "random_unitary",
    "operator_to_dict",
    "operator_from_dict",
    "save_operator",
    "load_operator",
]


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative residual budget.

    A residual passes when ``residual <= absolute + relative * scale``,
    where ``scale`` is the Frobenius norm of the reference object.
    """

    absolute: float = 1e-10
    relative: float = 1e-12

    def check(self, residual: float, scale: float = 1.0) -> bool:
        return residual <= self.absolute + self.relative * scale


DEFAULT_TOL = Tolerance()


def arity_of(op: np.ndarray) -> int:
    """Number of sites a dense operator acts on (matrix is 2**k square)."""
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"operator must be a square matrix, got shape {op.shape}")
    dim = int(op.shape[0])
    k = dim.bit_length() - 1
    if dim < 2 or 2**k != dim:
        raise ValueError(f"operator dimension {dim} is not a power of two >= 2")
    return k


def register_size_of(state: np.ndarray) -> int:
    """Number of sites of a statevector (length 2**n)."""
    state = np.asarray(state)
    if state.ndim != 1:
        raise ValueError(f"state must be a flat vector, got shape {state.shape}")
    dim = int(state.shape[0])
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise ValueError(f"state length {dim} is not a power of two >= 2")
    return n


def identity(k: int) -> np.ndarray:
    """Identity on a k-site register."""
    return np.eye(2**k, dtype=complex)


def kron(a: np.ndarray, b: np.ndarray, *rest: np.ndarray) -> np.ndarray:
    """Kronecker product; the left factor takes the more significant slots."""
    out = np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    for m in rest:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def _validated_sites(sites: Sequence[int], k: int, n: int) -> tuple[int, ...]:
    sites = tuple(int(s) for s in sites)
    if len(sites) != k:
        raise ValueError(f"operator acts on {k} sites but {len(sites)} were listed")
    if len(set(sites)) != len(sites):
        raise ValueError(f"duplicate site in {sites}")
    for s in sites:
        if not 1 <= s <= n:
            raise ValueError(f"site {s} outside register 1..{n}")
    return sites


def embed(op: np.ndarray, sites: Sequence[int], n: int) -> np.ndarray:
    """Lift an arity-k operator onto an n-site register.

    The operator's first tensor slot attaches to ``sites[0]``, the second
    to ``sites[1]``, and so on; every unlisted site sees the identity.
    """
    op = np.asarray(op, dtype=complex)
    n = int(n)
    k = arity_of(op)
    sites = _validated_sites(sites, k, n)
    if sites == tuple(range(1, n + 1)):
        return op.copy()
    big = np.kron(op, np.eye(2 ** (n - k), dtype=complex)) if k < n else op
    # wire j of `big` is sites[j] - 1 for j < k, then the unlisted wires ascending
    listed = set(sites)
    order = [s - 1 for s in sites] + [w for w in range(n) if w + 1 not in listed]
    perm = np.argsort(order)
    t = big.reshape((2,) * (2 * n))
    t = t.transpose(tuple(perm) + tuple(perm + n))
    return np.ascontiguousarray(t).reshape(2**n, 2**n)


def apply(op: np.ndarray, sites: Sequence[int], state: np.ndarray) -> np.ndarray:
    """Apply an arity-k operator to the listed sites of a statevector.

    Equal to ``embed(op, sites, n) @ state`` but runs in O(2**n * 2**k)
    time and never forms the 2**n x 2**n matrix: the state is viewed as an
    n-axis tensor, the listed axes are brought to the front, and the
    operator multiplies the resulting (2**k, 2**(n-k)) block.
    """
    op = np.asarray(op, dtype=complex)
    state = np.asarray(state, dtype=complex)
    n = register_size_of(state)
    k = arity_of(op)
    sites = _validated_sites(sites, k, n)
    axes = [s - 1 for s in sites]
    t = np.moveaxis(state.reshape((2,) * n), axes, range(k))
    tail = t.shape[k:]
    out = op @ t.reshape(2**k, -1)
    out = np.moveaxis(out.reshape((2,) * k + tail), range(k), axes)
    return out.reshape(-1)


def frobenius_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of a - b; zero iff the operators are equal."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if arity_of(a) != arity_of(b):
        raise ValueError(f"arity mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def is_unitary(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when ||a a+ - 1||_F is within tol (scale = ||1||_F = sqrt(dim))."""
    a = np.asarray(a, dtype=complex)
    k = arity_of(a)
    residual = float(np.linalg.norm(a @ a.conj().T - identity(k)))
    return tol.check(residual, scale=float(np.sqrt(2**k)))


def equal_up_to_global_phase(
    a: np.ndarray, b: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> tuple[bool, float | None]:
    """Test a == exp(i phi) * b for some real phi.

    The phase is estimated from the ratio of the largest-magnitude entry of
    a to the matching entry of b and then verified globally.  Returns
    (True, phi) on success and (False, None) otherwise, including the case
    where b's matching entry is essentially zero.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if arity_of(a) != arity_of(b):
        raise ValueError(f"arity mismatch: {a.shape} vs {b.shape}")
    idx = np.unravel_index(int(np.argmax(np.abs(a))), a.shape)
    peak = abs(a[idx])
    if abs(b[idx]) <= 1e-14 * max(1.0, peak):
        return False, None
    phi = float(np.angle(a[idx] / b[idx]))
    scale = float(np.linalg.norm(b))
    if tol.check(float(np.linalg.norm(a - np.exp(1j * phi) * b)), scale=scale):
        return True, phi
    return False, None


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Unit-norm n-site state with iid complex Gaussian amplitudes."""
    v = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return v / np.linalg.norm(v)


def random_operator(k: int, rng: np.random.Generator) -> np.ndarray:
    """Dense k-site operator with iid complex Gaussian entries."""
    d = 2**k
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def random_unitary(k: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed k-site unitary (QR with phase-fixed diagonal)."""
    q, r = np.linalg.qr(random_operator(k, rng))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def operator_to_dict(op: np.ndarray) -> dict:
    """Portable form: {"arity": k, "dim": 2**k, "entries": [[re, im], ...]}.

    Entries are row-major; floats round-trip exactly through JSON.
    """
    op = np.asarray(op, dtype=complex)
    k = arity_of(op)
    entries = [[float(z.real), float(z.imag)] for z in op.reshape(-1)]
    return {"arity": k, "dim": 2**k, "entries": entries}


def operator_from_dict(data: dict) -> np.ndarray:
    k = int(data["arity"])
    dim = int(data["dim"])
    if dim != 2**k:
        raise ValueError(f"dim {dim} does not match arity {k}")
    entries = data["entries"]
    if len(entries) != dim * dim:
        raise ValueError(f"expected {dim * dim} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=complex)
    return flat.reshape(dim, dim)


def save_operator(op: np.ndarray, path: str | Path) -> None:
    Path(path).write_text(json.dumps(operator_to_dict(op)) + "\n")


def load_operator(path: str | Path) -> np.ndarray:
    return operator_from_dict(json.loads(Path(path).read_text()))
