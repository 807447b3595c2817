"""Dense complex matrix helpers and the permanent kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything in
this module is a pure function.
"""

import os

import numpy as np

DEFAULT_TOL = 1e-12

#: Largest matrix accepted by :func:`permanent`. Override with the
#: ``DUALSWAP_PERMANENT_CAP`` environment variable or the ``cap`` argument.
PERMANENT_CAP = int(os.environ.get("DUALSWAP_PERMANENT_CAP", "16"))


class ShapeError(ValueError):
    pass


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-d complex array."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got {m.ndim}-d input")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    return a @ b


def _require_square(u: np.ndarray, what: str = "matrix"):
    if u.shape[0] != u.shape[1]:
        raise ShapeError(f"{what} must be square, got {u.shape[0]}x{u.shape[1]}")


def is_unitary(u, tol: float = DEFAULT_TOL) -> bool:
    """True iff max-norm of ``u^dagger u - I`` is below ``tol``."""
    u = as_matrix(u)
    _require_square(u)
    if tol <= 0:
        raise ValueError("tol must be positive")
    dev = u.conj().T @ u - np.eye(u.shape[0])
    return bool(np.max(np.abs(dev), initial=0.0) < tol)


def global_phase(a, b) -> complex:
    """Unit scalar ``c`` that best aligns ``c * b`` with ``a``.

    The phase is read off the largest-magnitude entry of ``b``.
    Returns 0 when ``b`` is all zero.
    """
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    if not b.size:
        return 1.0 + 0j
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if b[k] == 0:
        return 0j
    ratio = a[k] / b[k]
    if ratio == 0:
        return 0j
    return complex(ratio / abs(ratio))


def equal_up_to_global_phase(a, b, tol: float = DEFAULT_TOL) -> bool:
    a, b = as_matrix(a), as_matrix(b)
    c = global_phase(a, b)
    if c == 0:
        # b is zero or a vanishes where b peaks; equal only if both are zero
        return bool(np.max(np.abs(a), initial=0.0) < tol and np.max(np.abs(b), initial=0.0) < tol)
    return bool(np.max(np.abs(a - c * b), initial=0.0) < tol)


def permanent(m, cap: int | None = None) -> complex:
    """Permanent by Ryser's formula with Gray-code subset order, O(2^n n).

    >>> permanent([[1, 2], [3, 4]])
    (10+0j)
    """
    a = as_matrix(m)
    _require_square(a)
    n = a.shape[0]
    cap = PERMANENT_CAP if cap is None else cap
    if n > cap:
        raise ValueError(f"permanent of {n}x{n} matrix exceeds the size cap of {cap}")
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(a[0, 0])
    if n == 2:
        return complex(a[0, 0] * a[1, 1] + a[0, 1] * a[1, 0])

    # Gray code walk: step k toggles column = number of trailing zeros of k.
    row_sums = np.zeros(n, dtype=np.complex128)
    in_set = np.zeros(n, dtype=bool)
    total = 0j
    size = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        if in_set[j]:
            row_sums -= a[:, j]
            size -= 1
        else:
            row_sums += a[:, j]
            size += 1
        in_set[j] = not in_set[j]
        term = np.prod(row_sums)
        total += -term if size & 1 else term
    return complex(total if n % 2 == 0 else -total)
