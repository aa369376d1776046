"""Exact arithmetic in cyclotomic integer rings Z[zeta_n].

A scalar is the canonical residue of an integer polynomial in zeta_n modulo
the n-th cyclotomic polynomial Phi_n, stored as a coefficient vector of
length deg(Phi_n) = phi(n).  Canonical forms are unique, so equality of
complex values reduces to equality of integer vectors; every downstream
certification in this package bottoms out in such comparisons.

Matrices over the ring are stored as (rows, cols, deg) arrays of Python
integers.  Products are computed as one integer matrix multiplication per
pair of coefficient slots followed by reduction modulo Phi_n.  When an
a-priori bound shows the intermediate coefficients fit in int64, the
multiplication runs on native int64 arrays; otherwise it runs on object
arrays of Python ints.  Both paths are exact and bit-identical.

There is no floating-point code in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

__all__ = [
    "OrderMismatchError",
    "DimensionMismatchError",
    "cyclotomic_polynomial",
    "root_of_unity",
    "CycScalar",
    "CycMatrix",
]

_INT64_SAFE = 2**62  # headroom below 2**63 - 1


class OrderMismatchError(ValueError):
    """Operands live in cyclotomic rings of incompatible orders."""


class DimensionMismatchError(ValueError):
    """Matrix operands have non-conforming shapes."""


def _poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Divide integer polynomials (little-endian), requiring a zero remainder.

    The divisor must be monic, so the division stays in Z[x].
    """
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = rem[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    if any(rem):
        raise ValueError("division is not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Return Phi_n as a little-endian integer coefficient tuple (monic).

    Computed by exact division of x^n - 1 by the product of Phi_d over the
    proper divisors d of n.
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


@dataclass(frozen=True)
class _Ring:
    """Precomputed reduction data for Z[zeta_n]."""

    order: int
    degree: int
    powers: np.ndarray     # (maxexp+1, degree) object; row t = x^t mod Phi_n
    fold_l1: int           # growth factor of folding exponents d..2d-2 back
    conj: np.ndarray       # (degree, degree) object; row i = conj of x^i
    conj_l1: int
    power_rows: tuple[tuple[int, ...], ...]  # python view of `powers`


@lru_cache(maxsize=None)
def _ring(n: int) -> _Ring:
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    maxexp = max(n - 1, 2 * d - 2, 0)
    rows: list[list[int]] = []
    for t in range(maxexp + 1):
        if t < d:
            row = [0] * d
            row[t] = 1
        else:
            # x^t = x * x^(t-1), then fold x^d = -(phi head) back in.
            prev = rows[t - 1]
            row = [0] + prev[: d - 1]
            c = prev[d - 1]
            if c:
                row = [r - c * p for r, p in zip(row, phi[:d])]
        rows.append(row)
    powers = np.empty((maxexp + 1, d), dtype=object)
    powers[:] = rows
    powers.setflags(write=False)
    conj_rows = [rows[(n - i) % n] for i in range(d)]
    conj = np.empty((d, d), dtype=object)
    conj[:] = conj_rows
    conj.setflags(write=False)
    # |out_j| <= conv_max * (1 + sum over folded exponents t of |row_t[j]|)
    fold_l1 = 1 + max(
        (sum(abs(rows[t][j]) for t in range(d, 2 * d - 1))
         for j in range(d)),
        default=0)
    cl1 = max(sum(abs(c) for c in row) for row in conj_rows)
    return _Ring(n, d, powers, fold_l1, conj, cl1,
                 tuple(tuple(r) for r in rows))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _lift_map(n_from: int, n_to: int) -> tuple[np.ndarray, int]:
    """Basis-change matrix sending Z[zeta_{n_from}] into Z[zeta_{n_to}]."""
    if n_to % n_from != 0:
        raise OrderMismatchError(
            f"order {n_from} does not divide target order {n_to}")
    step = n_to // n_from
    src = _ring(n_from)
    dst = _ring(n_to)
    mat = np.empty((src.degree, dst.degree), dtype=object)
    for i in range(src.degree):
        mat[i] = dst.powers[i * step]
    mat.setflags(write=False)
    l1 = max(sum(abs(c) for c in mat[i]) for i in range(src.degree))
    return mat, l1


# ---------------------------------------------------------------------------
# scalars


class CycScalar:
    """An exact cyclotomic integer: canonical residue mod Phi_n.

    Immutable; `coeffs` has length phi(n), and two scalars of equal order
    represent the same complex number iff their coefficient vectors match.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        ring = _ring(order)
        cs = tuple(int(c) for c in coeffs)
        if len(cs) != ring.degree:
            raise ValueError(
                f"expected {ring.degree} coefficients for order {order}, "
                f"got {len(cs)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    @classmethod
    def from_int(cls, value: int, order: int = 1) -> "CycScalar":
        ring = _ring(order)
        return cls(order, (int(value),) + (0,) * (ring.degree - 1))

    @classmethod
    def zero(cls, order: int = 1) -> "CycScalar":
        return cls.from_int(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CycScalar":
        return cls.from_int(1, order)

    # -- ring operations (operands must share an order; lift first) --------

    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, int):
            return CycScalar.from_int(other, self.order)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar(self.order,
                         tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar(self.order,
                         tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycScalar(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ring = _ring(self.order)
        d = ring.degree
        conv = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        conv[i + j] += a * b
        out = list(conv[:d])
        for t in range(d, 2 * d - 1):
            c = conv[t]
            if c:
                row = ring.power_rows[t]
                for j in range(d):
                    out[j] += c * row[j]
        return CycScalar(self.order, out)

    __rmul__ = __mul__

    def conjugate(self) -> "CycScalar":
        """Complex conjugate: zeta^k maps to zeta^(n-k), then reduce."""
        ring = _ring(self.order)
        d = ring.degree
        out = [0] * d
        for i, a in enumerate(self.coeffs):
            if a:
                row = ring.power_rows[(self.order - i) % self.order]
                for j in range(d):
                    out[j] += a * row[j]
        return CycScalar(self.order, out)

    def abs_squared(self) -> "CycScalar":
        """Exact a * conj(a)."""
        return self * self.conjugate()

    def lift_to_order(self, order: int) -> "CycScalar":
        """Re-express the same complex number in Z[zeta_order]."""
        if order == self.order:
            return self
        mat, _ = _lift_map(self.order, order)
        d2 = _ring(order).degree
        out = [0] * d2
        for i, a in enumerate(self.coeffs):
            if a:
                row = mat[i]
                for j in range(d2):
                    out[j] += a * row[j]
        return CycScalar(order, out)

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational_integer(self) -> bool:
        """Whether the value lies in Z (canonical form is a constant)."""
        return not any(self.coeffs[1:])

    def as_integer(self) -> int | None:
        """The value as a Python int when rational, else None."""
        return self.coeffs[0] if self.is_rational_integer else None

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycScalar.from_int(other, self.order)
        if not isinstance(other, CycScalar):
            return NotImplemented
        if other.order == self.order:
            return self.coeffs == other.coeffs
        n = _lcm(self.order, other.order)
        return self.lift_to_order(n).coeffs == other.lift_to_order(n).coeffs

    __hash__ = None  # canonical keys are (order, coeffs); see key()

    def key(self) -> tuple:
        return (self.order, self.coeffs)

    def __repr__(self):
        return f"CycScalar(order={self.order}, coeffs={self.coeffs})"


def root_of_unity(n: int, k: int) -> CycScalar:
    """zeta_n^k in canonical form (exponent mod n, residue mod Phi_n)."""
    ring = _ring(n)
    return CycScalar(n, ring.power_rows[k % n])


# ---------------------------------------------------------------------------
# matrices


def _as_object(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return arr
    return arr.astype(object)


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(np.abs(arr).max())


def _reduce_slices(slices: list, ring: _Ring) -> np.ndarray:
    """Fold coefficient slots >= degree back using x^t mod Phi_n rows."""
    d = ring.degree
    out = [slices[j].copy() if j < len(slices) else None for j in range(d)]
    shape = slices[0].shape
    dtype = slices[0].dtype
    for j in range(d):
        if out[j] is None:
            out[j] = np.zeros(shape, dtype=dtype)
    for t in range(d, len(slices)):
        c = slices[t]
        row = ring.powers[t]
        for j in range(d):
            if row[j]:
                out[j] += c * int(row[j])
    return np.stack(out, axis=-1)


def _add_slices(a: list, b: list) -> list:
    out = list(a) if len(a) >= len(b) else list(b)
    short = b if len(a) >= len(b) else a
    out = [s.copy() for s in out]
    for i, s in enumerate(short):
        out[i] += s
    return out


def _conv_slices(a: list, b: list, combine) -> list:
    """Convolution of coefficient-slice lists; Karatsuba above the base size.

    `combine` is the bilinear slice product (matmul, elementwise, Kronecker).
    """
    da, db = len(a), len(b)
    if min(da, db) <= 1:
        out: list = [None] * (da + db - 1)
        for i in range(da):
            for j in range(db):
                p = combine(a[i], b[j])
                out[i + j] = p if out[i + j] is None else out[i + j] + p
        return out
    h = (max(da, db) + 1) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]

    def accumulate(target, part, offset):
        for i, s in enumerate(part):
            j = offset + i
            target[j] = s if target[j] is None else target[j] + s

    out = [None] * (da + db - 1)
    if not a1 or not b1:
        accumulate(out, _conv_slices(a0, b0, combine), 0)
        if a1:
            accumulate(out, _conv_slices(a1, b0, combine), h)
        if b1:
            accumulate(out, _conv_slices(a0, b1, combine), h)
        return out
    p0 = _conv_slices(a0, b0, combine)
    p2 = _conv_slices(a1, b1, combine)
    mid = _conv_slices(_add_slices(a0, a1), _add_slices(b0, b1), combine)
    for i, s in enumerate(p0):
        mid[i] = mid[i] - s
    for i, s in enumerate(p2):
        mid[i] = mid[i] - s
    accumulate(out, p0, 0)
    accumulate(out, mid, h)
    accumulate(out, p2, 2 * h)
    return out


def _kara_growth(d: int) -> int:
    # conservative magnitude growth of the Karatsuba recursion vs schoolbook
    levels = 0
    while (1 << levels) < d:
        levels += 1
    return 3 * 8**levels


def _mul_arrays(a: np.ndarray, b: np.ndarray, ring: _Ring, inner: int,
                combine) -> np.ndarray:
    """Shared core for matrix and entrywise products with overflow guard."""
    d = ring.degree
    bound = (_max_abs(a) * _max_abs(b) * max(inner, 1) * d
             * ring.fold_l1 * _kara_growth(d))
    if bound < _INT64_SAFE:
        a, b = a.astype(np.int64), b.astype(np.int64)
    else:
        a, b = _as_object(a), _as_object(b)
    slices = _conv_slices([a[..., i] for i in range(d)],
                          [b[..., i] for i in range(d)], combine)
    return _as_object(_reduce_slices(slices, ring))


def _linear_map(arr: np.ndarray, mat: np.ndarray, mat_l1: int) -> np.ndarray:
    """Apply a coefficient-basis change along the trailing axis."""
    bound = _max_abs(arr) * arr.shape[-1] * mat_l1
    if bound < _INT64_SAFE:
        out = np.tensordot(arr.astype(np.int64), mat.astype(np.int64),
                           axes=([arr.ndim - 1], [0]))
    else:
        out = np.tensordot(_as_object(arr), _as_object(mat),
                           axes=([arr.ndim - 1], [0]))
    return _as_object(out)


class CycMatrix:
    """A dense rectangular matrix over Z[zeta_n], all entries one order.

    Immutable.  The backing array has shape (rows, cols, phi(n)) and holds
    Python integers.
    """

    __slots__ = ("order", "_arr")

    def __init__(self, order: int, arr: np.ndarray, _copy: bool = True):
        ring = _ring(order)
        if arr.ndim != 3 or arr.shape[2] != ring.degree:
            raise ValueError(
                f"backing array must be (rows, cols, {ring.degree})")
        a = _as_object(arr)
        if _copy:
            a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_arr", a)

    def __setattr__(self, name, value):
        raise AttributeError("CycMatrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int = 1) -> "CycMatrix":
        d = _ring(order).degree
        arr = np.zeros((rows, cols, d), dtype=object)
        return cls(order, arr, _copy=False)

    @classmethod
    def identity(cls, n: int, order: int = 1) -> "CycMatrix":
        d = _ring(order).degree
        arr = np.zeros((n, n, d), dtype=object)
        for i in range(n):
            arr[i, i, 0] = 1
        return cls(order, arr, _copy=False)

    @classmethod
    def ones(cls, rows: int, cols: int, order: int = 1) -> "CycMatrix":
        d = _ring(order).degree
        arr = np.zeros((rows, cols, d), dtype=object)
        arr[:, :, 0] = 1
        return cls(order, arr, _copy=False)

    @classmethod
    def from_int_matrix(cls, ints, order: int = 1) -> "CycMatrix":
        m = np.asarray(ints)
        if m.ndim != 2:
            raise ValueError("expected a 2-D integer array")
        d = _ring(order).degree
        arr = np.zeros(m.shape + (d,), dtype=object)
        arr[:, :, 0] = m.astype(object)
        return cls(order, arr, _copy=False)

    @classmethod
    def diagonal(cls, scalars) -> "CycMatrix":
        """Square matrix with the given CycScalars on the diagonal."""
        scalars = list(scalars)
        order = 1
        for s in scalars:
            order = _lcm(order, s.order)
        n = len(scalars)
        d = _ring(order).degree
        arr = np.zeros((n, n, d), dtype=object)
        for i, s in enumerate(scalars):
            arr[i, i, :] = s.lift_to_order(order).coeffs
        return cls(order, arr, _copy=False)

    @classmethod
    def from_scalars(cls, rows) -> "CycMatrix":
        """Build from a nested sequence of CycScalars (lifted to one order)."""
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        order = 1
        for r in rows:
            for s in r:
                order = _lcm(order, s.order)
        d = _ring(order).degree
        arr = np.zeros((len(rows), len(rows[0]), d), dtype=object)
        for i, r in enumerate(rows):
            if len(r) != len(rows[0]):
                raise DimensionMismatchError("ragged rows")
            for j, s in enumerate(r):
                arr[i, j, :] = s.lift_to_order(order).coeffs
        return cls(order, arr, _copy=False)

    # -- shape and access ----------------------------------------------------

    @property
    def rows(self) -> int:
        return self._arr.shape[0]

    @property
    def cols(self) -> int:
        return self._arr.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._arr.shape[:2]

    @property
    def array(self) -> np.ndarray:
        """Read-only (rows, cols, deg) coefficient array."""
        return self._arr

    def entry(self, r: int, c: int) -> CycScalar:
        return CycScalar(self.order, tuple(self._arr[r, c]))

    def submatrix(self, row_slice, col_slice) -> "CycMatrix":
        return CycMatrix(self.order, self._arr[row_slice, col_slice])

    # -- order handling ------------------------------------------------------

    def lift_to_order(self, order: int) -> "CycMatrix":
        if order == self.order:
            return self
        mat, l1 = _lift_map(self.order, order)
        return CycMatrix(order, _linear_map(self._arr, mat, l1), _copy=False)

    @staticmethod
    def common_order(*mats: "CycMatrix") -> int:
        n = 1
        for m in mats:
            n = _lcm(n, m.order)
        return n

    def _aligned(self, other: "CycMatrix"):
        n = _lcm(self.order, other.order)
        return self.lift_to_order(n), other.lift_to_order(n)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._aligned(other)
        if a.shape != b.shape:
            raise DimensionMismatchError(f"{a.shape} + {b.shape}")
        return CycMatrix(a.order, a._arr + b._arr, _copy=False)

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._aligned(other)
        if a.shape != b.shape:
            raise DimensionMismatchError(f"{a.shape} - {b.shape}")
        return CycMatrix(a.order, a._arr - b._arr, _copy=False)

    def __neg__(self) -> "CycMatrix":
        return CycMatrix(self.order, -self._arr, _copy=False)

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._aligned(other)
        if a.cols != b.rows:
            raise DimensionMismatchError(
                f"cannot multiply {a.shape} by {b.shape}")
        ring = _ring(a.order)
        out = _mul_arrays(a._arr, b._arr, ring, a.cols,
                          lambda x, y: x @ y)
        return CycMatrix(a.order, out, _copy=False)

    def scalar_mul(self, s) -> "CycMatrix":
        """Multiply every entry by a CycScalar or Python int."""
        if isinstance(s, int):
            return CycMatrix(self.order, self._arr * s, _copy=False)
        n = _lcm(self.order, s.order)
        a = self.lift_to_order(n)
        sv = np.empty((1, 1, _ring(n).degree), dtype=object)
        sv[0, 0, :] = s.lift_to_order(n).coeffs
        ring = _ring(n)
        out = _mul_arrays(a._arr, sv, ring, 1, lambda x, y: x * y)
        return CycMatrix(n, out, _copy=False)

    def entrywise_mul(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._aligned(other)
        if a.shape != b.shape:
            raise DimensionMismatchError(f"{a.shape} vs {b.shape}")
        ring = _ring(a.order)
        out = _mul_arrays(a._arr, b._arr, ring, 1, lambda x, y: x * y)
        return CycMatrix(a.order, out, _copy=False)

    def conjugate_entries(self) -> "CycMatrix":
        ring = _ring(self.order)
        return CycMatrix(self.order,
                         _linear_map(self._arr, ring.conj, ring.conj_l1),
                         _copy=False)

    def adjoint(self) -> "CycMatrix":
        """Conjugate transpose."""
        ring = _ring(self.order)
        arr = self._arr.transpose(1, 0, 2)
        return CycMatrix(self.order, _linear_map(arr, ring.conj, ring.conj_l1),
                         _copy=False)

    def transpose(self) -> "CycMatrix":
        return CycMatrix(self.order, self._arr.transpose(1, 0, 2))

    def kron(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._aligned(other)
        ring = _ring(a.order)
        out = _mul_arrays(a._arr, b._arr, ring, 1,
                          lambda x, y: np.kron(x, y))
        return CycMatrix(a.order, out, _copy=False)

    def abs_squared_entries(self) -> "CycMatrix":
        """Entrywise a * conj(a); exact squared moduli for unimodular sums."""
        return self.entrywise_mul(self.conjugate_entries())

    @staticmethod
    def vstack(mats) -> "CycMatrix":
        mats = list(mats)
        n = CycMatrix.common_order(*mats)
        lifted = [m.lift_to_order(n) for m in mats]
        if len({m.cols for m in lifted}) != 1:
            raise DimensionMismatchError("vstack needs equal column counts")
        return CycMatrix(n, np.concatenate([m._arr for m in lifted], axis=0),
                         _copy=False)

    @staticmethod
    def hstack(mats) -> "CycMatrix":
        mats = list(mats)
        n = CycMatrix.common_order(*mats)
        lifted = [m.lift_to_order(n) for m in mats]
        if len({m.rows for m in lifted}) != 1:
            raise DimensionMismatchError("hstack needs equal row counts")
        return CycMatrix(n, np.concatenate([m._arr for m in lifted], axis=1),
                         _copy=False)

    @staticmethod
    def block_diag(mats) -> "CycMatrix":
        """Direct-sum stack: block-diagonal concatenation."""
        mats = list(mats)
        n = CycMatrix.common_order(*mats)
        lifted = [m.lift_to_order(n) for m in mats]
        d = _ring(n).degree
        rows = sum(m.rows for m in lifted)
        cols = sum(m.cols for m in lifted)
        arr = np.zeros((rows, cols, d), dtype=object)
        r = c = 0
        for m in lifted:
            arr[r:r + m.rows, c:c + m.cols] = m._arr
            r += m.rows
            c += m.cols
        return CycMatrix(n, arr, _copy=False)

    # -- predicates ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        a, b = self._aligned(other)
        return a.shape == b.shape and bool(np.array_equal(a._arr, b._arr))

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return not self._arr.any()

    def __repr__(self):
        return (f"CycMatrix(order={self.order}, rows={self.rows}, "
                f"cols={self.cols})")
