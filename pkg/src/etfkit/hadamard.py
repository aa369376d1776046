"""Possibly-complex Hadamard matrices and the flat regular simplices they carry.

A Hadamard matrix of size n has unimodular entries and satisfies H*H = nI
exactly.  Dephasing scales columns so the first row is all ones; dropping
that row then leaves a flat regular simplex: n equal-norm vectors in n-1
dimensions summing to zero, the seed ingredient of every frame construction
in this package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclo import CycMatrix, CycScalar, root_of_unity
from .designs import FiniteField

__all__ = [
    "HadamardError",
    "HadamardMatrix",
    "HadamardReport",
    "SimplexFrame",
    "sylvester",
    "paley_i",
    "paley_ii",
    "fourier",
    "kron_had",
    "dephase",
    "verify_hadamard",
    "simplex_from_hadamard",
]


class HadamardError(ValueError):
    """Construction preconditions violated or certification failed."""


@dataclass(frozen=True)
class HadamardReport:
    ok: bool
    size: int
    failure: str | None = None

    def __str__(self):
        return (f"Hadamard pass: size {self.size}" if self.ok
                else f"Hadamard fail: {self.failure}")


class HadamardMatrix:
    """A certified possibly-complex Hadamard matrix."""

    def __init__(self, mat: CycMatrix, _check: bool = True):
        if _check:
            report = verify_hadamard(mat)
            if not report.ok:
                raise HadamardError(report.failure)
        self.mat = mat
        self.size = mat.rows
        one = CycScalar.one(mat.order)
        self.dephased = all(
            mat.entry(0, c) == one for c in range(mat.cols))

    def __repr__(self):
        return f"HadamardMatrix(size={self.size}, order={self.mat.order})"


def verify_hadamard(mat) -> HadamardReport:
    """Check unimodularity of every entry and H*H = nI = HH* exactly."""
    if isinstance(mat, HadamardMatrix):
        mat = mat.mat
    n = mat.rows
    if mat.cols != n:
        return HadamardReport(False, n, f"matrix is {mat.rows}x{mat.cols}")
    mods = mat.abs_squared_entries()
    ones = CycMatrix.ones(n, n, mat.order)
    if mods != ones:
        for r in range(n):
            for c in range(n):
                if mods.entry(r, c) != 1:
                    return HadamardReport(
                        False, n,
                        f"entry ({r}, {c}) is not unimodular: "
                        f"|.|^2 = {mods.entry(r, c).coeffs}")
    target = CycMatrix.identity(n, mat.order).scalar_mul(n)
    if mat.adjoint() @ mat != target:
        return HadamardReport(False, n, "H*H differs from nI")
    if mat @ mat.adjoint() != target:
        return HadamardReport(False, n, "HH* differs from nI")
    return HadamardReport(True, n)


# ---------------------------------------------------------------------------
# generators


def sylvester(k: int) -> HadamardMatrix:
    """Real Hadamard of size 2^k by repeated doubling; entries at order 2."""
    if k < 0:
        raise HadamardError("exponent must be nonnegative")
    h = np.array([[1]], dtype=np.int64)
    core = np.array([[1, 1], [1, -1]], dtype=np.int64)
    for _ in range(k):
        h = np.kron(core, h)
    return HadamardMatrix(CycMatrix.from_int_matrix(h, order=2))


def fourier(n: int) -> HadamardMatrix:
    """The n x n character table (zeta_n^(jk)); entries at order n."""
    if n < 1:
        raise HadamardError("size must be positive")
    mat = CycMatrix.from_scalars(
        [[root_of_unity(n, j * k) for k in range(n)] for j in range(n)])
    return HadamardMatrix(mat)


def _quadratic_character(field: FiniteField) -> np.ndarray:
    q = field.q
    chi = np.zeros(q, dtype=np.int64)
    minus_one = field.neg(1)
    for x in range(1, q):
        val = field.pow(x, (q - 1) // 2)
        if val == 1:
            chi[x] = 1
        elif val == minus_one:
            chi[x] = -1
        else:
            raise AssertionError("character value is not +-1")
    return chi


def _jacobsthal(field: FiniteField) -> np.ndarray:
    q = field.q
    chi = _quadratic_character(field)
    jac = np.zeros((q, q), dtype=np.int64)
    for i in range(q):
        for j in range(q):
            jac[i, j] = chi[field.sub(i, j)]
    return jac


def paley_i(field: FiniteField) -> HadamardMatrix:
    """Real Hadamard of size q+1 from quadratic residues, q = 3 (mod 4)."""
    q = field.q
    if q % 4 != 3:
        raise HadamardError(f"Paley type I needs q = 3 (mod 4), got {q}")
    jac = _jacobsthal(field)
    h = np.zeros((q + 1, q + 1), dtype=np.int64)
    h[0, 1:] = 1
    h[1:, 0] = -1
    h[1:, 1:] = jac
    h += np.eye(q + 1, dtype=np.int64)
    return HadamardMatrix(CycMatrix.from_int_matrix(h, order=2))


def paley_ii(field: FiniteField) -> HadamardMatrix:
    """Real Hadamard of size 2(q+1) from a conference matrix, q = 1 (mod 4)."""
    q = field.q
    if q % 4 != 1:
        raise HadamardError(f"Paley type II needs q = 1 (mod 4), got {q}")
    conf = np.zeros((q + 1, q + 1), dtype=np.int64)
    conf[0, 1:] = 1
    conf[1:, 0] = 1
    conf[1:, 1:] = _jacobsthal(field)
    a = np.array([[1, 1], [1, -1]], dtype=np.int64)
    b = np.array([[1, -1], [-1, -1]], dtype=np.int64)
    h = np.kron(conf, a) + np.kron(np.eye(q + 1, dtype=np.int64), b)
    return HadamardMatrix(CycMatrix.from_int_matrix(h, order=2))


def kron_had(a: HadamardMatrix, b: HadamardMatrix) -> HadamardMatrix:
    """Kronecker product of two Hadamard matrices."""
    return HadamardMatrix(a.mat.kron(b.mat))


def dephase(h: HadamardMatrix) -> HadamardMatrix:
    """Scale each column by the conjugate of its first entry."""
    if h.dephased:
        return h
    scales = [h.mat.entry(0, c).conjugate() for c in range(h.size)]
    out = HadamardMatrix(h.mat @ CycMatrix.diagonal(scales))
    if not out.dephased:
        raise AssertionError("dephasing failed to normalize the first row")
    return out


# ---------------------------------------------------------------------------
# regular simplices


class SimplexFrame:
    """A flat regular simplex: the tail rows of a dephased Hadamard matrix.

    Satisfies FF* = NI, F1 = 0 and F*F = NI - J exactly.
    """

    def __init__(self, mat: CycMatrix, _check: bool = True):
        self.n = mat.cols
        self.mat = mat
        if _check:
            self._certify()

    def _certify(self):
        n, order = self.n, self.mat.order
        if self.mat.rows != n - 1:
            raise HadamardError(
                f"simplex must be {n - 1}x{n}, got {self.mat.rows}x{n}")
        f = self.mat
        if f.abs_squared_entries() != CycMatrix.ones(n - 1, n, order):
            raise HadamardError("simplex is not flat")
        if f @ f.adjoint() != CycMatrix.identity(n - 1, order).scalar_mul(n):
            raise HadamardError("FF* differs from NI")
        if not (f @ CycMatrix.ones(n, 1, order)).is_zero:
            raise HadamardError("simplex columns do not sum to zero")
        expected = (CycMatrix.identity(n, order).scalar_mul(n)
                    - CycMatrix.ones(n, n, order))
        if f.adjoint() @ f != expected:
            raise HadamardError("F*F differs from NI - J")

    def column(self, j: int) -> CycMatrix:
        return self.mat.submatrix(slice(None), slice(j, j + 1))

    def __repr__(self):
        return f"SimplexFrame(n={self.n}, order={self.mat.order})"


def simplex_from_hadamard(h: HadamardMatrix) -> SimplexFrame:
    """Drop the all-ones first row of a dephased Hadamard matrix."""
    if not h.dephased:
        raise HadamardError("Hadamard matrix must be dephased first")
    if h.size < 2:
        raise HadamardError("need size >= 2")
    return SimplexFrame(h.mat.submatrix(slice(1, h.size), slice(None)))
