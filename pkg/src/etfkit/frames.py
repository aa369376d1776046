"""Frames over Z[zeta_n]: exact Gram computation, ETF certification,
positive/negative type classification, and Naimark complements.

Certification uses the integer scaling throughout: a certificate carries the
common squared norm s and squared coherence numerator t (coherence^2 = t/s^2)
as exact integers, and tightness is checked as D(Phi Phi*) = N s I, so no
rational matrices ever appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import NamedTuple

import numpy as np

from .cyclo import CycMatrix, CycScalar

__all__ = [
    "FrameError",
    "EtfType",
    "Frame",
    "EtfCertificate",
    "gram",
    "frame_operator",
    "verify_etf",
    "classify_type",
    "NaimarkResult",
    "naimark_gram",
    "TdtfReport",
    "verify_tdtf",
]


class FrameError(ValueError):
    """Invalid frame data or parameter domain."""


class EtfType(NamedTuple):
    """The (K, L, S) parameterization of ETF sizes, L in {+1, -1}."""

    K: int
    L: int
    S: int

    @property
    def dimension(self) -> int:
        """D = (S/K)(S(K-1) + L)."""
        return self.S * (self.S * (self.K - 1) + self.L) // self.K

    @property
    def count(self) -> int:
        """N = (S+L)(S(K-1) + L)."""
        return (self.S + self.L) * (self.S * (self.K - 1) + self.L)

    @property
    def seed_group_size(self) -> int:
        """M = S(K-1) + L, the group size of a matching K-GDD."""
        return self.S * (self.K - 1) + self.L

    @property
    def complement_norm(self) -> int:
        """Squared norm S(K-1) + KL of a Naimark complement, at coherence 1."""
        return self.S * (self.K - 1) + self.K * self.L

    def divisibility_ok(self) -> bool:
        return self.K >= 1 and (self.S * (self.S - self.L)) % self.K == 0

    def __str__(self):
        return f"({self.K},{self.L:+d},{self.S})"


class Frame:
    """A D x N synthesis operator with optional column grouping."""

    def __init__(self, synthesis: CycMatrix, groups: int | None = None):
        arr = synthesis.array
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise FrameError("frame must be nonempty")
        nonzero_cols = arr.any(axis=(0, 2))
        if not nonzero_cols.all():
            c = int(np.argmin(nonzero_cols))
            raise FrameError(f"column {c} is zero")
        if groups is not None and synthesis.cols % groups != 0:
            raise FrameError(
                f"{groups} groups do not divide {synthesis.cols} columns")
        self.synthesis = synthesis
        self.groups = groups

    @property
    def d(self) -> int:
        return self.synthesis.rows

    @property
    def n(self) -> int:
        return self.synthesis.cols

    @property
    def order(self) -> int:
        return self.synthesis.order

    def with_groups(self, groups: int) -> "Frame":
        return Frame(self.synthesis, groups)

    def column(self, c: int) -> CycMatrix:
        return self.synthesis.submatrix(slice(None), slice(c, c + 1))

    def group_column(self, m: int, i: int) -> int:
        """Column index of member i of group m under consecutive grouping."""
        if self.groups is None:
            raise FrameError("frame has no column grouping")
        size = self.n // self.groups
        return m * size + i

    def __repr__(self):
        return f"Frame(D={self.d}, N={self.n}, order={self.order})"


def gram(frame: Frame) -> CycMatrix:
    """The exact N x N Gram matrix Phi*Phi."""
    return frame.synthesis.adjoint() @ frame.synthesis


def frame_operator(frame: Frame) -> CycMatrix:
    """The exact D x D frame operator Phi Phi*."""
    return frame.synthesis @ frame.synthesis.adjoint()


@dataclass(frozen=True)
class EtfCertificate:
    d: int
    n: int
    s: int | None                 # common squared norm
    t: int | None                 # common squared coherence numerator
    a: Fraction | None            # tight frame constant N s / D
    equal_norm: bool
    equiangular: bool
    tight: bool
    welch_equality: bool
    flat: bool
    centered: bool

    def __str__(self):
        if self.welch_equality:
            a = self.a
            a_str = str(a) if a.denominator != 1 else str(a.numerator)
            return (f"ETF D={self.d} N={self.n} s={self.s} t={self.t} "
                    f"A={a_str}")
        flags = [name for name, val in (
            ("equal_norm", self.equal_norm), ("equiangular", self.equiangular),
            ("tight", self.tight)) if not val]
        return f"not an ETF (fails: {', '.join(flags)})"


def _common_offdiag(mat: CycMatrix) -> CycScalar | None:
    """The shared off-diagonal value, or None if entries differ."""
    n = mat.rows
    arr = mat.array
    mask = ~np.eye(n, dtype=bool)
    off = arr[mask]
    if off.shape[0] == 0:
        return None
    if not np.array_equal(off, np.broadcast_to(off[0], off.shape)):
        return None
    return CycScalar(mat.order, tuple(off[0]))


def _common_diagonal(mat: CycMatrix) -> CycScalar | None:
    arr = mat.array
    diag = arr[np.arange(mat.rows), np.arange(mat.rows)]
    if not np.array_equal(diag, np.broadcast_to(diag[0], diag.shape)):
        return None
    return CycScalar(mat.order, tuple(diag[0]))


def _tight_constant(op: CycMatrix) -> int | None:
    """c such that op = c I exactly with c a rational integer, else None."""
    off = _common_offdiag(op)
    if op.rows > 1 and (off is None or not off.is_zero):
        return None
    diag = _common_diagonal(op)
    if diag is None or not diag.is_rational_integer:
        return None
    return diag.as_integer()


def verify_etf(frame: Frame) -> EtfCertificate:
    """Certify equal norms, equiangularity, tightness and Welch equality,
    all as exact integer identities; also report flatness and centering."""
    g = gram(frame)
    d, n = frame.d, frame.n

    diag = _common_diagonal(g)
    s = diag.as_integer() if diag is not None else None
    equal_norm = s is not None

    if n == 1:
        equiangular, t = True, None
    else:
        t_val = _common_offdiag(g.abs_squared_entries())
        t = t_val.as_integer() if t_val is not None else None
        equiangular = t is not None

    c = _tight_constant(frame_operator(frame))
    tight = c is not None and s is not None and d * c == n * s

    welch = equal_norm and equiangular and tight
    if welch and n > d and t is not None:
        # Welch equality forces this integer identity; a failure is a bug
        assert s * s * (n - d) == t * d * (n - 1), \
            "certified ETF violates the Welch equality identity"

    flat = frame.synthesis.abs_squared_entries() == CycMatrix.ones(
        d, n, frame.order)
    centered = (frame.synthesis
                @ CycMatrix.ones(n, 1, frame.order)).is_zero

    a = Fraction(n * s, d) if s is not None else None
    return EtfCertificate(d, n, s, t, a, equal_norm, equiangular, tight,
                          welch, flat, centered)


def classify_type(d: int, n: int) -> list[EtfType]:
    """All (K, L, S) types of the pair (D, N), positive type first.

    S must satisfy S^2 = D(N-1)/(N-D) exactly; each sign L contributes a
    type when K = NS/(D(S+L)) is a positive integer.
    """
    if d <= 1 or n <= d:
        raise FrameError(f"classification needs 1 < D < N, got ({d}, {n})")
    num = d * (n - 1)
    den = n - d
    if num % den != 0:
        return []
    s2 = num // den
    s = isqrt(s2)
    if s * s != s2 or s < 2:
        return []
    out = []
    for ell in (1, -1):
        kden = d * (s + ell)
        knum = n * s
        if kden > 0 and knum % kden == 0:
            k = knum // kden
            if k >= 1:
                t = EtfType(k, ell, s)
                assert t.dimension == d and t.count == n
                out.append(t)
    return out


@dataclass(frozen=True)
class NaimarkResult:
    """G' = den*(A I - G) with A = num/den, plus tightness-transfer flags."""

    complement: CycMatrix
    denominator: int
    input_tight: bool
    transfer_ok: bool


def naimark_gram(g: CycMatrix, a) -> NaimarkResult:
    """Complement Gram A I - G with cleared denominators.

    When the input satisfies G G = A G (a tight Gram), certifies the exact
    transfer identity G' G' = A G'.
    """
    if g.rows != g.cols:
        raise FrameError("Gram matrix must be square")
    frac = Fraction(a)
    num, den = frac.numerator, frac.denominator
    ident = CycMatrix.identity(g.rows, g.order)
    comp = ident.scalar_mul(num) - g.scalar_mul(den)
    input_tight = (g @ g).scalar_mul(den) == g.scalar_mul(num)
    transfer_ok = (comp @ comp) == comp.scalar_mul(num)
    if input_tight and not transfer_ok:
        raise AssertionError("tightness transfer identity failed")
    return NaimarkResult(comp, den, input_tight, transfer_ok)


@dataclass(frozen=True)
class TdtfReport:
    tight: bool
    two_distance: bool
    values: tuple[CycScalar, ...]
    ok: bool

    def __str__(self):
        if self.ok:
            vals = ", ".join(str(v.coeffs) for v in self.values)
            return f"TDTF pass: off-diagonal values {{{vals}}}"
        return (f"TDTF fail: tight={self.tight}, "
                f"two_distance={self.two_distance}")


def verify_tdtf(frame: Frame) -> TdtfReport:
    """Tightness plus at-most-two distinct off-diagonal Gram values."""
    c = _tight_constant(frame_operator(frame))
    g = gram(frame)
    n = g.rows
    arr = g.array
    seen: dict[tuple, CycScalar] = {}
    for r in range(n):
        for col in range(n):
            if r == col:
                continue
            key = tuple(arr[r, col])
            if key not in seen:
                seen[key] = CycScalar(g.order, key)
                if len(seen) > 2:
                    break
        if len(seen) > 2:
            break
    two = len(seen) <= 2
    tight = c is not None
    return TdtfReport(tight, two, tuple(seen.values())[:2] if two
                      else tuple(), tight and two)
