"""Frame factories: regular simplices, Steiner ETFs, flat MOLS frames, and
the group-divisible-design extension that grows a type-(K,L,S) ETF into a
type-(K,L,S') ETF, plus existence predicates for the known (K,L,S) families.

Every factory certifies its own output exactly and refuses to return an
uncertified frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclo import CycMatrix
from .designs import (
    GroupDivisibleDesign,
    embedding_operators,
    prime_power_decomposition,
    verify_gdd,
)
from .frames import (
    EtfCertificate,
    EtfType,
    Frame,
    classify_type,
    verify_etf,
    verify_tdtf,
)
from .hadamard import HadamardMatrix, simplex_from_hadamard

__all__ = [
    "ConstructionError",
    "AdmissibilityError",
    "regular_simplex",
    "steiner_etf",
    "mols_tdtf",
    "GddEtfPlan",
    "plan_gdd_etf",
    "gdd_etf",
    "ExistenceStatus",
    "existence_status",
    "check_chen_classification",
    "CONSTRUCTIBLE",
    "KNOWN",
    "ASYMPTOTIC",
    "UNKNOWN",
]


class ConstructionError(ValueError):
    """Precondition violated or output failed its own certification."""


class AdmissibilityError(ConstructionError):
    """A named divisibility/size condition rejected the requested plan."""

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


def _require_dephased(h: HadamardMatrix, size: int, label: str) -> None:
    if h.size != size:
        raise ConstructionError(
            f"{label} must have size {size}, got {h.size}")
    if not h.dephased:
        raise ConstructionError(f"{label} must be dephased")


# ---------------------------------------------------------------------------
# regular simplices and Steiner ETFs


def regular_simplex(n: int, h: HadamardMatrix) -> tuple[Frame, EtfCertificate]:
    """The flat (N-1) x N simplex cut from a dephased Hadamard of size N."""
    _require_dephased(h, n, "Hadamard matrix")
    frame = Frame(simplex_from_hadamard(h).mat)
    cert = verify_etf(frame)
    if not (cert.welch_equality and cert.s == n - 1 and cert.t == 1):
        raise ConstructionError(f"simplex certification failed: {cert}")
    return frame, cert


def steiner_etf(bibd: GroupDivisibleDesign,
                h: HadamardMatrix) -> tuple[Frame, EtfCertificate]:
    """ETF from a BIBD(V,K,1) and a dephased Hadamard of size R+1.

    Vertex v contributes the R+1 columns that place Hadamard column tails on
    the blocks through v; columns are ordered v-major.  The result lives in
    dimension B with N = V(R+1) vectors, norm-square R and coherence-square 1.
    """
    if bibd.M != 1:
        raise ConstructionError(
            f"need a BIBD (group size 1), got group size {bibd.M}")
    r = bibd.R
    _require_dephased(h, r + 1, "Hadamard matrix")
    ops = embedding_operators(bibd)
    tails = simplex_from_hadamard(h).mat    # R x (R+1)
    order = tails.order
    tail_arr = tails.array
    v_count, b_count = bibd.U, bibd.B
    deg = tail_arr.shape[2]
    arr = np.zeros((b_count, v_count * (r + 1), deg), dtype=object)
    for v in range(v_count):
        sup = ops.support(v, 0)
        base = v * (r + 1)
        for slot, block in enumerate(sup):
            arr[block, base:base + r + 1, :] = tail_arr[slot, :, :]
    frame = Frame(CycMatrix(order, arr), groups=v_count)
    cert = verify_etf(frame)
    if not (cert.welch_equality and cert.s == r and cert.t == 1):
        raise ConstructionError(f"Steiner certification failed: {cert}")
    return frame, cert


# ---------------------------------------------------------------------------
# flat frames from transversal designs


def mols_tdtf(td: GroupDivisibleDesign, h: HadamardMatrix,
              variant: str) -> tuple[Frame, EtfCertificate]:
    """Flat two-distance tight frame (I_K x F) X* from a TD(K,M), optionally
    augmented with an all-ones row.

    The centered variant is an ETF exactly when M = 2K; the augmented one
    exactly when M = 2(K-1).  In all other cases the output certifies as a
    tight two-distance frame.
    """
    if variant not in ("centered", "augmented"):
        raise ConstructionError(f"unknown variant {variant!r}")
    if td.U != td.K:
        raise ConstructionError(
            f"need a transversal design (type M^K), got type "
            f"{td.M}^{td.U} with K={td.K}")
    report = verify_gdd(td)
    if not report.ok:
        raise ConstructionError(f"invalid design: {report.failure}")
    m, k = td.M, td.K
    _require_dephased(h, m, "Hadamard matrix")
    tails = simplex_from_hadamard(h).mat
    x = CycMatrix.from_int_matrix(td.incidence())
    phi = CycMatrix.identity(k, tails.order).kron(tails) @ x.transpose()
    if variant == "augmented":
        phi = CycMatrix.vstack(
            [CycMatrix.ones(1, m * m, phi.order), phi])
    frame = Frame(phi)
    cert = verify_etf(frame)
    is_etf_case = (m == 2 * k) if variant == "centered" else (m == 2 * (k - 1))
    if is_etf_case:
        if not (cert.welch_equality and cert.flat):
            raise ConstructionError(
                f"expected a flat ETF at M={m}, K={k}: {cert}")
    else:
        if cert.welch_equality:
            raise ConstructionError(
                f"unexpected ETF outside the equiangular regime: {cert}")
        tdtf = verify_tdtf(frame)
        if not (tdtf.ok and cert.flat):
            raise ConstructionError(f"TDTF certification failed: {tdtf}")
    return frame, cert


# ---------------------------------------------------------------------------
# the GDD extension


@dataclass(frozen=True)
class GddEtfPlan:
    """Derived quantities for extending a type-(K,L,S) ETF by a K-GDD of
    type M^U."""

    seed: EtfType
    u: int
    m: int                 # GDD group size S(K-1)+L
    r: int                 # replication number M(U-1)/(K-1)
    w: int                 # R/(S+L)
    s_out: int             # S' = S + R
    d_out: int             # U*D + B
    n_out: int
    b: int                 # GDD block count
    hadamard_e_size: int   # S + L
    hadamard_f_size: int   # W + 1

    @property
    def type_out(self) -> EtfType:
        return EtfType(self.seed.K, self.seed.L, self.s_out)


def plan_gdd_etf(seed_type: EtfType, u: int) -> GddEtfPlan:
    """Check the admissibility conditions and derive all output parameters.

    Raises AdmissibilityError naming the first violated condition.
    """
    k, ell, s = seed_type

    def reject(cond):
        raise AdmissibilityError(cond, f"seed {seed_type} with U={u} "
                                       f"rejected: {cond} fails")

    if k < 2:
        reject("K >= 2")
    if s < 2:
        reject("S >= 2")
    if not seed_type.divisibility_ok():
        reject("K divides S(S-L)")
    if u < k:
        reject("U >= K")
    if (u - 1) % (k - 1) != 0:
        reject("(K-1) divides (U-1)")
    if ((s - ell) * u * (u - 1)) % (k * (k - 1)) != 0:
        reject("K(K-1) divides (S-L)U(U-1)")
    if ((k - 2) * (u - 1)) % ((s + ell) * (k - 1)) != 0:
        reject("(S+L)(K-1) divides (K-2)(U-1)")

    m = seed_type.seed_group_size
    r = m * (u - 1) // (k - 1)
    assert r % (s + ell) == 0
    w = r // (s + ell)
    s_out = s + r
    assert (m * u - ell) % (k - 1) == 0 and s_out == (m * u - ell) // (k - 1)
    b = m * m * u * (u - 1) // (k * (k - 1))
    d_out = u * seed_type.dimension + b
    out_type = EtfType(k, ell, s_out)
    assert d_out == out_type.dimension
    return GddEtfPlan(seed_type, u, m, r, w, s_out, d_out, out_type.count,
                      b, s + ell, w + 1)


def gdd_etf(seed: Frame, seed_type: EtfType, gdd: GroupDivisibleDesign,
            h_e: HadamardMatrix,
            h_f: HadamardMatrix) -> tuple[Frame, EtfCertificate]:
    """Extend a type-(K,L,S) ETF by a K-GDD of type M^U into a certified
    type-(K,L,S') ETF, S' = S + R.

    Column (u, m, i, j) places seed column (m, i) in the u-th dimension
    block and embeds the Kronecker product of Hadamard column e_i with
    simplex tail f_j on the blocks through GDD vertex (u, m).  Certification
    of the output is part of the construction.

    Re-extending the output gains nothing: extending by U and then by U'
    reaches the same type as one extension by a design of type M^(U U'),
    which `designs.fill_holes` supplies directly.  Grow the design, not
    the frame.
    """
    k, ell, s = seed_type
    plan = plan_gdd_etf(seed_type, gdd.U)
    if gdd.K != k:
        raise ConstructionError(
            f"GDD block size {gdd.K} does not match seed type K={k}")
    if gdd.M != plan.m:
        raise ConstructionError(
            f"GDD group size {gdd.M} must be S(K-1)+L = {plan.m}")
    d, n = seed_type.dimension, seed_type.count
    if (seed.d, seed.n) != (d, n):
        raise ConstructionError(
            f"seed is {seed.d} x {seed.n}, type {seed_type} needs {d} x {n}")
    if seed_type not in classify_type(seed.d, seed.n):
        raise ConstructionError(
            f"({seed.d}, {seed.n}) is not of type {seed_type}")
    # grouping is a view on the columns, fixed here as consecutive runs of
    # S+L; the equiangularity argument is grouping-invariant, so any prior
    # grouping metadata on the seed is irrelevant
    seed_cert = verify_etf(seed)
    if not seed_cert.welch_equality:
        raise ConstructionError("seed frame is not a certified ETF")
    if seed_cert.s != s or seed_cert.t != 1:
        raise ConstructionError(
            f"seed must be scaled to norm-square S={s} and coherence-square "
            f"1, found s={seed_cert.s}, t={seed_cert.t}")
    _require_dephased(h_e, plan.hadamard_e_size, "inner Hadamard matrix")
    _require_dephased(h_f, plan.hadamard_f_size, "outer Hadamard matrix")

    ops = embedding_operators(gdd)
    u_count, m_count, se, w = gdd.U, plan.m, s + ell, plan.w
    order = CycMatrix.common_order(seed.synthesis, h_e.mat, h_f.mat)
    seed_arr = seed.synthesis.lift_to_order(order).array
    e_mat = h_e.mat.lift_to_order(order)
    f_tails = simplex_from_hadamard(h_f).mat.lift_to_order(order)
    deg = seed_arr.shape[2]

    # R-dimensional payload vectors e_i (x) f_j, one per column pair (i, j)
    payload = [[e_mat.submatrix(slice(None), slice(i, i + 1))
                .kron(f_tails.submatrix(slice(None), slice(j, j + 1)))
                .array[:, 0, :]
                for j in range(w + 1)] for i in range(se)]

    top = u_count * d
    arr = np.zeros((plan.d_out, plan.n_out, deg), dtype=object)
    col = 0
    for u in range(u_count):
        for m in range(m_count):
            sup = ops.support(u, m)
            for i in range(se):
                seed_col = seed_arr[:, m * se + i, :]
                for j in range(w + 1):
                    arr[u * d:(u + 1) * d, col, :] = seed_col
                    vec = payload[i][j]
                    for slot, block in enumerate(sup):
                        arr[top + block, col, :] = vec[slot]
                    col += 1
    frame = Frame(CycMatrix(order, arr), groups=u_count * m_count)
    cert = verify_etf(frame)
    if not (cert.welch_equality and cert.s == plan.s_out and cert.t == 1):
        raise ConstructionError(
            f"output certification failed (expected s={plan.s_out}, t=1): "
            f"{cert}")
    if plan.type_out not in classify_type(frame.d, frame.n):
        raise ConstructionError(
            f"output does not classify as {plan.type_out}")
    return frame, cert


# ---------------------------------------------------------------------------
# existence predicates


CONSTRUCTIBLE = "constructible-here"
KNOWN = "known-per-paper"
ASYMPTOTIC = "asymptotic"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ExistenceStatus:
    etf_type: EtfType
    status: str
    witness: str | None = None

    def __str__(self):
        if self.witness:
            return f"{self.status} ({self.witness})"
        return self.status


def _is_power_of(x: int, base: int) -> bool:
    if x < 1:
        return False
    while x % base == 0:
        x //= base
    return x == 1


def _is_prime_power(x: int) -> bool:
    return prime_power_decomposition(x) is not None


def _geometric_s(base: int, s: int) -> bool:
    """s = 1 + base + ... + base^(j-1) for some j >= 3 (geometry of dim >= 2)."""
    v = 1 + base + base * base
    while v <= s:
        if v == s:
            return True
        v = v * base + 1
    return False


def _positive_status(t: EtfType) -> ExistenceStatus:
    k, s = t.K, t.S
    # families this library constructs outright
    if k == 1:
        return ExistenceStatus(t, CONSTRUCTIBLE,
                               "regular simplex from a Hadamard of size S+1")
    if k == 3 and s >= 3 and s % 3 in (0, 1):
        return ExistenceStatus(
            t, CONSTRUCTIBLE,
            f"Steiner ETF from a Steiner triple system on {2 * s + 1} points")
    if s == k + 1 and _is_prime_power(k):
        return ExistenceStatus(
            t, CONSTRUCTIBLE, f"Steiner ETF from the affine plane of order {k}")
    if s == k and _is_prime_power(k - 1):
        return ExistenceStatus(
            t, CONSTRUCTIBLE,
            f"Steiner ETF from the projective plane of order {k - 1}")
    # known families
    if 2 <= k <= 5 and s >= k:
        return ExistenceStatus(t, KNOWN,
                               f"Steiner family, block size {k} <= 5")
    if _is_prime_power(k) and _geometric_s(k, s):
        return ExistenceStatus(t, KNOWN, "Steiner ETF from an affine geometry")
    if k >= 3 and _is_prime_power(k - 1) and _geometric_s(k - 1, s):
        return ExistenceStatus(t, KNOWN,
                               "Steiner ETF from a projective geometry")
    if k >= 3 and _is_prime_power(k - 1) and s == (k - 1) ** 2:
        return ExistenceStatus(t, KNOWN, "Steiner ETF from a unital")
    if (k >= 4 and _is_power_of(k, 2) and s > k
            and _is_power_of(s - 1, 2) and s - 1 > k):
        return ExistenceStatus(t, KNOWN, "Steiner ETF from a Denniston design")
    if k == s and _is_prime_power(k):
        return ExistenceStatus(t, KNOWN, "K = S prime-power family")
    if k == s * (s - 1) and s in (2, 3, 4, 5, 6, 7, 18):
        return ExistenceStatus(t, KNOWN, f"SIC-POVM in dimension {s * s - 1}")
    if 2 * k == s * (s - 1) and s in (3, 5):
        return ExistenceStatus(t, KNOWN,
                               f"real-maximal ETF in dimension {s * s - 2}")
    return ExistenceStatus(
        t, ASYMPTOTIC,
        f"Steiner family, block size {k}, at sufficiently large S")


_NEGATIVE_SPORADIC = {(4, 7), (6, 11), (7, 13), (8, 15), (10, 5)}

# (K, group size M, quotient divisor, power base) for the explicit
# TD-extension families with K > 5: S = (M * base^J + 1)/(K - 1), J >= 0
_TD_EXTENSION_FAMILIES = (
    (6, 9, 5, 6),
    (6, 24, 5, 6),
    (7, 35, 6, 7),
    (10, 80, 9, 10),
    (12, 32, 11, 12),
)


def _negative_status(t: EtfType) -> ExistenceStatus:
    k, s = t.K, t.S
    if k == 2 and s >= 3:
        return ExistenceStatus(
            t, KNOWN, "Naimark complement of a 2-positive Steiner family")
    if k == 3 and s % 3 in (0, 2):
        return ExistenceStatus(t, KNOWN, "K=3 family, S = 0,2 (mod 3)")
    if k == 4 and (s % 8 == 3 or s % 60 == 7):
        res = "S = 3 (mod 8)" if s % 8 == 3 else "S = 7 (mod 60)"
        return ExistenceStatus(t, KNOWN, f"K=4 residue family {res}")
    if k == 5 and (s % 15 == 4 or s % 380 in (5, 309) or s % 280 == 9):
        if s % 15 == 4:
            res = "S = 4 (mod 15)"
        elif s % 280 == 9:
            res = "S = 9 (mod 280)"
        else:
            res = "S = 5,309 (mod 380)"
        return ExistenceStatus(t, KNOWN, f"K=5 residue family {res}")
    if s == k - 1 and _is_prime_power(k - 2):
        return ExistenceStatus(
            t, KNOWN, f"Steiner ETF from the affine plane of order {k - 2}")
    if k >= 3 and _is_power_of(k - 1, 2) and s == 2 * k - 1:
        return ExistenceStatus(t, KNOWN, "Steiner ETF from a Denniston design")
    if k >= 3 and _is_power_of(k - 1, 2) and s == k:
        return ExistenceStatus(t, KNOWN, "hyperoval family")
    if k == s * (s + 1) and s in (2, 3, 4, 5, 6, 7, 18):
        return ExistenceStatus(t, KNOWN, f"SIC-POVM in dimension {s * s - 1}")
    if 2 * k == (s + 1) * (s + 2) and s in (3, 5):
        return ExistenceStatus(t, KNOWN,
                               f"real-maximal ETF in dimension {s * s - 2}")
    if (k, s) in _NEGATIVE_SPORADIC:
        return ExistenceStatus(t, KNOWN,
                               "sporadic example from the ETF literature")
    for fk, fm, fdiv, fbase in _TD_EXTENSION_FAMILIES:
        if k != fk:
            continue
        num = fdiv * s - 1
        if num % fm == 0 and _is_power_of(num // fm, fbase):
            return ExistenceStatus(
                t, KNOWN,
                f"K={fk} TD-extension family, U a power of {fbase}")
    return ExistenceStatus(t, UNKNOWN)


def existence_status(t: EtfType) -> ExistenceStatus:
    """Deterministic status of (K, L, S) against the known explicit families.

    Clauses with a 'sufficiently large' proviso report asymptotic; types
    matched by no clause report unknown.
    """
    if t.K < 1 or t.S < 2 or t.L not in (1, -1):
        raise ConstructionError(f"invalid type parameters {t}")
    if not t.divisibility_ok():
        raise ConstructionError(
            f"K={t.K} does not divide S(S-L) = {t.S * (t.S - t.L)}")
    if t.L == 1:
        return _positive_status(t)
    if t.K == 1:
        raise ConstructionError("negative types require K >= 2")
    return _negative_status(t)


def check_chen_classification(q: int, j: int) -> list[EtfType]:
    """Classify the (D, N) of the two-parameter difference-set family at
    base Q and exponent J; only finitely many members are positive/negative."""
    if q < 2 or j < 1:
        raise ConstructionError("need Q >= 2 and J >= 1")
    q2j = q ** (2 * j)
    d_num = q ** (2 * j - 1) * (2 * q2j + q - 1)
    assert d_num % (q + 1) == 0
    d = d_num // (q + 1)
    n_num = 4 * q2j * (q2j - 1)
    assert n_num % (q * q - 1) == 0
    n = n_num // (q * q - 1)
    return classify_type(d, n)
