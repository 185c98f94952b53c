"""Exact Weil representation on the order-120 discriminant form.

The lattice Z with bilinear form (x, y) = -120xy has dual (1/120)Z, so the
discriminant group is Z/120 with q(h) = -h^2/240 mod 1.  This module builds
the representation matrices for the two generators, the sparse assembly map
that lifts a six-component vector to the 120 basis directions, and the exact
verifications: the intertwining identities tying the 6x6 transformation
matrices to the 120x120 representation, the metaplectic relation, and the
vanishing of the assembled difference vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .cyclofield import (
    ORDER,
    QQ,
    CycloNum,
    alpha,
    beta,
    inv_sqrt_minus_120i,
    rational,
    reduction_table,
    sqrt2,
    sqrt5,
    zeta,
)
from .errors import InsufficientPrecisionError
from .qseries import QSeries, as_exponent
from .specialforms import build_F, build_G, canonical_completion

N = 120

_ZERO = CycloNum(0)


def q_value(h: int) -> QQ:
    """Quadratic form q(h) = -h^2/240 mod 1 on the discriminant group."""
    r = QQ(-(h % N) ** 2, 2 * N)
    return r - (r.numerator // r.denominator)


def b_value(h: int, hp: int) -> QQ:
    """Bilinear form b(h, h') = -hh'/120 mod 1."""
    r = QQ(-(h % N) * (hp % N), N)
    return r - (r.numerator // r.denominator)


# -- representation matrices -----------------------------------------------------


@dataclass(frozen=True)
class WeilMatrix:
    """Dense 120x120 matrix over Q(zeta_240); rows share entry objects."""

    rows: tuple

    def entry(self, h: int, hp: int) -> CycloNum:
        return self.rows[h % N][hp % N]

    def __getitem__(self, key) -> CycloNum:
        h, hp = key
        return self.entry(h, hp)

    def to_json(self) -> list:
        return [[c.to_json() for c in row] for row in self.rows]


@lru_cache(maxsize=None)
def rho_T() -> WeilMatrix:
    """The generator T acts diagonally by zeta_240^(-h^2)."""
    diag = [zeta(ORDER, (-h * h) % ORDER) for h in range(N)]
    rows = tuple(
        tuple(diag[h] if h == hp else _ZERO for hp in range(N)) for h in range(N)
    )
    return WeilMatrix(rows)


@lru_cache(maxsize=None)
def rho_S() -> WeilMatrix:
    """The generator S sends e_h to (1/sqrt(-120i)) sum_h' zeta_120^(hh') e_h'."""
    s = inv_sqrt_minus_120i()
    vals = [s * zeta(N, k) for k in range(N)]
    rows = tuple(
        tuple(vals[(h * hp) % N] for hp in range(N)) for h in range(N)
    )
    return WeilMatrix(rows)


# -- the 6x6 transformation matrices ------------------------------------------------


@lru_cache(maxsize=None)
def m_T() -> tuple:
    """Action of z -> z+1 on the six-component vector."""
    za = zeta(60, 59)
    zb = zeta(60, 11)
    zc = zeta(240, 239)
    zd = zeta(240, 71)
    Z = _ZERO
    return (
        (za, Z, Z, Z, Z, Z),
        (Z, zb, Z, Z, Z, Z),
        (Z, Z, Z, Z, zc, Z),
        (Z, Z, Z, Z, Z, zd),
        (Z, Z, zc, Z, Z, Z),
        (Z, Z, Z, zd, Z, Z),
    )


@lru_cache(maxsize=None)
def m_S() -> tuple:
    """Action of z -> -1/z on the six-component vector (up to the scalar
    zeta_8^(-1) sqrt(2/5) and the automorphy factor)."""
    al, be = alpha(), beta()
    al2, be2 = al / 2, be / 2
    r2i = sqrt2().inverse()
    alr, ber = al * r2i, be * r2i
    Z = _ZERO
    return (
        (Z, Z, al, be, Z, Z),
        (Z, Z, be, -al, Z, Z),
        (al2, be2, Z, Z, Z, Z),
        (be2, -al2, Z, Z, Z, Z),
        (Z, Z, Z, Z, ber, alr),
        (Z, Z, Z, Z, alr, -ber),
    )


@lru_cache(maxsize=None)
def intertwining_scalar() -> CycloNum:
    """zeta_8^(-1) sqrt(2/5), the scalar in the S-transformation law."""
    return zeta(8, 7) * sqrt2() * sqrt5() / 5


# -- assembly map ---------------------------------------------------------------------


@dataclass(frozen=True)
class AssemblyMatrix:
    """Sparse 120x6 matrix: row h holds the coefficients of the six input
    components in the e_h direction."""

    rows: tuple      # CycloNum entries
    pattern: tuple   # the same entries as plain ints

    def entry(self, h: int, j: int) -> CycloNum:
        return self.rows[h % N][j]

    def to_json(self) -> list:
        return [list(row) for row in self.pattern]


def _assembly_pattern() -> tuple:
    rows = [[0] * 6 for _ in range(N)]
    for h in range(1, 60):
        g = gcd(h, 60)
        a_h = 1 if h < 30 else -1
        b_h = 1 if h % 60 in (1, 13, 47, 59) else -1
        r = h % 10
        if r in (1, 9) and g == 1:
            cells = {2: a_h, 4: b_h}
        elif r in (2, 8) and g == 2:
            cells = {0: -1}
        elif r in (3, 7) and g == 1:
            cells = {3: a_h, 5: b_h}
        elif r in (4, 6) and g == 2:
            cells = {1: -1}
        else:
            continue
        for j, v in cells.items():
            rows[h][j] += v
            rows[N - h][j] -= v
    return tuple(tuple(row) for row in rows)


@lru_cache(maxsize=None)
def assembly() -> AssemblyMatrix:
    pattern = _assembly_pattern()
    rows = tuple(tuple(CycloNum(v) for v in row) for row in pattern)
    return AssemblyMatrix(rows, pattern)


def matrix_rank(rows) -> int:
    """Rank of a matrix with CycloNum entries by exact Gaussian elimination."""
    work = [list(row) for row in rows if any(row)]
    ncols = len(work[0]) if work else 0
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [c * inv for c in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


# -- intertwining verification ----------------------------------------------------------


@dataclass(frozen=True)
class IntertwiningReport:
    t_equal: bool
    s_equal: bool
    violations: tuple  # (side, h, j)

    @property
    def equal(self) -> bool:
        return self.t_equal and self.s_equal

    def to_json(self) -> dict:
        return {
            "t_equal": self.t_equal,
            "s_equal": self.s_equal,
            "violations": [list(v) for v in self.violations],
        }


def _mat6_apply(rows6, mat6):
    """Rows of (A * M) for a 120x6 A given as int/CycloNum rows."""
    out = []
    for row in rows6:
        out.append(
            tuple(
                sum((row[k] * mat6[k][j] for k in range(6) if row[k]), _ZERO)
                for j in range(6)
            )
        )
    return out


def verify_intertwining() -> IntertwiningReport:
    """Check rho_T A = A M_T and rho_S A = zeta_8^(-1) sqrt(2/5) A M_S as
    exact 120x6 matrix identities."""
    A = assembly()
    violations = []

    t_rhs = _mat6_apply(A.rows, m_T())
    t_diag = [zeta(ORDER, (-h * h) % ORDER) for h in range(N)]
    t_equal = True
    for h in range(N):
        for j in range(6):
            if t_diag[h] * A.rows[h][j] != t_rhs[h][j]:
                t_equal = False
                violations.append(("T", h, j))

    scalar = intertwining_scalar()
    s_rhs = _mat6_apply(A.rows, m_S())
    s = inv_sqrt_minus_120i()
    roots = [zeta(N, k) for k in range(N)]
    support = [h for h in range(N) if any(A.pattern[h])]
    s_equal = True
    for h in range(N):
        for j in range(6):
            acc = CycloNum(0)
            for hp in support:
                v = A.pattern[hp][j]
                if v:
                    term = roots[(h * hp) % N]
                    acc = acc + (term if v == 1 else term * v)
            if s * acc != scalar * s_rhs[h][j]:
                s_equal = False
                violations.append(("S", h, j))

    return IntertwiningReport(t_equal, s_equal, tuple(violations))


# -- metaplectic relation ------------------------------------------------------------


@lru_cache(maxsize=None)
def _reduction_matrix() -> np.ndarray:
    """(240, 64) integer matrix taking exponent vectors in Z[Z/240] to
    coordinates over the power basis of Q(zeta_240)."""
    table = reduction_table()
    out = np.zeros((ORDER, 64), dtype=np.int64)
    for e in range(ORDER):
        for idx, coeff in table[e]:
            out[e, idx] = coeff
    return out


def _cyclo_int_vector(x: CycloNum) -> np.ndarray:
    """Length-240 integer exponent vector for a CycloNum with integer
    basis coordinates."""
    out = np.zeros(ORDER, dtype=np.int64)
    for i, c in enumerate(x.coeffs):
        c = rational(c)
        if c.denominator != 1:
            raise ValueError("expected integral coordinates")
        out[i] = int(c.numerator)
    return out


@dataclass(frozen=True)
class MetaplecticReport:
    relation_equal: bool      # rho_T rho_S rho_T rho_S rho_T = rho_S, all cells
    s_squared_is_iP: bool     # rho_S^2 = i * (h -> -h), all cells
    cells: int

    @property
    def equal(self) -> bool:
        return self.relation_equal and self.s_squared_is_iP

    def to_json(self) -> dict:
        return {
            "relation_equal": self.relation_equal,
            "s_squared_is_iP": self.s_squared_is_iP,
            "cells": self.cells,
        }


def metaplectic_relation() -> MetaplecticReport:
    """Verify (rho_S rho_T)^3 = rho_S^2 exactly on all 120x120 cells.

    Written out, the relation is equivalent to the pair
        rho_T rho_S rho_T rho_S rho_T = rho_S        (left-cancel one rho_S)
        rho_S^2 = i P,  P: e_h -> e_{-h},
    since (rho_S rho_T)^3 = rho_S (rho_T rho_S rho_T rho_S rho_T).  Every
    entry of the five-fold product is (1/sqrt(-120i))^2 times a sum of 120
    roots of unity, so the whole check runs in the integer group ring
    Z[Z/240]: histogram the exponents, reduce modulo the cyclotomic
    polynomial with the shared reduction table, and compare coordinates.
    """
    rt = _reduction_matrix()
    idx = np.arange(N, dtype=np.int64)
    h = idx.reshape(N, 1, 1)
    hp = idx.reshape(1, N, 1)
    k = idx.reshape(1, 1, N)

    # lhs cell (h, hp): s^2 * zeta^(-h^2 - hp^2) * sum_k zeta^(2hk - k^2 + 2k hp)
    # rhs cell (h, hp): s   * zeta^(2 h hp)
    # equivalently sum_k zeta^(2hk - k^2 + 2k hp) = s^(-1) zeta^(2hhp + h^2 + hp^2)
    exps = (2 * h * k - k * k + 2 * k * hp) % ORDER
    flat = (np.arange(N * N, dtype=np.int64).reshape(N, N, 1) * ORDER + exps).ravel()
    counts = np.bincount(flat, minlength=N * N * ORDER).reshape(N * N, ORDER)
    lhs = counts @ rt

    s_inv = inv_sqrt_minus_120i().inverse()
    u = _cyclo_int_vector(s_inv)
    shift = (2 * h[:, :, 0] * hp[0, :, :].reshape(1, N) + h[:, :, 0] ** 2
             + hp[0, :, :].reshape(1, N) ** 2) % ORDER
    e_axis = np.arange(ORDER, dtype=np.int64).reshape(1, 1, ORDER)
    rhs_vec = u[(e_axis - shift.reshape(N, N, 1)) % ORDER].reshape(N * N, ORDER)
    rhs = rhs_vec @ rt
    relation_equal = bool(np.array_equal(lhs, rhs))

    # rho_S^2 cell (h, hp) = s^2 sum_k zeta^(2k(h+hp)); target i * [hp = -h].
    # With s^2 * 120 = i this reduces to sum_k zeta^(2kc) = 120 [c = 0] for
    # every value c = h + hp mod 120.
    scalar_ok = (inv_sqrt_minus_120i() ** 2) * 120 == zeta(4)
    ex = (2 * idx.reshape(1, N) * idx.reshape(N, 1)) % ORDER  # row c: 2kc mod 240
    flat2 = (np.arange(N, dtype=np.int64).reshape(N, 1) * ORDER + ex).ravel()
    table = np.bincount(flat2, minlength=N * ORDER).reshape(N, ORDER) @ rt
    sums_ok = table[0, 0] == 120 and not table[0, 1:].any() and not table[1:].any()
    s_squared_is_iP = bool(scalar_ok and sums_ok)

    return MetaplecticReport(relation_equal, s_squared_is_iP, N * N)


# -- assembling the vector-valued form ---------------------------------------------------


def assemble_H(components) -> tuple:
    """Lift six q-series to the 120 basis directions via the assembly map."""
    comps = tuple(components)
    if len(comps) != 6:
        raise ValueError("exactly six components required")
    floor = min(c.bound for c in comps)
    pattern = assembly().pattern
    out = []
    for hrow in pattern:
        acc = QSeries.zero(floor)
        for j, v in enumerate(hrow):
            if v:
                acc = acc + comps[j].scalar_mul(v)
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class VanishingReport:
    all_zero: bool
    bound: QQ
    completions_equal: bool
    nonzero: tuple  # (h, exponent, coefficient)

    def to_json(self) -> dict:
        return {
            "all_zero": self.all_zero,
            "bound": str(self.bound),
            "completions_equal": self.completions_equal,
            "nonzero": [
                {"row": h, "exponent": str(e), "coefficient": c.to_json()}
                for h, e, c in self.nonzero
            ],
        }


def check_vanishing(bound) -> VanishingReport:
    """Assemble F - G and confirm that all 120 components vanish through
    ``bound``, and that the completion lists of F and G agree componentwise."""
    b = as_exponent(bound)
    F = build_F(b)
    G = build_G(b)
    completions_equal = all(
        canonical_completion(f.completion) == canonical_completion(g.completion)
        and f.completion_unspecified == g.completion_unspecified
        for f, g in zip(F, G)
    )
    diffs = tuple(f.holo - g.holo for f, g in zip(F, G))
    if min(d.bound for d in diffs) < b:
        raise InsufficientPrecisionError(
            "difference vector lost precision before the requested bound"
        )
    rows = assemble_H(diffs)
    nonzero = []
    for h, series in enumerate(rows):
        for e in sorted(series.terms):
            if e < b:
                nonzero.append((h, e, series.terms[e]))
    return VanishingReport(not nonzero, b, completions_equal, tuple(nonzero))
