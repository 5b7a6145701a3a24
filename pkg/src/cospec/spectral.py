"""Spectral certificates.

The certificate of record is the exact integer characteristic
polynomial; two symmetric integer matrices are cospectral iff those
polynomials agree coefficient for coefficient. A floating Jacobi
spectrum is provided as a diagnostic cross-check only and never feeds
back into any verdict.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .errors import PreconditionError
from .matrix import IntMatrix

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial det(xI - M), leading coefficient first."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def digest(self) -> str:
        payload = ",".join(str(c) for c in self.coeffs)
        return hashlib.sha256(payload.encode("ascii")).hexdigest()

    def power_sums(self, count: int) -> list[int]:
        """Newton power sums p_1..p_count of the roots, count <= degree."""
        if not 0 <= count <= self.degree:
            raise ValueError("count must lie in [0, degree]")
        e = [(-1) ** k * self.coeffs[k] for k in range(len(self.coeffs))]
        p: list[int] = []
        for k in range(1, count + 1):
            s = (-1) ** (k - 1) * k * e[k]
            for i in range(1, k):
                s += (-1) ** (i - 1) * e[i] * p[k - i - 1]
            p.append(s)
        return p

    def eval_at(self, x: float) -> float:
        acc = 0.0
        for c in self.coeffs:
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class Spectrum:
    """Floating eigenvalues, sorted descending. Diagnostic only."""

    values: tuple[float, ...]


def char_poly(m: IntMatrix) -> CharPoly:
    """Exact coefficients of det(xI - m) via the Faddeev-LeVerrier recurrence.

    All divisions in the recurrence are exact over the integers, which is
    asserted rather than assumed.
    """
    if not m.is_square():
        raise PreconditionError("characteristic polynomial of a non-square matrix")
    n = m.rows
    a = [list(r) for r in m.entries]
    mk = [row[:] for row in a]
    coeffs = [1]
    for k in range(1, n + 1):
        tr = sum(mk[i][i] for i in range(n))
        c, rem = divmod(-tr, k)
        if rem:
            raise ArithmeticError("inexact division in trace recurrence")
        coeffs.append(c)
        if k == n:
            break
        for i in range(n):
            mk[i][i] += c
        mk = _matmul(a, mk)
    return CharPoly(tuple(coeffs))


def _matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def cospectral(a: IntMatrix, b: IntMatrix) -> bool:
    """True iff a and b have identical characteristic polynomials.

    Matrices of different sizes are never cospectral; both inputs must
    still be square.
    """
    if not a.is_square() or not b.is_square():
        raise PreconditionError("cospectrality is defined for square matrices")
    if a.rows != b.rows:
        return False
    return char_poly(a) == char_poly(b)


def spectrum_approx(m: IntMatrix) -> Spectrum:
    """Eigenvalues of a symmetric integer matrix by cyclic Jacobi sweeps."""
    if not m.is_symmetric():
        raise PreconditionError("Jacobi iteration needs a symmetric matrix")
    values = _jacobi([[float(x) for x in row] for row in m.entries])
    values.sort(reverse=True)
    total = sum(values)
    tr = float(m.trace())
    if abs(total - tr) > 1e-6 * max(1.0, abs(tr)):
        raise ArithmeticError("eigenvalue sum drifted away from the trace")
    return Spectrum(tuple(values))


def _jacobi(a: list[list[float]]) -> list[float]:
    n = len(a)
    if n == 1:
        return [a[0][0]]
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(
            sum(a[i][j] * a[i][j] for i in range(n) for j in range(n) if i != j)
        )
        if off <= JACOBI_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                tau = (a[q][q] - a[p][p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k][p]
                    akq = a[k][q]
                    a[k][p] = a[p][k] = c * akp - s * akq
                    a[k][q] = a[q][k] = s * akp + c * akq
                a[p][p] -= t * apq
                a[q][q] += t * apq
                a[p][q] = a[q][p] = 0.0
    return [a[i][i] for i in range(n)]
