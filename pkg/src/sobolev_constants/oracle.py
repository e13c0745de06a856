"""Variational brute force for A^2_{n,k}(a), independent of any closed form.

The supremum of ``|f^(k)(a)|^2 / ||f^(n)||^2`` is taken over every
piecewise polynomial of degree <= 2n-1 on [lo, a] and [a, hi] that meets
the 2n boundary conditions and is C^(2n-k-2) at ``a``.  That space holds
the Riesz representer, so ``v^T G^{-1} v`` over it is the exact constant.
Everything below is exact rational linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .ratpoly import PiecewisePoly, Poly, Scalar, as_rational

Matrix = List[List[Fraction]]


class SingularSystemError(ArithmeticError):
    """Gram matrix is not positive definite: the basis is broken."""


@dataclass(frozen=True)
class SubspaceBasis:
    n: int
    k: int
    a: Fraction
    lo: Fraction
    hi: Fraction
    degree: int
    continuity: int
    functions: tuple

    @property
    def dimension(self) -> int:
        return len(self.functions)


@dataclass(frozen=True)
class GramSystem:
    G: tuple
    v: tuple


def nullspace(rows: Matrix, ncols: int) -> List[List[Fraction]]:
    """Exact basis of ``{c : rows @ c = 0}`` via reduced row echelon form."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            vec[pc] = -m[row][fc]
        basis.append(vec)
    return basis


def matrix_rank(rows: Matrix, ncols: int) -> int:
    return ncols - len(nullspace(rows, ncols))


def _derivative_row(order: int, x: Fraction, degree: int) -> List[Fraction]:
    """Coefficients of D^order(sum c_i x^i) evaluated at ``x``, per c_i."""
    row = []
    for i in range(degree + 1):
        if i < order:
            row.append(Fraction(0))
            continue
        f = 1
        for j in range(order):
            f *= i - j
        row.append(f * x ** (i - order))
    return row


def build_subspace(n: int, k: int, a: Scalar, lo: Scalar = 0, hi: Scalar = 1,
                   degree: Optional[int] = None, continuity: Optional[int] = None) -> SubspaceBasis:
    """Basis of the admissible two-piece spline space.

    ``degree`` defaults to 2n-1 and ``continuity`` (highest derivative order
    forced continuous at ``a``) to 2n-k-2.  Larger degree or smaller
    continuity enlarge the space, which is how the dominance checks work.
    """
    if n < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"k must satisfy 0 <= k <= n-1, got n={n}, k={k}")
    a, lo, hi = as_rational(a), as_rational(lo), as_rational(hi)
    if not lo < a < hi:
        raise ValueError(f"a must lie strictly inside ({lo}, {hi}), got a={a}")
    degree = 2 * n - 1 if degree is None else degree
    continuity = 2 * n - k - 2 if continuity is None else continuity
    if continuity < max(k, n - 1):
        raise ValueError("continuity order must be at least max(k, n-1) to stay inside H")
    if degree < 2 * n - 1:
        raise ValueError("degree below 2n-1 cannot contain the representer")
    width = degree + 1
    zeros = [Fraction(0)] * width
    rows: Matrix = []
    for j in range(n):
        rows.append(_derivative_row(j, lo, degree) + zeros)
        rows.append(zeros + _derivative_row(j, hi, degree))
    for i in range(continuity + 1):
        d = _derivative_row(i, a, degree)
        rows.append(d + [-x for x in d])
    funcs = []
    for vec in nullspace(rows, 2 * width):
        funcs.append(PiecewisePoly(a, Poly(vec[:width]), Poly(vec[width:]), lo, hi))
    return SubspaceBasis(n, k, a, lo, hi, degree, continuity, tuple(funcs))


def gram_system(basis: SubspaceBasis) -> GramSystem:
    n, k, a = basis.n, basis.k, basis.a
    fs = basis.functions
    G = [[Fraction(0)] * len(fs) for _ in fs]
    for i, fi in enumerate(fs):
        for j in range(i, len(fs)):
            G[i][j] = G[j][i] = fi.inner(fs[j], n)
    v = [f.left.derivative(k)(a) for f in fs]
    return GramSystem(tuple(tuple(r) for r in G), tuple(v))


def spd_solve(G: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> List[Fraction]:
    """Solve ``G x = v`` by symmetric elimination without pivoting.

    Every pivot must be strictly positive, which certifies positive
    definiteness; anything else aborts.
    """
    size = len(v)
    m = [list(r) + [v[i]] for i, r in enumerate(G)]
    for c in range(size):
        p = m[c][c]
        if p <= 0:
            raise SingularSystemError(f"nonpositive pivot {p} at step {c}")
        for r in range(c + 1, size):
            f = m[r][c] / p
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    x = [Fraction(0)] * size
    for r in range(size - 1, -1, -1):
        s = m[r][size] - sum(m[r][j] * x[j] for j in range(r + 1, size))
        x[r] = s / m[r][r]
    return x


def supremum(basis: SubspaceBasis) -> Fraction:
    sys_ = gram_system(basis)
    x = spd_solve(sys_.G, sys_.v)
    return sum((vi * xi for vi, xi in zip(sys_.v, x)), Fraction(0))


def oracle_a_squared(n: int, k: int, a: Scalar) -> Fraction:
    return supremum(build_subspace(n, k, a))


def oracle_symmetric_interval(n: int, k: int, a_sym: Scalar) -> Fraction:
    """Same supremum for functions on [-1, 1] evaluated at ``a_sym``."""
    return supremum(build_subspace(n, k, a_sym, lo=-1, hi=1))
