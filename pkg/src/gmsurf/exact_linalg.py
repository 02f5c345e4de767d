"""Exact rational linear algebra for small dense symmetric matrices.

Everything here works over arbitrary-precision rationals (`fractions.Fraction`);
there is no floating point anywhere.  Matrices are tiny (a graph manifold has a
few dozen Seifert pieces at most), so dense storage and O(s^3) algorithms are
the right trade-off.

The signature routine is :func:`inertia`, which computes the exact eigenvalue
sign counts (n_pos, n_zero, n_neg) of a symmetric rational matrix by congruence
diagonalization; by Sylvester's law of inertia the sign counts are invariant
under congruence, so no root finding is needed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class DisconnectedMatrixError(ValueError):
    """The matrix graph (edges where an off-diagonal entry is nonzero) is disconnected."""


def to_rational(value: int | str | Fraction) -> Fraction:
    """Convert an exact value to a Fraction.

    Accepts ints, Fractions and strings like ``"3"``, ``"-5/2"``.  Floats are
    rejected outright: every number in this package must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("cannot convert bool to a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"floats are not exact; got {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not a rational string: {value!r}")
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise ValueError(f"zero denominator: {value!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def rational_str(value: Fraction) -> str:
    """Serialize a rational as ``"num/den"`` or ``"int"`` (bit-exact round trip)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Inertia:
    """Exact eigenvalue sign counts of a symmetric matrix."""

    n_pos: int
    n_zero: int
    n_neg: int

    @property
    def order(self) -> int:
        return self.n_pos + self.n_zero + self.n_neg

    def __str__(self) -> str:
        return f"({self.n_pos}, {self.n_zero}, {self.n_neg})"


class SymMatrix:
    """Immutable dense symmetric matrix over the rationals.

    Symmetry is enforced at construction; all entries are normalized through
    :func:`to_rational`, so floats are rejected.
    """

    __slots__ = ("rows",)

    rows: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Sequence[Sequence[int | str | Fraction]]):
        converted = tuple(tuple(to_rational(x) for x in row) for row in rows)
        n = len(converted)
        for row in converted:
            if len(row) != n:
                raise ValueError(f"not square: {n} rows but a row of length {len(row)}")
        for i in range(n):
            for j in range(i + 1, n):
                if converted[i][j] != converted[j][i]:
                    raise ValueError(f"not symmetric at ({i}, {j})")
        object.__setattr__(self, "rows", converted)

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    @property
    def order(self) -> int:
        return len(self.rows)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(rational_str(x) for x in row) + "]" for row in self.rows)
        return f"SymMatrix([{body}])"

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.rows[i][i] for i in range(self.order))

    def to_lists(self) -> list[list[Fraction]]:
        """Mutable copy of the entries."""
        return [list(row) for row in self.rows]

    @classmethod
    def from_diagonal(cls, values: Sequence[int | str | Fraction]) -> "SymMatrix":
        vals = [to_rational(v) for v in values]
        n = len(vals)
        return cls([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls.from_diagonal([1] * n)

    @classmethod
    def zero(cls, n: int) -> "SymMatrix":
        return cls([[0] * n for _ in range(n)])


def inertia(A: SymMatrix) -> Inertia:
    """Exact inertia (n_pos, n_zero, n_neg) by symmetric congruence reduction.

    Uses 1x1 pivots, swapping in a nonzero diagonal entry when available.  When
    the whole trailing diagonal is zero but some off-diagonal entry b is not,
    adding row+column j to row+column k manufactures the pivot 2b (the classic
    handling of a [[0, b], [b, 0]] block, which contributes one positive and
    one negative eigenvalue).  Correctness is Sylvester's law of inertia.
    """
    n = A.order
    m = A.to_lists()
    n_pos = n_zero = n_neg = 0
    k = 0
    while k < n:
        if m[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if swap is not None:
                for c in range(k, n):
                    m[k][c], m[swap][c] = m[swap][c], m[k][c]
                for r in range(k, n):
                    m[r][k], m[r][swap] = m[r][swap], m[r][k]
            else:
                mate = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if mate is None:
                    n_zero += 1
                    k += 1
                    continue
                for c in range(k, n):
                    m[k][c] = m[k][c] + m[mate][c]
                for r in range(k, n):
                    m[r][k] = m[r][k] + m[r][mate]
        pivot = m[k][k]
        if pivot > 0:
            n_pos += 1
        else:
            n_neg += 1
        for i in range(k + 1, n):
            factor = m[i][k]
            if factor == 0:
                continue
            for j in range(k + 1, n):
                m[i][j] -= factor * m[k][j] / pivot
        k += 1
    return Inertia(n_pos, n_zero, n_neg)


def is_negative_definite(A: SymMatrix) -> bool:
    """True iff every eigenvalue is negative.  The 0x0 matrix is negative
    definite by convention (vacuously; empty blocks need this)."""
    if A.order == 0:
        return True
    ine = inertia(A)
    return ine.n_pos == 0 and ine.n_zero == 0


def determinant(A: SymMatrix) -> Fraction:
    """Exact determinant (rational Gaussian elimination)."""
    return determinant_rows(A.to_lists())


def determinant_rows(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a general (not necessarily symmetric) square matrix."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in rows]
    sign = 1
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        pivot = m[col][col]
        det *= pivot
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            factor = m[r][col] / pivot
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det * sign


def nullspace_rows(rows: Sequence[Sequence[Fraction]]) -> list[tuple[Fraction, ...]]:
    """Exact basis of the null space of a general square or rectangular matrix.

    Returned vectors come from the reduced row echelon form, one per free
    column, in ascending free-column order (deterministic).
    """
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivot_cols: list[int] = []
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        lead = m[row][col]
        m[row] = [x / lead for x in m[row]]
        for r in range(n_rows):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivot_cols.append(col)
        row += 1
        if row == n_rows:
            break
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivot_cols):
            vec[pc] = -m[r][free]
        basis.append(tuple(vec))
    return basis


def kernel_basis(A: SymMatrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of the null space of a symmetric matrix (possibly empty)."""
    return nullspace_rows(A.rows)


def solve_rows(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Solve a nonsingular square system exactly.  Raises ValueError if singular."""
    n = len(rows)
    m = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular system")
        m[col], m[pivot] = m[pivot], m[col]
        lead = m[col][col]
        m[col] = [x / lead for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return tuple(m[i][n] for i in range(n))


def matrix_graph_components(A: SymMatrix) -> list[list[int]]:
    """Connected components of the matrix graph (edge {i, j} iff A[i][j] != 0, i != j).

    Components are sorted lists of indices, ordered by smallest member.
    """
    n = A.order
    seen = [False] * n
    components: list[list[int]] = []
    for start in range(n):
        if seen[start]:
            continue
        queue = [start]
        seen[start] = True
        comp = []
        while queue:
            i = queue.pop()
            comp.append(i)
            for j in range(n):
                if j != i and not seen[j] and A[i, j] != 0:
                    seen[j] = True
                    queue.append(j)
        components.append(sorted(comp))
    return components


def is_connected_matrix(A: SymMatrix) -> bool:
    return len(matrix_graph_components(A)) <= 1


def principal_submatrix(A: SymMatrix, idx: Iterable[int]) -> SymMatrix:
    """Symmetric submatrix on the rows/columns ``idx``.

    ``idx`` may be given in any order; duplicates are rejected.  The empty
    index set yields the 0x0 matrix, which :func:`is_negative_definite`
    treats as negative definite (the convention the block tests rely on).
    """
    indices = sorted(idx)
    if len(set(indices)) != len(indices):
        raise IndexError("duplicate indices")
    n = A.order
    for i in indices:
        if not 0 <= i < n:
            raise IndexError(f"index {i} out of range for order {n}")
    return SymMatrix([[A[i, j] for j in indices] for i in indices])


def mat_vec(rows: Sequence[Sequence[Fraction]], vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Exact matrix-vector product."""
    return tuple(sum((r[j] * vec[j] for j in range(len(vec))), Fraction(0)) for r in rows)


def primitive_vector(vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale a rational vector by a positive rational to coprime integer entries.

    The zero vector is returned unchanged.  Scaling by a positive factor
    preserves direction, sign pattern, and support, so callers may normalize
    kernel vectors freely.
    """
    from math import gcd, lcm

    nonzero = [v for v in vec if v != 0]
    if not nonzero:
        return tuple(vec)
    denominator_lcm = lcm(*(v.denominator for v in nonzero))
    scaled = [v * denominator_lcm for v in vec]
    numerator_gcd = gcd(*(abs(v.numerator) for v in scaled if v != 0))
    return tuple(v / numerator_gcd for v in scaled)
