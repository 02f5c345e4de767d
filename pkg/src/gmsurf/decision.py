"""Decision procedures for the two surface-existence properties.

Both decisions read off the exact inertia of A-minus (the decomposition matrix
with positive diagonal entries negated):

- "immersed" (property I) holds iff A-minus has a positive eigenvalue, or is
  negative semidefinite and singular while all diagonal entries of A share a
  sign (all >= 0 or all <= 0);
- "virtually embedded" (property VE) holds iff one of the two diagonal blocks,
  the positive-diagonal block with its diagonal negated or the
  negative-diagonal block, fails to be negative definite.  A zero diagonal
  entry makes whichever block receives it non-definite, so any zero diagonal
  gives VE immediately.

VE implies I for every connected input (tested exhaustively downstream), so a
disconnected matrix graph is rejected rather than decided per component.

For two-piece manifolds the single rational D = A11*A22 / A12^2 carries both
answers: I holds iff -1 < D <= 1 and VE holds iff 0 <= D <= 1.  That invariant
is exposed as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exact_linalg import (
    DisconnectedMatrixError,
    Inertia,
    SymMatrix,
    inertia,
    is_connected_matrix,
    is_negative_definite,
    principal_submatrix,
)
from .manifold import a_minus, split_blocks


class NotTwoPieceError(ValueError):
    """The matrix is not a two-piece decomposition matrix with a positive coupling."""


class Branch(Enum):
    """Which clause of the immersed-surface criterion fired."""

    POSITIVE_EIGENVALUE = "PositiveEigenvalue"
    SEMIDEFINITE_SAME_SIGN = "SemidefiniteSameSign"
    SEMIDEFINITE_MIXED_SIGN = "SemidefiniteMixedSign"
    NEGATIVE_DEFINITE = "NegativeDefinite"


@dataclass(frozen=True)
class Verdict:
    """Joint outcome of both decisions for one matrix."""

    property_i: bool
    property_ve: bool
    branch: Branch
    inertia_of_a_minus: Inertia


def _check_input(A: SymMatrix) -> None:
    if A.order == 0:
        raise ValueError("empty matrix")
    for i in range(A.order):
        for j in range(i + 1, A.order):
            if A[i, j] < 0:
                raise ValueError(f"negative off-diagonal entry at ({i}, {j})")
    if not is_connected_matrix(A):
        raise DisconnectedMatrixError("matrix graph is disconnected")


def _same_sign_diagonal(A: SymMatrix) -> bool:
    diag = A.diagonal()
    return all(d >= 0 for d in diag) or all(d <= 0 for d in diag)


def decide_immersed(A: SymMatrix) -> tuple[bool, Branch]:
    """Decide property I from the inertia of A-minus.

    True on the positive-eigenvalue branch, and on the negative-semidefinite
    singular branch provided all diagonal entries of A have the same sign
    (zero counting as either sign).
    """
    _check_input(A)
    ine = inertia(a_minus(A))
    if ine.n_pos > 0:
        return True, Branch.POSITIVE_EIGENVALUE
    if ine.n_zero > 0:
        if _same_sign_diagonal(A):
            return True, Branch.SEMIDEFINITE_SAME_SIGN
        return False, Branch.SEMIDEFINITE_MIXED_SIGN
    return False, Branch.NEGATIVE_DEFINITE


def decide_virtually_embedded(A: SymMatrix) -> bool:
    """Decide property VE via the diagonal-sign block split.

    Any zero diagonal entry settles the question: whichever block receives
    that index gains a zero diagonal entry and cannot be negative definite.
    Otherwise test the two blocks separately; empty blocks are negative
    definite vacuously.
    """
    _check_input(A)
    pos, neg, zero = split_blocks(A)
    if zero:
        return True
    p_block = a_minus(principal_submatrix(A, pos))
    n_block = principal_submatrix(A, neg)
    return not is_negative_definite(p_block) or not is_negative_definite(n_block)


def decide(A: SymMatrix) -> Verdict:
    """Run both decisions and package the outcome."""
    property_i, branch = decide_immersed(A)
    property_ve = decide_virtually_embedded(A)
    return Verdict(
        property_i=property_i,
        property_ve=property_ve,
        branch=branch,
        inertia_of_a_minus=inertia(a_minus(A)),
    )


@dataclass(frozen=True)
class TwoPieceInvariant:
    """The rational invariant D = A11*A22 / A12^2 of a two-piece manifold."""

    d: Fraction
    a11: Fraction
    a22: Fraction
    a12: Fraction

    @property
    def i_via_d(self) -> bool:
        """Property I in terms of D alone: -1 < D <= 1."""
        return -1 < self.d <= 1

    @property
    def ve_via_d(self) -> bool:
        """Property VE in terms of D alone: 0 <= D <= 1."""
        return 0 <= self.d <= 1

    @property
    def fibers_over_circle(self) -> bool:
        """Informational cross-check: the manifold fibers over the circle
        exactly when D = 1."""
        return self.d == 1

    @property
    def virtually_fibers(self) -> bool:
        """Informational cross-check: virtual fibering holds exactly when
        0 < D <= 1 or both diagonal entries vanish."""
        return (0 < self.d <= 1) or (self.a11 == 0 and self.a22 == 0)


def two_piece_d(A: SymMatrix) -> TwoPieceInvariant:
    """Compute D for a 2x2 decomposition matrix with positive coupling."""
    if A.order != 2:
        raise NotTwoPieceError(f"need a 2x2 matrix, got order {A.order}")
    if A[0, 1] <= 0:
        raise NotTwoPieceError(f"need a positive off-diagonal entry, got {A[0, 1]}")
    d = A[0, 0] * A[1, 1] / (A[0, 1] ** 2)
    return TwoPieceInvariant(d=d, a11=A[0, 0], a22=A[1, 1], a12=A[0, 1])
