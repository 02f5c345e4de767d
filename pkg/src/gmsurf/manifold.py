"""Graph-manifold combinatorics: Seifert pieces, gluing tori, decomposition matrix.

A graph manifold is described by its pieces (each a Seifert fibration over an
orientable base, carrying a rational Euler number) and the tori along which
they are glued.  From that data the decomposition matrix is derived:

    A[i][i] = euler number of piece i,
    A[i][j] = sum over tori between pieces i and j of 1/p(T),

where p(T) > 0 is the intersection number of the two sides' fibers in T.
Everything downstream (the decision procedure, reductions, surface
certificates) consumes either this matrix or the graph itself.

Standing normalizations, enforced by :func:`validate`:

- no piece is glued to itself, and p(T) > 0 for every torus;
- each torus carries change-of-basis data (q, q', p') with q*q' - p*p' = 1;
- every base orbifold has negative Euler characteristic;
- the underlying multigraph is connected and has no isolated pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_linalg import Rational, SymMatrix, to_rational


class InvalidGraphError(ValueError):
    """The decomposition graph violates a standing normalization."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


@dataclass(frozen=True)
class SeifertPiece:
    """One Seifert-fibered piece: id, rational Euler number, orientable base data."""

    id: int
    euler: Rational
    genus: int = 0
    cone_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "euler", to_rational(self.euler))
        object.__setattr__(self, "cone_orders", tuple(int(a) for a in self.cone_orders))
        if self.genus < 0:
            raise ValueError(f"piece {self.id}: genus must be non-negative")
        for a in self.cone_orders:
            if a < 2:
                raise ValueError(f"piece {self.id}: cone orders must be >= 2, got {a}")

    def orbifold_euler(self, boundary_count: int) -> Fraction:
        """Orbifold Euler characteristic of the base with the given number of
        boundary circles: 2 - 2g - b - sum(1 - 1/a_k)."""
        chi = Fraction(2 - 2 * self.genus - boundary_count)
        for a in self.cone_orders:
            chi -= 1 - Fraction(1, a)
        return chi


@dataclass(frozen=True)
class GluingTorus:
    """One gluing torus between two distinct pieces.

    p is the (positive) intersection number of the two sides' fibers.  The
    integers (q, q_prime, p_prime) complete the change-of-basis data: the
    matrix [[q, p], [-p_prime, -q_prime]] maps from-side (meridian, fiber)
    coordinates to to-side coordinates and must have determinant -1, i.e.
    q*q_prime - p*p_prime = 1.  Seen from the other side the roles swap:
    q and q_prime trade places while p and p_prime stay put.
    """

    from_piece: int
    to_piece: int
    p: int
    q: int = 1
    q_prime: int = 1
    p_prime: int = 0

    def __post_init__(self):
        for name in ("p", "q", "q_prime", "p_prime"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"torus field {name} must be an integer, got {value!r}")

    def q_for(self, piece_id: int) -> int:
        """The q datum seen from the given side."""
        if piece_id == self.from_piece:
            return self.q
        if piece_id == self.to_piece:
            return self.q_prime
        raise KeyError(f"piece {piece_id} is not a side of this torus")

    def touches(self, piece_id: int) -> bool:
        return piece_id in (self.from_piece, self.to_piece)


@dataclass(frozen=True)
class DecompositionGraph:
    """A graph manifold: pieces at the vertices, gluing tori as (multi)edges.

    Matrix indices follow the order of the ``pieces`` tuple, not piece ids;
    ids only name pieces in input files and torus records.
    """

    pieces: tuple[SeifertPiece, ...]
    tori: tuple[GluingTorus, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "tori", tuple(self.tori))

    def piece_index(self, piece_id: int) -> int:
        for k, piece in enumerate(self.pieces):
            if piece.id == piece_id:
                return k
        raise KeyError(f"unknown piece id {piece_id}")

    def piece(self, piece_id: int) -> SeifertPiece:
        return self.pieces[self.piece_index(piece_id)]

    def incident_tori(self, piece_id: int) -> list[GluingTorus]:
        return [t for t in self.tori if t.touches(piece_id)]


def validate(G: DecompositionGraph) -> list[str]:
    """Check every standing normalization; return all violations found (empty = valid)."""
    violations: list[str] = []
    ids = [p.id for p in G.pieces]
    if not G.pieces:
        violations.append("graph has no pieces")
        return violations
    seen: set[int] = set()
    for pid in ids:
        if pid in seen:
            violations.append(f"duplicate piece id {pid}")
        seen.add(pid)
    id_set = set(ids)

    for k, t in enumerate(G.tori):
        label = f"torus {k} ({t.from_piece}-{t.to_piece})"
        if t.from_piece == t.to_piece:
            violations.append(f"{label}: self-gluing (from = to)")
        for side in (t.from_piece, t.to_piece):
            if side not in id_set:
                violations.append(f"{label}: unknown piece id {side}")
        if t.p <= 0:
            violations.append(f"{label}: p must be positive, got {t.p}")
        det = t.q * t.q_prime - t.p * t.p_prime
        if det != 1:
            violations.append(f"{label}: qq' - pp' = {det} != 1")

    for piece in G.pieces:
        boundary = sum(1 for t in G.tori if t.touches(piece.id))
        if boundary == 0:
            violations.append(f"piece {piece.id}: not incident to any torus")
        chi = piece.orbifold_euler(boundary)
        if chi >= 0:
            violations.append(
                f"piece {piece.id}: orbifold Euler characteristic {chi} is not negative"
            )

    if len(G.pieces) > 1 or G.tori:
        adjacency: dict[int, set[int]] = {pid: set() for pid in id_set}
        for t in G.tori:
            if t.from_piece in id_set and t.to_piece in id_set and t.from_piece != t.to_piece:
                adjacency[t.from_piece].add(t.to_piece)
                adjacency[t.to_piece].add(t.from_piece)
        start = ids[0]
        reached = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adjacency[u]:
                if v not in reached:
                    reached.add(v)
                    stack.append(v)
        if reached != id_set:
            missing = sorted(id_set - reached)
            violations.append(f"graph is disconnected (pieces {missing} unreachable)")

    return violations


def decomposition_matrix(G: DecompositionGraph) -> SymMatrix:
    """The symmetric decomposition matrix of a valid graph.

    Diagonal: piece Euler numbers.  Off-diagonal (i, j): sum of 1/p(T) over
    the tori joining pieces i and j (parallel tori each contribute).
    """
    violations = validate(G)
    if violations:
        raise InvalidGraphError(violations)
    n = len(G.pieces)
    index = {p.id: k for k, p in enumerate(G.pieces)}
    entries = [[Fraction(0)] * n for _ in range(n)]
    for k, piece in enumerate(G.pieces):
        entries[k][k] = piece.euler
    for t in G.tori:
        i, j = index[t.from_piece], index[t.to_piece]
        entries[i][j] += Fraction(1, t.p)
        entries[j][i] += Fraction(1, t.p)
    return SymMatrix(entries)


def a_minus(A: SymMatrix) -> SymMatrix:
    """The same matrix with every positive diagonal entry negated."""
    rows = A.to_lists()
    for i in range(A.order):
        if rows[i][i] > 0:
            rows[i][i] = -rows[i][i]
    return SymMatrix(rows)


def split_blocks(A: SymMatrix) -> tuple[list[int], list[int], list[int]]:
    """Indices split by diagonal sign: (positive, negative, zero).

    Zero-diagonal indices are returned separately so the decision layer can
    treat their block assignment explicitly.
    """
    pos = [i for i in range(A.order) if A[i, i] > 0]
    neg = [i for i in range(A.order) if A[i, i] < 0]
    zero = [i for i in range(A.order) if A[i, i] == 0]
    return pos, neg, zero


def euler_wrt_meridians(G: DecompositionGraph, piece_id: int) -> Fraction:
    """Euler number of a piece with respect to the chosen meridians:
    e' = e - sum over incident tori of q(T)/p(T), with q read from this
    piece's side of each torus."""
    piece = G.piece(piece_id)
    e_prime = piece.euler
    for t in G.tori:
        if t.touches(piece_id):
            e_prime -= Fraction(t.q_for(piece_id), t.p)
    return e_prime


def two_piece_graph(
    e1: int | str | Fraction,
    e2: int | str | Fraction,
    tori: Sequence[GluingTorus] | None = None,
    genus: int = 1,
) -> DecompositionGraph:
    """Convenience constructor for the two-piece family used throughout tests:
    pieces 1 and 2 with the given Euler numbers, one unit torus by default."""
    if tori is None:
        tori = (GluingTorus(from_piece=1, to_piece=2, p=1),)
    return DecompositionGraph(
        pieces=(
            SeifertPiece(id=1, euler=to_rational(e1), genus=genus),
            SeifertPiece(id=2, euler=to_rational(e2), genus=genus),
        ),
        tori=tuple(tori),
    )
