"""Quivers, Euler forms, King slopes and the two derived quivers.

Dimension vectors and stabilities are plain tuples of ints. Slopes are
:class:`fractions.Fraction` values, which are reduced and compare exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import LengthMismatch, NegativeArrowCount, ZeroDimension

DimVector = Tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    """Finite quiver given by its arrow-multiplicity matrix.

    ``arrows[i][j]`` is the number of arrows from vertex ``i`` to vertex ``j``.
    """

    vertex_labels: Tuple[str, ...]
    arrows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.vertex_labels)
        rows = tuple(tuple(int(a) for a in row) for row in self.arrows)
        n = len(labels)
        if len(set(labels)) != n:
            raise ValueError("vertex labels must be distinct")
        if len(rows) != n or any(len(row) != n for row in rows):
            raise LengthMismatch(f"arrow matrix must be {n}x{n}")
        if any(a < 0 for row in rows for a in row):
            raise ValueError("arrow multiplicities must be nonnegative")
        object.__setattr__(self, "vertex_labels", labels)
        object.__setattr__(self, "arrows", rows)

    @classmethod
    def from_matrix(cls, arrows: Sequence[Sequence[int]], labels=None) -> "Quiver":
        n = len(arrows)
        if labels is None:
            labels = [str(i + 1) for i in range(n)]
        return cls(tuple(labels), tuple(tuple(r) for r in arrows))

    @classmethod
    def loop(cls, m: int) -> "Quiver":
        """One vertex with ``m`` loops (``m = 1`` is the Jordan quiver)."""
        return cls(("1",), ((m,),))

    @classmethod
    def kronecker(cls, m: int = 2) -> "Quiver":
        """Two vertices with ``m`` arrows from the first to the second."""
        return cls(("1", "2"), ((0, m), (0, 0)))

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    def num_arrows(self) -> int:
        return sum(map(sum, self.arrows))

    def loops(self, i: int) -> int:
        return self.arrows[i][i]

    def check(self, *vectors) -> None:
        n = self.num_vertices
        for d in vectors:
            if len(d) != n:
                raise LengthMismatch(f"vector {tuple(d)} has length {len(d)}, quiver has {n} vertices")


def euler_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """``(d, e) = sum_i d_i e_i - sum_{a: i -> j} d_i e_j``."""
    Q.check(d, e)
    total = sum(x * y for x, y in zip(d, e))
    for i, row in enumerate(Q.arrows):
        if d[i]:
            for j, a in enumerate(row):
                if a:
                    total -= a * d[i] * e[j]
    return total


def antisym_form(Q: Quiver, d, e) -> int:
    return euler_form(Q, d, e) - euler_form(Q, e, d)


def slope(theta: Sequence[int], d: Sequence[int]) -> Fraction:
    """King slope ``theta . d / |d|``."""
    if len(theta) != len(d):
        raise LengthMismatch("stability and dimension vector lengths differ")
    size = sum(d)
    if size == 0:
        raise ZeroDimension("slope of the zero dimension vector")
    return Fraction(sum(t * x for t, x in zip(theta, d)), size)


def is_symmetric(Q: Quiver) -> bool:
    a = Q.arrows
    n = Q.num_vertices
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def box_vectors(box: Sequence[int], include_zero: bool = False, max_degree: Optional[int] = None):
    """All ``d <= box``, ordered by total degree and then with earlier vertices first.

    Within one degree the order is reverse-lexicographic, so for degree one
    this lists ``(1,0,..), (0,1,..), ...``.
    """
    vecs = [
        d for d in itertools.product(*(range(b + 1) for b in box))
        if (include_zero or any(d)) and (max_degree is None or sum(d) <= max_degree)
    ]
    vecs.sort(key=lambda d: (sum(d), tuple(-x for x in d)))
    return vecs


@dataclass(frozen=True)
class GenericityReport:
    generic: bool
    unconditional: bool
    box: DimVector
    witness: Optional[Tuple[DimVector, DimVector, int]] = None

    @property
    def kind(self) -> str:
        if not self.generic:
            return "non-generic"
        return "unconditional" if self.unconditional else "box-relative"


def generic_check(Q: Quiver, theta: Sequence[int], box: Sequence[int]) -> GenericityReport:
    """Check ``<d,e> = 0`` for all nonzero ``d, e <= box`` of equal slope.

    Symmetric quivers are generic for every stability, which is reported as
    unconditional without enumeration.
    """
    Q.check(theta, box)
    box = tuple(box)
    if any(b < 0 for b in box):
        raise ValueError("box must be nonnegative")
    if is_symmetric(Q):
        return GenericityReport(True, True, box)
    vecs = box_vectors(box)
    slopes = [slope(theta, d) for d in vecs]
    for i, d in enumerate(vecs):
        for j in range(i + 1, len(vecs)):
            if slopes[j] == slopes[i]:
                w = antisym_form(Q, d, vecs[j])
                if w:
                    return GenericityReport(False, False, box, (d, vecs[j], w))
    return GenericityReport(True, False, box)


def ext_quiver(Q: Quiver, xi: Sequence[Sequence[int]]) -> Quiver:
    """Local quiver with ``delta_kl - (d^k, d^l)`` arrows from ``k`` to ``l``."""
    s = len(xi)
    rows = []
    for k in range(s):
        row = []
        for l in range(s):
            a = (1 if k == l else 0) - euler_form(Q, xi[k], xi[l])
            if a < 0:
                raise NegativeArrowCount(
                    f"delta - (d^{k + 1}, d^{l + 1}) = {a} < 0 for {tuple(xi[k])}, {tuple(xi[l])}"
                )
            row.append(a)
        rows.append(tuple(row))
    return Quiver(tuple(str(k + 1) for k in range(s)), tuple(rows))


def framed_quiver(Q: Quiver, f: Sequence[int]) -> Tuple[Quiver, int]:
    """Add a vertex ``inf`` with ``f_i`` arrows to each ``i``; returns ``(Qf, index of inf)``."""
    Q.check(f)
    if any(x < 0 for x in f):
        raise ValueError("framing vector must be nonnegative")
    n = Q.num_vertices
    rows = [tuple(row) + (0,) for row in Q.arrows]
    rows.append(tuple(f) + (0,))
    label = "inf"
    while label in Q.vertex_labels:
        label += "'"
    return Quiver(Q.vertex_labels + (label,), tuple(rows)), n
