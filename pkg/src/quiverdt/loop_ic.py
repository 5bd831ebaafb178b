"""Intersection Betti polynomials of spaces of matrix invariants.

For the ``m``-loop quiver and dimension ``d`` the compactly supported IC
Poincare polynomial is

    v^{(m-1)d^2 + 1} (1 - v^-2) / (1 - v^-2d) * sum_C v^{-2 deg C}

where ``C`` runs over cyclic classes of almost primitive compositions of
``(m-1)d`` into ``d`` parts. This is an independent route to the DT
invariants of loop quivers computed in :mod:`quiverdt.dt`.

Readings of the combinatorics:

* a sequence is *primitive* when no nontrivial rotation fixes it;
* the exceptional almost primitive sequences (``m`` even, ``d = 2 mod 4``)
  are concatenations ``w + w`` of a primitive ``w`` of length ``d/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, NamedTuple, Tuple

from .coeff import VPolynomial, poly_exact_div
from .errors import NonExactDivision, NotDivisible


@dataclass(frozen=True)
class CyclicClass:
    representative: Tuple[int, ...]  # lexicographically smallest rotation
    orbit_size: int
    primitive: bool
    almost_primitive: bool
    degree: int


class APClasses(NamedTuple):
    classes: List[CyclicClass]
    total_classes: int


def compositions(total: int, parts: int):
    """All sequences of ``parts`` nonnegative ints summing to ``total``, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def rotations(seq):
    return [seq[i:] + seq[:i] for i in range(len(seq))]


def sequence_degree(seq) -> int:
    """``sum_{i=1}^d (d - i) a_i``."""
    d = len(seq)
    return sum((d - i) * a for i, a in enumerate(seq, start=1))


def class_degree(seq) -> int:
    """Minimal :func:`sequence_degree` over the rotations of ``seq``."""
    return min(sequence_degree(r) for r in rotations(tuple(seq)))


def _orbit_size(seq) -> int:
    d = len(seq)
    for k in range(1, d + 1):
        if d % k == 0 and seq[k:] + seq[:k] == seq:
            return k
    return d


def _is_primitive(seq) -> bool:
    return _orbit_size(seq) == len(seq)


def _check(m, d):
    if m < 2:
        raise ValueError(f"need m >= 2 loops, got {m}")
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")


def cyclic_classes(m: int, d: int) -> List[CyclicClass]:
    """Every cyclic class of compositions of ``(m-1)d`` into ``d`` parts, sorted."""
    _check(m, d)
    exceptional = m % 2 == 0 and d % 4 == 2
    seen = set()
    out = []
    for seq in compositions((m - 1) * d, d):
        rots = rotations(seq)
        rep = min(rots)
        if rep in seen:
            continue
        seen.add(rep)
        size = _orbit_size(rep)
        primitive = size == d
        almost = primitive
        if not primitive and exceptional:
            half = rep[: d // 2]
            almost = rep == half + half and _is_primitive(half)
        out.append(CyclicClass(rep, size, primitive, almost, min(map(sequence_degree, rots))))
    out.sort(key=lambda c: c.representative)
    return out


def enumerate_ap_classes(m: int, d: int) -> APClasses:
    """Almost primitive classes plus the number of all classes."""
    classes = cyclic_classes(m, d)
    return APClasses([c for c in classes if c.almost_primitive], len(classes))


def composition_count(m: int, d: int) -> int:
    return comb((m - 1) * d + d - 1, d - 1)


def ic_poincare_loop(m: int, d: int) -> VPolynomial:
    ap = enumerate_ap_classes(m, d).classes
    s = VPolynomial()
    for c in ap:
        s = s + VPolynomial.monomial(-2 * c.degree)
    num = s * VPolynomial({0: 1, -2: -1})
    num = num.shift((m - 1) * d * d + 1)
    try:
        return poly_exact_div(num, VPolynomial({0: 1, -2 * d: -1}))
    except NotDivisible as exc:
        raise NonExactDivision(f"formula for (m, d) = ({m}, {d}) is not a Laurent polynomial") from exc
