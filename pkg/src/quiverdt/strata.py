"""Luna decomposition types and the virtual-smallness inequality.

These are arithmetic checks: each routine evaluates the dimension estimates
for one decomposition type exactly (half-integers as Fractions). Stable loci
are approximated by the numerical condition ``(d^k, d^k) <= 1``, so a type may
be listed whose stratum is actually empty; the inequality is still meaningful
for it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import NegativeArrowCount, NonGenericStability, NotSymmetric, ZeroDimension
from .quiver import Quiver, euler_form, ext_quiver, generic_check, is_symmetric, slope

DimVector = Tuple[int, ...]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DecompositionType:
    """``((d^1, m_1), ..., (d^s, m_s))`` in canonical (sorted) order."""

    parts: Tuple[Tuple[DimVector, int], ...]

    def __post_init__(self):
        parts = tuple(sorted((tuple(d), int(m)) for d, m in self.parts))
        object.__setattr__(self, "parts", parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def total(self) -> DimVector:
        n = len(self.parts[0][0])
        return tuple(sum(m * d[i] for d, m in self.parts) for i in range(n))

    def is_generic_type(self) -> bool:
        return len(self.parts) == 1 and self.parts[0][1] == 1

    def __str__(self):
        return "+".join(f"{','.join(map(str, d))}^{m}" for d, m in self.parts)


def enumerate_types(Q: Quiver, theta, d) -> List[DecompositionType]:
    """All decomposition types of ``d`` with parts of slope ``slope(d)`` and ``(d^k,d^k) <= 1``."""
    Q.check(theta, d)
    d = tuple(d)
    if not any(d):
        raise ZeroDimension("decomposition types need d != 0")
    mu = slope(theta, d)
    candidates = []
    for e in itertools.product(*(range(x + 1) for x in d)):
        if not any(e) or slope(theta, e) != mu or euler_form(Q, e, e) > 1:
            continue
        m = 1
        while all(m * x <= y for x, y in zip(e, d)):
            candidates.append((e, m))
            m += 1
    candidates.sort()

    out = []

    def extend(start, remaining, chosen):
        if not any(remaining):
            out.append(DecompositionType(tuple(chosen)))
            return
        for idx in range(start, len(candidates)):
            e, m = candidates[idx]
            if all(m * x <= y for x, y in zip(e, remaining)):
                chosen.append((e, m))
                extend(idx, tuple(y - m * x for x, y in zip(e, remaining)), chosen)
                chosen.pop()

    extend(0, d, [])
    return sorted(out, key=lambda t: (t.length, t.parts))


def codim_stratum(Q: Quiver, xi: DecompositionType) -> int:
    """``-(d,d) + sum_k (d^k,d^k) + 1 - s``."""
    d = xi.total()
    return -euler_form(Q, d, d) + sum(euler_form(Q, e, e) for e, _ in xi.parts) + 1 - xi.length


def nullcone_bound(Q: Quiver, d) -> Fraction:
    """Upper bound for ``dim N_d - dim G_d`` on a symmetric quiver."""
    if not is_symmetric(Q):
        raise NotSymmetric("the nullcone estimate needs a symmetric quiver")
    Q.check(d)
    self_forms = sum((1 - Q.loops(i)) * x for i, x in enumerate(d))
    return -HALF * euler_form(Q, d, d) + HALF * self_forms - sum(d)


@dataclass
class TypeCheck:
    xi: DecompositionType
    fiber_bound: Fraction
    fiber_bound_local: Optional[Fraction]
    rhs: Fraction
    holds: bool
    equality: bool
    simplified_lhs: Fraction
    simplified_rhs: Fraction


@dataclass
class VirtualSmallnessReport:
    passed: bool
    d: DimVector
    f: DimVector
    checks: List[TypeCheck]
    note: str = (
        "types are enumerated from the necessary condition (d^k,d^k) <= 1; "
        "some strata may be empty"
    )


def verify_virtual_smallness(Q: Quiver, theta, d, f, *, force: bool = False) -> VirtualSmallnessReport:
    """Check ``dim pi^{-1}(x) - (f.d - 1) <= codim(S_xi) / 2`` on every type.

    The fiber bound is evaluated twice: by the closed formula in terms of
    ``(d^k, d^k)`` and ``m_k``, and (when the Ext-quiver exists) as the
    nullcone bound of ``Q_xi`` plus ``f_xi . m``. Passing also requires
    equality exactly at the type ``((d, 1))``.
    """
    Q.check(theta, d, f)
    d, f = tuple(d), tuple(f)
    if not any(f) or any(x < 0 for x in f):
        raise ValueError("framing vector must be nonnegative and nonzero")
    report = generic_check(Q, theta, d)
    if not report.generic and not force:
        raise NonGenericStability(f"stability {tuple(theta)} is not generic", report.witness)
    fd = sum(x * y for x, y in zip(f, d))
    dd = euler_form(Q, d, d)
    checks = []
    for xi in enumerate_types(Q, theta, d):
        selfs = [euler_form(Q, e, e) for e, _ in xi.parts]
        mults = [m for _, m in xi.parts]
        fiber = -HALF * dd + HALF * sum(c * m for c, m in zip(selfs, mults)) - sum(mults) + fd
        rhs = (fd - 1) + HALF * codim_stratum(Q, xi)
        try:
            local = ext_quiver(Q, [e for e, _ in xi.parts])
        except NegativeArrowCount:
            local_bound = None
        else:
            f_local = [sum(x * y for x, y in zip(f, e)) for e, _ in xi.parts]
            local_bound = (
                nullcone_bound(local, mults) + sum(a * b for a, b in zip(f_local, mults))
                if is_symmetric(local) else None
            )
        s_lhs = HALF * sum((c - 2) * (m - 1) for c, m in zip(selfs, mults))
        s_rhs = HALF * (xi.length - 1)
        checks.append(
            TypeCheck(xi, fiber, local_bound, rhs, fiber <= rhs, fiber == rhs, s_lhs, s_rhs)
        )
    passed = all(
        c.holds
        and c.equality == c.xi.is_generic_type()
        and (c.simplified_lhs <= c.simplified_rhs) == c.holds
        and (c.fiber_bound_local is None or c.fiber_bound_local == c.fiber_bound)
        for c in checks
    )
    return VirtualSmallnessReport(passed, d, f, checks)
