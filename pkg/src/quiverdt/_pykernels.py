"""Pure-Python dense polynomial kernels.

Polynomials are plain lists of Python ints in ascending order of exponent.
These are the reference implementations; ``_ckernels`` mirrors them with an
int64 fast path.
"""


def mul(a, b):
    """Dense convolution of two coefficient lists."""
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                if ai:
                    out[i + j] += ai * bj
    return out


def div_binomial(p, n):
    """Quotient of ``p`` by ``x**n - 1``, or ``None`` if the division is inexact.

    ``p`` must be trimmed at the top (last entry nonzero) and ``n >= 1``.
    """
    size = len(p)
    if size <= n:
        return None
    qlen = size - n
    q = [0] * qlen
    for j in range(qlen - 1, -1, -1):
        c = p[j + n]
        if j + n < qlen:
            c += q[j + n]
        q[j] = c
    for k in range(n):
        tail = q[k] if k < qlen else 0
        if p[k] != -tail:
            return None
    return q


def mul_binomial(p, n):
    """Product of ``p`` with ``x**n - 1``."""
    if not p:
        return []
    out = [-c for c in p] + [0] * n
    for i, c in enumerate(p):
        out[i + n] += c
    return out
