"""Paired t-test on per-subject means.

The two-tailed p-value comes from the regularized incomplete beta function:
p = I_x(df/2, 1/2) at x = df / (df + t^2), evaluated with the classic
continued-fraction expansion so no statistics library sits in this path.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class TTestResult:
    t: float
    df: int
    p: float
    reject: bool
    alpha: float
    degenerate: bool = False


def paired_t_test(a, b, alpha=0.05):
    """Two-tailed paired t-test of equal means.

    ``a`` and ``b`` are per-subject means under two conditions. Uses the
    sample standard deviation (n-1 denominator); df = n-1. Zero-variance
    differences flag the result degenerate: t is +-inf with p = 0 when the
    mean difference is nonzero, and t = 0 with p = 1 when the pairs are
    all identical.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(
            f"need two equal-length 1-d arrays, got {a.shape} and {b.shape}"
        )
    n = a.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 pairs, got {n}")
    d = a - b
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    df = n - 1
    if sd == 0.0:
        if mean == 0.0:
            return TTestResult(t=0.0, df=df, p=1.0, reject=False,
                               alpha=alpha, degenerate=True)
        t = math.inf if mean > 0 else -math.inf
        return TTestResult(t=t, df=df, p=0.0, reject=True,
                           alpha=alpha, degenerate=True)
    t = mean / (sd / math.sqrt(n))
    p = t_two_tailed_p(t, df)
    return TTestResult(t=t, df=df, p=p, reject=p < alpha, alpha=alpha)


def t_two_tailed_p(t, df):
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    return betainc_regularized(df / 2.0, 0.5, x)


def betainc_regularized(a, b, x):
    """I_x(a, b) via the continued fraction (Lentz's method)."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # the continued fraction converges fast only for x below the split point
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - math.exp(
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + b * math.log1p(-x) + a * math.log(x)
    ) * _betacf(b, a, 1.0 - x) / b


def _betacf(a, b, x, max_iter=300, eps=3e-16):
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise RuntimeError(
        f"incomplete beta continued fraction did not converge "
        f"(a={a}, b={b}, x={x})"
    )
