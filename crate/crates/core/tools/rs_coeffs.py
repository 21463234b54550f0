#!/usr/bin/env python3
"""Regenerates src/specfun/rs_coeffs.rs.

The Riemann-Siegel remainder terms C0..C3 are combinations of derivatives of
    psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).
psi is entire, so each C_k is expanded as a power series in z = 2p - 1 on
[-1, 1]. The series are computed at 60 digits with mpmath and truncated once
the coefficients drop below 1e-21.
"""
from mpmath import mp, mpf, cos, pi, taylor

mp.dps = 60
ORDER = 70


def psi(p):
    return cos(2 * pi * (p * p - p - mpf(1) / 16)) / cos(2 * pi * p)


def deriv(c, m):
    out = []
    for j in range(len(c) - m):
        f = mpf(1)
        for r in range(m):
            f *= j + m - r
        out.append(c[j + m] * f)
    return out


def lin(*terms):
    n = min(len(c) for _, c in terms)
    return [sum(w * c[j] for w, c in terms) for j in range(n)]


def in_z(c):
    out = [c[j] / mpf(2) ** j for j in range(len(c))]
    out = [x if abs(x) > mpf(10) ** -40 else mpf(0) for x in out]
    while abs(out[-1]) < mpf(10) ** -21:
        out.pop()
    return out


a = taylor(psi, mpf(1) / 2, ORDER)
series = {
    "C0": a,
    "C1": lin((-1 / (96 * pi**2), deriv(a, 3))),
    "C2": lin((1 / (64 * pi**2), deriv(a, 2)), (1 / (18432 * pi**4), deriv(a, 6))),
    "C3": lin(
        (-1 / (64 * pi**2), deriv(a, 1)),
        (-1 / (3840 * pi**4), deriv(a, 5)),
        (-1 / (5308416 * pi**6), deriv(a, 9)),
    ),
}

lines = [
    "// Generated by tools/rs_coeffs.py; do not edit by hand.",
    "",
    "//! Power series of the Riemann-Siegel remainder terms in z = 2p - 1.",
    "",
]
for name, c in series.items():
    c = in_z(c)
    lines.append(f"pub(crate) const {name}: [f64; {len(c)}] = [")
    for x in c:
        lines.append(f"    {mp.nstr(x, 20, min_fixed=1, max_fixed=0)},")
    lines.append("];")
    lines.append("")
open("src/specfun/rs_coeffs.rs", "w").write("\n".join(lines))
