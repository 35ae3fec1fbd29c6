#!/usr/bin/env python3
"""Exact evaluation of the interpolation exponents with rational arithmetic.

Writes exponents_cases.inc, a C++ initializer list consumed by the unit and
acceptance tests. Rerun after changing the case list:

    python3 exponents_oracle.py > exponents_cases.inc
"""
import random
from fractions import Fraction as F


def exponents(N, r, q, theta):
    N = F(N)
    if q > r:
        p = N * (q / r - 1)
        q0 = q
    else:
        p = theta
        q0 = r * (1 + p / N)
    a = (N / p - N / q) / (1 - N / r + N / p)
    b = (1 / p - 1 / q) / (1 / p - 1 / q0)
    rhs = (1 - N / r + (N + r) / q0) * b + (1 - b)
    s = N * r / (N + r)
    return p, q0, a, b, rhs, s


def admissible(N, r, q, theta):
    if r < 1 or q <= 0:
        return False
    if r < N and q >= N * r / (N - r):
        return False
    if q <= r and (theta is None or not (0 < theta < q)):
        return False
    return True


def cases():
    out = [(2, F(2), F(4), None), (2, F(2), F(2), F(1))]
    rng = random.Random(20240611)
    rs = [F(1), F(3, 2), F(2), F(5, 2), F(3), F(4), F(6)]
    while len(out) < 50:
        N = rng.randint(1, 5)
        r = rng.choice(rs)
        crit = N * r / (N - r) if r < N else F(4) * r
        q = F(rng.randint(1, 199), 40) * crit / 5
        theta = None
        if q <= r:
            theta = q * F(rng.randint(1, 19), 20)
        if not admissible(N, r, q, theta):
            continue
        e = exponents(N, r, q, theta)
        if not (0 < e[2] < 1 and 0 < e[3] <= 1):
            continue
        if (N, r, q, theta) in out:
            continue
        out.append((N, r, q, theta))
    return out


def g17(x):
    return format(float(x), ".17g")


def main():
    print("// Generated by exponents_oracle.py (exact rational arithmetic). Do not edit.")
    print("// N, r, q, theta (NaN = none), p, q0, a, b, rhs_exp1, sobolev_s")
    for N, r, q, theta in cases():
        p, q0, a, b, rhs, s = exponents(N, r, q, theta)
        th = "kNoTheta" if theta is None else g17(theta)
        vals = ", ".join(g17(v) for v in (p, q0, a, b, rhs, s))
        print(f"{{{N}, {g17(r)}, {g17(q)}, {th}, {vals}}},")


if __name__ == "__main__":
    main()
