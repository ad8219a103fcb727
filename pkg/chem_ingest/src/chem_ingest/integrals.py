"""One- and two-electron integrals over Cartesian Gaussians.

McMurchie-Davidson scheme: 1D Hermite expansion coefficients assemble
overlap and kinetic integrals; Coulomb integrals contract Hermite charge
distributions against the Boys function.  Supports the s and p shells of
the minimal basis in ``basis.py``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import hyp1f1


def boys(n: int, x: float) -> float:
    return hyp1f1(n + 0.5, n + 1.5, -x) / (2.0 * n + 1.0)


def _e_coef(i: int, j: int, t: int, qx: float, a: float, b: float) -> float:
    """Hermite expansion coefficient E_t^{ij} for a 1D Gaussian pair."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-q * qx * qx)
    if j == 0:
        return (_e_coef(i - 1, j, t - 1, qx, a, b) / (2 * p)
                - q * qx / a * _e_coef(i - 1, j, t, qx, a, b)
                + (t + 1) * _e_coef(i - 1, j, t + 1, qx, a, b))
    return (_e_coef(i, j - 1, t - 1, qx, a, b) / (2 * p)
            + q * qx / b * _e_coef(i, j - 1, t, qx, a, b)
            + (t + 1) * _e_coef(i, j - 1, t + 1, qx, a, b))


def _hermite_coulomb(t: int, u: int, v: int, n: int, p: float,
                     pc: np.ndarray, rpc2: float) -> float:
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys(n, p * rpc2)
    if t > 0:
        val = pc[0] * _hermite_coulomb(t - 1, u, v, n + 1, p, pc, rpc2)
        if t > 1:
            val += (t - 1) * _hermite_coulomb(t - 2, u, v, n + 1, p, pc, rpc2)
        return val
    if u > 0:
        val = pc[1] * _hermite_coulomb(t, u - 1, v, n + 1, p, pc, rpc2)
        if u > 1:
            val += (u - 1) * _hermite_coulomb(t, u - 2, v, n + 1, p, pc, rpc2)
        return val
    val = pc[2] * _hermite_coulomb(t, u, v - 1, n + 1, p, pc, rpc2)
    if v > 1:
        val += (v - 1) * _hermite_coulomb(t, u, v - 2, n + 1, p, pc, rpc2)
    return val


def _overlap_prim(a, lmn1, ra, b, lmn2, rb) -> float:
    p = a + b
    s = 1.0
    for d in range(3):
        s *= _e_coef(lmn1[d], lmn2[d], 0, ra[d] - rb[d], a, b)
    return s * (math.pi / p) ** 1.5


def _kinetic_prim(a, lmn1, ra, b, lmn2, rb) -> float:
    l2, m2, n2 = lmn2
    term0 = b * (2 * (l2 + m2 + n2) + 3) * _overlap_prim(a, lmn1, ra, b, lmn2, rb)
    term1 = -2.0 * b * b * (
        _overlap_prim(a, lmn1, ra, b, (l2 + 2, m2, n2), rb)
        + _overlap_prim(a, lmn1, ra, b, (l2, m2 + 2, n2), rb)
        + _overlap_prim(a, lmn1, ra, b, (l2, m2, n2 + 2), rb))
    term2 = -0.5 * (
        l2 * (l2 - 1) * _overlap_prim(a, lmn1, ra, b, (l2 - 2, m2, n2), rb)
        + m2 * (m2 - 1) * _overlap_prim(a, lmn1, ra, b, (l2, m2 - 2, n2), rb)
        + n2 * (n2 - 1) * _overlap_prim(a, lmn1, ra, b, (l2, m2, n2 - 2), rb))
    return term0 + term1 + term2


def _nuclear_prim(a, lmn1, ra, b, lmn2, rb, rc) -> float:
    p = a + b
    rp = (a * ra + b * rb) / p
    pc = rp - rc
    rpc2 = float(pc @ pc)
    val = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        e1 = _e_coef(lmn1[0], lmn2[0], t, ra[0] - rb[0], a, b)
        if e1 == 0.0:
            continue
        for u in range(lmn1[1] + lmn2[1] + 1):
            e2 = _e_coef(lmn1[1], lmn2[1], u, ra[1] - rb[1], a, b)
            if e2 == 0.0:
                continue
            for v in range(lmn1[2] + lmn2[2] + 1):
                e3 = _e_coef(lmn1[2], lmn2[2], v, ra[2] - rb[2], a, b)
                if e3 == 0.0:
                    continue
                val += e1 * e2 * e3 * _hermite_coulomb(t, u, v, 0, p, pc, rpc2)
    return 2.0 * math.pi / p * val


def _eri_prim(a, lmn1, ra, b, lmn2, rb, c, lmn3, rc, d, lmn4, rd) -> float:
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    rp = (a * ra + b * rb) / p
    rq = (c * rc + d * rd) / q
    pq = rp - rq
    rpq2 = float(pq @ pq)
    val = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        e1t = _e_coef(lmn1[0], lmn2[0], t, ra[0] - rb[0], a, b)
        if e1t == 0.0:
            continue
        for u in range(lmn1[1] + lmn2[1] + 1):
            e1u = _e_coef(lmn1[1], lmn2[1], u, ra[1] - rb[1], a, b)
            if e1u == 0.0:
                continue
            for v in range(lmn1[2] + lmn2[2] + 1):
                e1v = _e_coef(lmn1[2], lmn2[2], v, ra[2] - rb[2], a, b)
                if e1v == 0.0:
                    continue
                for tau in range(lmn3[0] + lmn4[0] + 1):
                    e2t = _e_coef(lmn3[0], lmn4[0], tau, rc[0] - rd[0], c, d)
                    if e2t == 0.0:
                        continue
                    for nu in range(lmn3[1] + lmn4[1] + 1):
                        e2u = _e_coef(lmn3[1], lmn4[1], nu, rc[1] - rd[1], c, d)
                        if e2u == 0.0:
                            continue
                        for phi in range(lmn3[2] + lmn4[2] + 1):
                            e2v = _e_coef(lmn3[2], lmn4[2], phi,
                                          rc[2] - rd[2], c, d)
                            if e2v == 0.0:
                                continue
                            sign = (-1.0) ** (tau + nu + phi)
                            val += (e1t * e1u * e1v * e2t * e2u * e2v * sign
                                    * _hermite_coulomb(t + tau, u + nu, v + phi,
                                                       0, alpha, pq, rpq2))
    return val * 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))


def _contract2(prim, bf1, bf2, *extra) -> float:
    val = 0.0
    for a, ca in zip(bf1.exps, bf1.coefs):
        for b, cb in zip(bf2.exps, bf2.coefs):
            val += ca * cb * prim(a, bf1.lmn, bf1.center, b, bf2.lmn,
                                  bf2.center, *extra)
    return val


def overlap_bf(bf1, bf2) -> float:
    return _contract2(_overlap_prim, bf1, bf2)


def kinetic_bf(bf1, bf2) -> float:
    return _contract2(_kinetic_prim, bf1, bf2)


def nuclear_bf(bf1, bf2, rc) -> float:
    return _contract2(_nuclear_prim, bf1, bf2, rc)


def eri_bf(bf1, bf2, bf3, bf4) -> float:
    val = 0.0
    for a, ca in zip(bf1.exps, bf1.coefs):
        for b, cb in zip(bf2.exps, bf2.coefs):
            for c, cc in zip(bf3.exps, bf3.coefs):
                for d, cd in zip(bf4.exps, bf4.coefs):
                    val += ca * cb * cc * cd * _eri_prim(
                        a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center,
                        c, bf3.lmn, bf3.center, d, bf4.lmn, bf4.center)
    return val


def integral_tensors(functions, charges, centers):
    """Overlap, core Hamiltonian and chemist-ordered ERI tensor (mu nu|la si)."""
    n = len(functions)
    s = np.zeros((n, n))
    t = np.zeros((n, n))
    v = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s[i, j] = s[j, i] = overlap_bf(functions[i], functions[j])
            t[i, j] = t[j, i] = kinetic_bf(functions[i], functions[j])
            vv = 0.0
            for z, rc in zip(charges, centers):
                vv -= z * nuclear_bf(functions[i], functions[j], rc)
            v[i, j] = v[j, i] = vv
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            for k in range(n):
                for l in range(k + 1):
                    if (i * (i + 1) // 2 + j) < (k * (k + 1) // 2 + l):
                        continue
                    val = eri_bf(functions[i], functions[j],
                                 functions[k], functions[l])
                    for (a, b) in ((i, j), (j, i)):
                        for (c, d) in ((k, l), (l, k)):
                            eri[a, b, c, d] = val
                            eri[c, d, a, b] = val
    return s, t + v, eri


def nuclear_repulsion(charges, centers) -> float:
    e = 0.0
    for i in range(len(charges)):
        for j in range(i):
            e += charges[i] * charges[j] / np.linalg.norm(centers[i] - centers[j])
    return float(e)
