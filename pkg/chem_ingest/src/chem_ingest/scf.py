"""Closed-shell restricted Hartree-Fock and the MO-basis integral transform."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import build_basis
from .integrals import integral_tensors, nuclear_repulsion


class SCFError(RuntimeError):
    pass


@dataclass
class SCFResult:
    energy: float
    mo_coeffs: np.ndarray
    mo_energies: np.ndarray
    h_core: np.ndarray
    eri: np.ndarray  # AO chemist order
    n_electrons: int
    e_nuclear: float


def run_rhf(geometry, max_iter: int = 200, tol: float = 1e-11) -> SCFResult:
    functions, charges, centers = build_basis(geometry)
    n_electrons = int(charges.sum())
    if n_electrons % 2:
        raise SCFError("only closed-shell systems are supported")
    n_occ = n_electrons // 2
    s, h, eri = integral_tensors(functions, charges, centers)
    e_nuc = nuclear_repulsion(charges, centers)

    # symmetric orthogonalization
    evals, evecs = np.linalg.eigh(s)
    if evals.min() < 1e-8:
        raise SCFError("overlap matrix is near-singular")
    x = evecs @ np.diag(evals ** -0.5) @ evecs.T

    def fock(dm):
        j = np.einsum("ijkl,kl->ij", eri, dm)
        k = np.einsum("ikjl,kl->ij", eri, dm)
        return h + j - 0.5 * k

    dm = np.zeros_like(h)
    energy = 0.0
    diis_f, diis_e = [], []
    for _ in range(max_iter):
        f = fock(dm)
        # DIIS extrapolation on the orthogonalized error FDS - SDF; the
        # zero-density core guess gives a degenerate zero error and is skipped
        err = x.T @ (f @ dm @ s - s @ dm @ f) @ x
        if np.abs(err).max() > 0.0:
            diis_f.append(f)
            diis_e.append(err)
        if len(diis_f) > 8:
            diis_f.pop(0)
            diis_e.pop(0)
        if len(diis_f) > 1:
            m = len(diis_f)
            bmat = -np.ones((m + 1, m + 1))
            bmat[m, m] = 0.0
            for a in range(m):
                for b in range(m):
                    bmat[a, b] = np.einsum("ij,ij->", diis_e[a], diis_e[b])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            coefs, *_ = np.linalg.lstsq(bmat, rhs, rcond=None)
            if np.isfinite(coefs).all():
                f = sum(c * fm for c, fm in zip(coefs[:m], diis_f))
        fp = x.T @ f @ x
        mo_e, cp = np.linalg.eigh(fp)
        c = x @ cp
        occ = c[:, :n_occ]
        new_dm = 2.0 * occ @ occ.T
        new_energy = 0.5 * np.einsum("ij,ij->", new_dm, h + fock(new_dm)) + e_nuc
        if abs(new_energy - energy) < tol and np.abs(new_dm - dm).max() < 1e-8:
            return SCFResult(float(new_energy), c, mo_e, h, eri,
                             n_electrons, e_nuc)
        dm, energy = new_dm, new_energy
    raise SCFError("SCF failed to converge")


def mo_integrals(res: SCFResult):
    """Spatial-orbital core Hamiltonian and chemist ERIs in the MO basis."""
    c = res.mo_coeffs
    h_mo = c.T @ res.h_core @ c
    eri_mo = np.einsum("pi,pqrs->iqrs", c, res.eri, optimize=True)
    eri_mo = np.einsum("qj,iqrs->ijrs", c, eri_mo, optimize=True)
    eri_mo = np.einsum("rk,ijrs->ijks", c, eri_mo, optimize=True)
    eri_mo = np.einsum("sl,ijks->ijkl", c, eri_mo, optimize=True)
    return h_mo, eri_mo


def spin_orbital_entries(h_mo: np.ndarray, eri_mo: np.ndarray,
                         threshold: float = 1e-12):
    """Nonzero spin-orbital integral entries of the second-quantized H.

    Spin orbitals interleave as p = 2*i + sigma.  Entries are returned as
    (p, q, v) for v a_p^+ a_q and (p, q, r, s, v) for v a_p^+ a_q^+ a_r a_s,
    the two-body value absorbing the global 1/2:

        H = sum h_ij a_p^+ a_q + 1/2 sum <pq|rs> a_p^+ a_q^+ a_r a_s

    with <pq|rs> = (ps|qr) in chemist notation and spin conservation
    sigma_p = sigma_s, sigma_q = sigma_r.
    """
    n = h_mo.shape[0]
    one = []
    for i in range(n):
        for j in range(n):
            v = h_mo[i, j]
            if abs(v) > threshold:
                for spin in (0, 1):
                    one.append((2 * i + spin, 2 * j + spin, float(v)))
    two = []
    for i in range(n):          # spatial of p
        for j in range(n):      # spatial of q
            for k in range(n):  # spatial of r
                for l in range(n):  # spatial of s
                    v = 0.5 * eri_mo[i, l, j, k]  # (ps|qr)
                    if abs(v) <= threshold:
                        continue
                    for sp in (0, 1):
                        for sq in (0, 1):
                            p = 2 * i + sp
                            q = 2 * j + sq
                            r = 2 * k + sq
                            s = 2 * l + sp
                            # p == q (or r == s) entries are kept: they are
                            # nonzero tensor entries even though the operator
                            # expansion cancels them exactly
                            two.append((p, q, r, s, float(v)))
    return one, two
