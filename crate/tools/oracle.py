#!/usr/bin/env python3
"""Independent oracle for the magnitude thresholds used by the scenario suite.

Matrix entries are obtained by sampling each column function on the unit
circle and taking an FFT (no series recurrences), basis norms come from
log-Gamma (no multiplicative recurrence), and all linear algebra goes through
numpy/LAPACK. The Rust crate never calls into this script; its output is
committed to crates/core/data/oracle.json.

Usage: python3 tools/oracle.py > crates/core/data/oracle.json
"""

import json
import math
import sys

import numpy as np
from scipy.special import gammaln

SAMPLES = 8192


def basis_norms(space, m):
    n = np.arange(m + 1)
    if space == "hardy":
        return np.ones(m + 1)
    alpha = space
    log_sq = gammaln(n + 1) + gammaln(alpha + 2) - gammaln(n + alpha + 2)
    return np.exp(0.5 * log_sq)


def full_block(weight, symbol, space, m):
    """(m+1) x (m+1) matrix of W_{weight,symbol} in the orthonormal monomial basis."""
    b = basis_norms(space, m)
    z = np.exp(2j * np.pi * np.arange(SAMPLES) / SAMPLES)
    wz = weight(z)
    pz = symbol(z)
    a = np.zeros((m + 1, m + 1), dtype=complex)
    power = np.ones_like(z)
    for j in range(m + 1):
        col = (np.fft.fft(wz * power) / SAMPLES)[: m + 1]
        a[:, j] = col * b / b[j]
        power = power * pz
    return a


def self_commutator(a, n):
    g1 = a.conj().T @ a
    g2 = a @ a.conj().T
    h = (g1 - g2)[: n + 1, : n + 1]
    return 0.5 * (h + h.conj().T)


def min_eig_selfcomm(a, n):
    return float(np.linalg.eigvalsh(self_commutator(a, n))[0])


def quasinormal_defect(a, n):
    g = a.conj().T @ a
    d = (a @ g - g @ a)[: n + 1, : n + 1]
    return float(np.linalg.norm(d, 2))


def truncate_sig(x, digits):
    """Round toward zero to `digits` significant digits."""
    if x == 0.0:
        return 0.0
    scale = 10.0 ** (digits - 1 - math.floor(math.log10(abs(x))))
    return math.trunc(x * scale) / scale


def moebius(a, b, c, d):
    return lambda z: (a * z + b) / (c * z + d)


def main():
    one = lambda z: np.ones_like(z)
    phi_sad = moebius(1, 0, -1, 2)  # z/(2-z), s = 1/2
    psi_sad = lambda z: 2.0 / (2.0 - z)
    half_shift = moebius(1, 1, 0, 2)  # (z+1)/2
    mixed = moebius(2, 1, 1, 3)  # (2z+1)/(z+3)

    spaces = [("hardy", "hardy"), ("bergman:0", 0.0), ("bergman:1", 1.0)]
    out = {
        "generator": "tools/oracle.py",
        "method": "FFT coefficient extraction on the unit circle with %d samples; "
        "basis norms from log-Gamma; numpy eigvalsh / 2-norm" % SAMPLES,
        "entries": {},
    }
    entries = out["entries"]

    def put(key, value, n, m, note):
        entries[key] = {
            "value": value,
            "floor": truncate_sig(value, 3),
            "order": n,
            "internal_order": m,
            "note": note,
        }

    m = 320
    # exponential weight example: psi = 2 e^z/(2-z), phi = z/(2-z)
    exp_w = lambda z: np.exp(z) * psi_sad(z)
    a = full_block(exp_w, phi_sad, "hardy", m)
    for n in (12, 16, 20, 24):
        put(
            "quasinormal/exp-weight/hardy/N%d" % n,
            quasinormal_defect(a, n),
            n,
            m,
            "W with weight 2e^z/(2-z), symbol z/(2-z)",
        )
    lin_w = lambda z: (2.0 + z) * psi_sad(z)
    a = full_block(lin_w, phi_sad, "hardy", m)
    put("quasinormal/linear-weight/hardy/N24", quasinormal_defect(a, 24), 24, m,
        "W with weight (2+z)*2/(2-z), symbol z/(2-z)")
    a = full_block(psi_sad, phi_sad, "hardy", m)
    put("min_eig/family/hardy/N16", min_eig_selfcomm(a, 16), 16, m,
        "T_psi C_phi, s = 1/2 (positive evidence, informational)")

    for label, sp in spaces:
        a = full_block(one, phi_sad, sp, m)
        put("quasinormal/C[z/(2-z)]/%s/N24" % label, quasinormal_defect(a, 24), 24, m,
            "unweighted composition with z/(2-z)")
        a = full_block(one, half_shift, sp, m)
        put("quasinormal/C[(z+1)/2]/%s/N24" % label, quasinormal_defect(a, 24), 24, m,
            "unweighted composition with (z+1)/2 (Krein adjoint fixes 0, so K_sigma(0) = 1)")
        put("min_eig/C[(z+1)/2]/%s/N16" % label, min_eig_selfcomm(a, 16), 16, m,
            "self-commutator of C_(z+1)/2")
        a = full_block(one, mixed, sp, m)
        put("min_eig/C[(2z+1)/(z+3)]/%s/N16" % label, min_eig_selfcomm(a, 16), 16, m,
            "self-commutator of C_(2z+1)/(z+3)")
        a = full_block(lambda z: 1.0 - z, half_shift, sp, m)
        put("min_eig/W[1-z,(z+1)/2]/%s/N16" % label, min_eig_selfcomm(a, 16), 16, m,
            "self-commutator of W with weight 1-z, symbol (z+1)/2")

    # Gelfand sequence for the parabolic map with translation number 1 (zeta = 1).
    # C_phi^k = C_{phi_k}, phi_k parabolic with translation number k.
    n = 48
    for label, sp in spaces[:2]:
        k = 24
        phik = moebius(2 - k, k, -k, 2 + k)
        a = full_block(one, phik, sp, 768)
        s = np.linalg.norm(a[: n + 1, : n + 1], 2)
        put("gelfand/parabolic-t1/%s/N48/k24" % label, float(s ** (1.0 / k)), n, 768,
            "||P_N C_phi^24 P_N||^(1/24), phi parabolic, zeta = 1, t = 1")

    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
