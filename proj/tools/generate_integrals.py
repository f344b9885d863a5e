#!/usr/bin/env python3
# Copyright 2026 The csa-measure Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the molecular integral fixtures under data/ with PySCF.

The fixtures are frozen in the repository; this script documents how they were
produced (STO-3G, restricted Hartree-Fock canonical orbitals, all electrons
active). Running it requires `pip install pyscf`.

The written coefficients follow the E^p_q convention used by the library:

    H = scalar + sum_pq h_pq E_pq + sum_pqrs g_pqrs E_pq E_rs

with E_pq spin-summed. From chemist-notation MO integrals (pq|rs) this means
h_pq = t_pq - 1/2 sum_r (pr|rq) and g_pqrs = 1/2 (pq|rs).
"""

import argparse
import json
import math
import pathlib

import numpy as np
from pyscf import ao2mo, gto, scf


def _bent(center, bond, angle_deg, n):
    """Ligand positions for XH2 (n=2) or pyramidal XH3 (n=3) with equal HXH angles."""
    theta = math.radians(angle_deg)
    if n == 2:
        half = theta / 2
        return [
            (bond * math.sin(half), 0.0, bond * math.cos(half)),
            (-bond * math.sin(half), 0.0, bond * math.cos(half)),
        ]
    # Pyramidal: ligands at polar angle beta with azimuths 0, 120, 240 degrees.
    # cos(theta) = cos^2(beta) + sin^2(beta) cos(120 deg)
    sin2 = (1.0 - math.cos(theta)) / 1.5
    beta = math.asin(math.sqrt(sin2))
    out = []
    for k in range(3):
        phi = 2 * math.pi * k / 3
        out.append((bond * math.sin(beta) * math.cos(phi),
                    bond * math.sin(beta) * math.sin(phi),
                    bond * math.cos(beta)))
    return out


MOLECULES = {
    "h2": "H 0 0 0; H 0 0 1.0",
    "lih": "Li 0 0 0; H 0 0 1.0",
    "beh2": "Be 0 0 0; H 0 0 1.0; H 0 0 -1.0",
    "h2o": "O 0 0 0; " + "; ".join("H %.12f %.12f %.12f" % p for p in _bent(None, 1.0, 107.6, 2)),
    "nh3": "N 0 0 0; " + "; ".join("H %.12f %.12f %.12f" % p for p in _bent(None, 1.0, 107.0, 3)),
    "n2": "N 0 0 0; N 0 0 1.0",
}


def integrals(name):
    mol = gto.M(atom=MOLECULES[name], basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    if not mf.converged:
        raise RuntimeError(f"RHF did not converge for {name}")
    c = mf.mo_coeff
    n = c.shape[1]
    t = c.T @ mf.get_hcore() @ c
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), n)
    h = t - 0.5 * np.einsum("prrq->pq", eri)
    g = 0.5 * eri
    return mol, mf, n, h, g


def write(name, out_dir, cutoff):
    mol, mf, n, h, g = integrals(name)
    h_entries = [[p, q, float(h[p, q])] for p in range(n) for q in range(p, n)
                 if abs(h[p, q]) > cutoff]
    g_entries = []
    for p in range(n):
        for q in range(p, n):
            for r in range(n):
                for s in range(r, n):
                    if (p, q) > (r, s):
                        continue
                    if abs(g[p, q, r, s]) > cutoff:
                        g_entries.append([p, q, r, s, float(g[p, q, r, s])])
    doc = {
        "name": name,
        "basis": "sto-3g",
        "geometry_angstrom": MOLECULES[name],
        "hf_energy": float(mf.e_tot),
        "n_spatial": n,
        "n_electrons": int(mol.nelectron),
        "scalar_term": float(mol.energy_nuc()),
        "h": h_entries,
        "g": g_entries,
    }
    path = pathlib.Path(out_dir) / f"{name}_sto3g.json"
    path.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"{path}: n_spatial={n} n_electrons={mol.nelectron} E_HF={mf.e_tot:.10f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("molecules", nargs="*", default=list(MOLECULES))
    parser.add_argument("--out", default=str(pathlib.Path(__file__).parent.parent / "data"))
    parser.add_argument("--cutoff", type=float, default=1e-12)
    args = parser.parse_args()
    for name in args.molecules:
        write(name, args.out, args.cutoff)


if __name__ == "__main__":
    main()
