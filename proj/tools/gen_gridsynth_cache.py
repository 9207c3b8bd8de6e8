#!/usr/bin/env python3
# Copyright 2026 The surgec Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generate a surgec approximation cache with pygridsynth.

Each output line is `<numerator>/2^<power> <epsilon> <letters>` where the key
is the Pauli rotation angle phi of Z(phi) = exp(-i phi Z) in units of pi and
<letters> is the Clifford+T word in matrix-product order (leftmost factor is
applied last). Global phase letters (W) are dropped.

Examples:
  gen_gridsynth_cache.py --eps 1e-10 --power 9 10 11      # +pi/2^9 ...
  gen_gridsynth_cache.py --eps 1e-10 --qft 64             # all QFT-64 angles
"""

import argparse
import sys

import mpmath
import numpy as np
from pygridsynth.gridsynth import gridsynth_gates

_MATS = {
    "H": np.array([[1, 1], [1, -1]]) / np.sqrt(2),
    "S": np.diag([1, 1j]),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]),
    "X": np.array([[0, 1], [1, 0]]),
    "Z": np.diag([1, -1]),
}


def _phase_distance(a, b):
    overlap = np.vdot(b.flatten(), a.flatten())
    if abs(overlap) < 1e-300:
        return np.linalg.norm(a - b, 2)
    return np.linalg.norm(a - (overlap / abs(overlap)) * b, 2)


def synthesize(num, power, eps):
    # Z(phi) = R_z(2 phi); gridsynth takes the R_z angle.
    theta = 2 * num * mpmath.pi / mpmath.mpf(2) ** power
    word = gridsynth_gates(theta=theta, epsilon=mpmath.mpf(eps))
    letters = "".join(c for c in word if c in _MATS)
    u = np.eye(2, dtype=complex)
    for c in letters:
        u = u @ _MATS[c]
    phi = float(num * mpmath.pi / mpmath.mpf(2) ** power)
    target = np.diag([np.exp(-1j * phi), np.exp(1j * phi)])
    err = _phase_distance(u, target)
    # float64 cannot resolve below ~1e-15; only check meaningful precisions.
    if float(eps) > 1e-13 and err > float(eps) * 1.01:
        raise RuntimeError(f"{num}/2^{power}: error {err} exceeds {eps}")
    return letters


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--eps", default="1e-10")
    ap.add_argument("--dps", type=int, default=200)
    ap.add_argument("--power", type=int, nargs="*", default=[],
                    help="emit entries for +pi/2^p")
    ap.add_argument("--qft", type=int, default=0,
                    help="emit +/-pi/2^p for every p a QFT on N qubits needs")
    args = ap.parse_args()
    mpmath.mp.dps = args.dps

    keys = [(1, p) for p in args.power]
    if args.qft:
        # crz(pi/2^k) halves to rz(+-pi/2^(k+1)), i.e. Pauli angle pi/2^(k+2).
        for k in range(2, args.qft):
            keys += [(1, k + 2), (-1, k + 2)]
    seen = set()
    for num, power in keys:
        if (num, power) in seen:
            continue
        seen.add((num, power))
        letters = synthesize(num, power, args.eps)
        print(f"{num}/2^{power} {args.eps} {letters}")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
