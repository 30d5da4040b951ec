# Copyright 2026 The fene-sim Authors
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

"""Eigenvalues of -div(M grad .) in L^2_M on the disk |q|^2 < b.

Independent of the C++ code: monomial Ritz basis r^m t^j (t = r^2/b) with
exact Beta-function integrals in 60-digit arithmetic. Prints the lowest
radial eigenvalues for each angular mode m.
"""

import mpmath as mp

mp.mp.dps = 60


def beta_moment(p, b):
    # int_0^1 t^p (1-t)^(b/2) dt
    return mp.beta(p + 1, mp.mpf(b) / 2 + 1)


def radial_eigs(b, m, n):
    b = mp.mpf(b)
    # phi_j = t^(m/2 + j); r d/dr = 2 t d/dt; |grad phi|^2 = (phi_r)^2 + m^2/r^2 phi^2
    # with r^2 = b t: phi_r^2 = (2 e / r)^2 t^{2e}, e the exponent.
    mass = mp.matrix(n, n)
    stiff = mp.matrix(n, n)
    for i in range(n):
        for j in range(n):
            ei = mp.mpf(m) / 2 + i
            ej = mp.mpf(m) / 2 + j
            p = ei + ej
            mass[i, j] = beta_moment(p, b)
            # (4 ei ej + m^2) / r^2 = (4 ei ej + m^2) / (b t)
            coef = 4 * ei * ej + m * m
            stiff[i, j] = 0 if coef == 0 else coef / b * beta_moment(p - 1, b)
    L = mp.cholesky(mass)
    Li = mp.inverse(L)
    A = Li * stiff * Li.T
    A = (A + A.T) / 2
    ev = mp.eigsy(A, eigvals_only=True)
    return sorted(ev)


if __name__ == "__main__":
    import sys

    b = float(sys.argv[1]) if len(sys.argv) > 1 else 4.0
    for m in range(0, 4):
        ev = radial_eigs(b, m, 14)
        print(m, [mp.nstr(x, 17) for x in ev[:4]])
