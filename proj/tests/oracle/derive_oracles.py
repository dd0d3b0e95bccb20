# Copyright 2026 The qds Authors
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

"""Reference values for the C++ tests, computed independently with numpy/scipy.

Superoperators here use row-major (row-stacking) vectorization, the opposite
of the library, so convention bugs cannot cancel. Run:

    python3 tests/oracle/derive_oracles.py > tests/oracle_values.hpp
"""

import numpy as np
from scipy.linalg import expm, null_space


def unit(d, i, j):
    e = np.zeros((d, d), dtype=complex)
    e[i, j] = 1.0
    return e


def heis_generator(h, ls):
    """Matrix of a -> i[H,a] + sum(L^+ a L - 1/2 {L^+L, a}) on row-stacked a."""
    d = h.shape[0]
    eye = np.eye(d)
    # row-stacking: vec(A X B) = (A kron B^T) vec(X)
    m = 1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for l in ls:
        k = l.conj().T @ l
        m += np.kron(l.conj().T, l.T) - 0.5 * (np.kron(k, eye) + np.kron(eye, k.T))
    return m


def schr_generator(h, ls):
    d = h.shape[0]
    eye = np.eye(d)
    m = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for l in ls:
        k = l.conj().T @ l
        m += np.kron(l, l.conj()) - 0.5 * (np.kron(k, eye) + np.kron(eye, k.T))
    return m


def act(m, a):
    d = a.shape[0]
    return (m @ a.reshape(-1)).reshape(d, d)


def stationary_dim(h, ls):
    return null_space(schr_generator(h, ls)).shape[1]


AD = (np.zeros((2, 2)), [unit(2, 0, 1)])
M3 = (np.diag([0.0, 1.0, 0.0]).astype(complex), [unit(3, 0, 2), unit(3, 1, 2)])
DFS3 = (np.zeros((3, 3)), [unit(3, 0, 2), unit(3, 1, 2)])
TH = (np.zeros((2, 2)), [np.sqrt(2) * unit(2, 0, 1), unit(2, 1, 0)])
ID3 = (np.zeros((3, 3)), [])

out = {}
g = 0.3
V = [np.diag([1.0, np.sqrt(1 - g)]).astype(complex), np.sqrt(g) * unit(2, 0, 1)]
heis = lambda a: sum(v.conj().T @ a @ v for v in V)
schr = lambda r: sum(v @ r @ v.conj().T for v in V)
out["adk_heis_p1"] = heis(unit(2, 1, 1))
out["adk_heis_p0"] = heis(unit(2, 0, 0))
out["adk_schr_p1"] = schr(unit(2, 1, 1))
out["adk_schr_p0"] = schr(unit(2, 0, 0))
out["adk_alpha_p0_minus_p0"] = heis(unit(2, 0, 0)) - unit(2, 0, 0)
out["adk_alpha_p1_minus_p1"] = heis(unit(2, 1, 1)) - unit(2, 1, 1)

la = heis_generator(*AD)
out["ad_gen_heis_p1"] = act(la, unit(2, 1, 1))
out["ad_gen_heis_p0"] = act(la, unit(2, 0, 0))
spec = np.linalg.eigvals(schr_generator(*AD))
out["ad_schr_spectrum_real"] = np.sort(spec.real).reshape(1, -1)

out["ad_evolve_ln2_p1"] = act(expm(np.log(2) * la), unit(2, 1, 1))
lm = heis_generator(*M3)
out["m3_evolve_1_p2"] = act(expm(lm), unit(3, 2, 2))
for t in (0.5, 1.0, 2.0, 5.0):
    out["ad_alpha_%s_p1" % str(t).replace(".", "_")] = act(expm(t * la), unit(2, 1, 1))
    out["m3_alpha_%s_p2" % str(t).replace(".", "_")] = act(expm(t * lm), unit(3, 2, 2))

# Unitality residual of Kraus {diag(1, 0.9)}.
k = np.diag([1.0, 0.9])
out["nonunital_residual"] = np.array([[np.linalg.norm(k.T @ k - np.eye(2), 2)]])

# inf{|0><0|, |+><+|}: null space of 2 - p - q.
plus = np.array([1.0, 1.0]) / np.sqrt(2)
p = np.outer([1.0, 0.0], [1.0, 0.0])
q = np.outer(plus, plus)
out["inf_zero_plus_rank"] = np.array([[null_space((np.eye(2) - p) + (np.eye(2) - q)).shape[1]]])

# Mohari example: the channel exp(L_M3) fixes diag(1, 0, 1/2).
x = np.diag([1.0, 0.0, 0.5]).astype(complex)
out["m3_exp_fixed_residual"] = np.array([[np.linalg.norm(act(expm(lm), x) - x, 2)]])

# Stationary spaces.
out["stationary_dims"] = np.array([[stationary_dim(*AD), stationary_dim(*TH), stationary_dim(*DFS3),
                                     stationary_dim(*M3), stationary_dim(*ID3)]])
ns = null_space(schr_generator(*TH))[:, 0].reshape(2, 2)
out["th_state"] = ns / np.trace(ns)
ns = null_space(schr_generator(*AD))[:, 0].reshape(2, 2)
out["ad_state"] = ns / np.trace(ns)

# Minimality witness on M3: spectrum of alpha_30(diag(1,0,0)).
w = act(expm(30 * lm), np.diag([1.0, 0, 0]).astype(complex))
out["m3_witness_spectrum"] = np.sort(np.linalg.eigvalsh((w + w.conj().T) / 2)).reshape(1, -1)

# Asymptotic equivalence on M3, a = |0><2| + |2><0|, r_o = diag(1,1,0).
a = unit(3, 0, 2) + unit(3, 2, 0)
ro = np.diag([1.0, 1.0, 0.0])
out["m3_equivalence_30"] = np.array([[np.linalg.norm(act(expm(30 * lm), a - ro @ a @ ro), 2)]])
out["ad_equivalence_30"] = np.array([[np.linalg.norm(act(expm(30 * la), unit(2, 1, 1)), 2)]])

# Cesaro means of AD from |1><1|: exact integral (1/T) int e^{tS} dt.
ls = schr_generator(*AD)
for T in (10.0, 20.0, 40.0):
    n = 4
    aug = np.zeros((2 * n, 2 * n), dtype=complex)
    aug[:n, :n] = T * ls
    aug[:n, n:] = np.eye(n)
    integral = expm(aug)[:n, n:]  # int_0^1 e^{sTS} ds
    c = (integral @ unit(2, 1, 1).reshape(-1)).reshape(2, 2)
    out["ad_cesaro_exact_error_%d" % int(T)] = np.array(
        [[np.abs(np.linalg.eigvalsh(c - unit(2, 0, 0))).sum()]])


def fmt(v):
    return repr(float(v))


LICENSE = """// Copyright 2026 The qds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
"""

print(LICENSE)
print("// Generated by tests/oracle/derive_oracles.py. Do not edit.")
print("#pragma once")
print("")
print("namespace oracle {")
print("")
print("struct Values { int rows; int cols; const double* re; const double* im; };")
print("")
for name, m in out.items():
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    re = ", ".join(fmt(v) for v in m.real.reshape(-1))
    im = ", ".join(fmt(v) for v in m.imag.reshape(-1))
    print("inline constexpr double %s_re[] = {%s};" % (name, re))
    print("inline constexpr double %s_im[] = {%s};" % (name, im))
    print("inline constexpr Values %s{%d, %d, %s_re, %s_im};" % (name, m.shape[0], m.shape[1], name, name))
    print("")
print("}  // namespace oracle")
