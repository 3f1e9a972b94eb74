"""Brute-force oracle for the frozen expected values used in the C++ tests.

Everything here is computed with dense numpy/scipy matrices (full 2^N spin
Hamiltonians, scipy.linalg.expm) and shares no code with the library.
Run:  python3 tests/oracles/derive_values.py
"""
import itertools
import math

import numpy as np
from scipy.linalg import expm, eigh

np.set_printoptions(precision=17)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)


def site_op(op, site, n):
    # site 0 is the least-significant bit of the basis index
    mats = [I2] * n
    mats[site] = op
    out = np.array([[1.0 + 0j]])
    for m in reversed(mats):
        out = np.kron(out, m)
    return out


def xx_dense(J, B):
    n = len(B)
    H = np.zeros((2**n, 2**n), dtype=complex)
    for k, j in enumerate(J):
        H += 0.5 * j * (site_op(X, k, n) @ site_op(X, k + 1, n) + site_op(Y, k, n) @ site_op(Y, k + 1, n))
    for k, b in enumerate(B):
        # field normalised so the one-excitation block has diagonal B_n (vacuum energy 0)
        H += 0.5 * b * (np.eye(2**n) - site_op(Z, k, n))
    return H


def heis_dense(J, D, b):
    n = len(b)
    H = np.zeros((2**n, 2**n), dtype=complex)
    for k, j in enumerate(J):
        H += 0.5 * j * (site_op(X, k, n) @ site_op(X, k + 1, n) + site_op(Y, k, n) @ site_op(Y, k + 1, n))
        H += 0.25 * j * D[k] * site_op(Z, k, n) @ site_op(Z, k + 1, n)
    for k, bb in enumerate(b):
        H += -0.5 * bb * site_op(Z, k, n)
    return H


def one_excitation_block(H, n):
    idx = [1 << k for k in range(n)]
    vac = H[0, 0].real
    return H[np.ix_(idx, idx)].real - vac * np.eye(n)


def h1(J, B):
    n = len(B)
    M = np.diag(np.array(B, dtype=float))
    for k, j in enumerate(J):
        M[k, k + 1] = M[k + 1, k] = j
    return M


print("uniform n=4 eigenvalues", np.linalg.eigvalsh(h1([1, 1, 1], [0] * 4)))

# Heisenberg mapping cross-check: dense 2^3 block vs effective fields
blk = one_excitation_block(heis_dense([1, 1], [1, 1], [0, 0, 0]), 3)
print("heisenberg n=3 block diag", np.diag(blk), "eig", np.linalg.eigvalsh(blk))
print("h1(J=[1,1],B=[-.5,-1,-.5]) eig", np.linalg.eigvalsh(h1([1, 1], [-0.5, -1, -0.5])))

# uniform n=3: minimal transfer time by fine scan of |gamma_3|
H = h1([1, 1], [0, 0, 0])
ts = np.linspace(0.01, 5, 200001)
w, V = np.linalg.eigh(H)
g = (V[2, :] * V[0, :])[None, :] * np.exp(-1j * np.outer(ts, w))
amp = np.abs(g.sum(axis=1))
k = np.argmax(amp > 1 - 1e-9)
print("uniform n=3 first PST time", ts[k], "pi/sqrt2", math.pi / math.sqrt(2))

# uniform n=4: max |gamma_4| on [0,50], step 1e-3
H = h1([1, 1, 1], [0] * 4)
w, V = np.linalg.eigh(H)
ts = np.arange(0, 50, 1e-3)
g = np.abs((np.exp(-1j * np.outer(ts, w)) * (V[3, :] * V[0, :])[None, :]).sum(axis=1))
print("uniform n=4 max|gamma4| on [0,50]", g.max())

# analytic n=4 end weights
Ja = [0.5 * math.sqrt(k * (4 - k)) for k in range(1, 4)]
w, V = np.linalg.eigh(h1(Ja, [0] * 4))
print("analytic n=4 eig", w, "weights", V[0, :] ** 2)

# storage chain n=3 eigenvalues and weights
def storage(n):
    return [math.sqrt(k * k * (n - k) * (n + k) / ((2 * k - 1) * (2 * k + 1))) for k in range(1, n)]
for n in (2, 3, 4, 5):
    w, V = np.linalg.eigh(h1(storage(n), [0] * n))
    print("storage n=%d J" % n, storage(n), "eig", w, "weights", V[0, :] ** 2)

# Jacobi matrix from spectrum {-2,0,2} with weights {1/4,1/2,1/4}: Lanczos via scipy on diag
lam = np.array([-2.0, 0.0, 2.0]); wts = np.array([0.25, 0.5, 0.25])
q = np.sqrt(wts); Q = [q]; a = []; b = []
A = np.diag(lam); qprev = np.zeros(3); beta = 0
for k in range(3):
    v = A @ Q[-1] - beta * qprev
    al = Q[-1] @ v; a.append(al); v -= al * Q[-1]
    if k < 2:
        beta = np.linalg.norm(v); b.append(beta); qprev = Q[-1]; Q.append(v / beta)
print("spectrum {-2,0,2} -> B", a, "J", b, "sqrt2", math.sqrt(2))

# n=2 J=0.5 timing window at eps=0.5: |gamma_2|^2 = sin^2(t/2) >= 0.5
ts = np.linspace(0, 2 * math.pi, 2000001)
ok = np.sin(ts / 2) ** 2 >= 0.5
print("n=2 window", ts[ok].max() - ts[ok].min(), "pi", math.pi)

# bath n=2 J=0.5 G=1: dense 4x4 vs closed form
Hb = np.zeros((4, 4)); Hb[:2, :2] = h1([0.5], [0, 0]); Hb[0, 2] = Hb[2, 0] = 1; Hb[1, 3] = Hb[3, 1] = 1
lam = np.array([-0.5, 0.5]); G = 1.0
closed = sorted([0.5 * (l + s * math.sqrt(4 * G * G + l * l)) for l in lam for s in (1, -1)])
print("bath n=2 dense", np.linalg.eigvalsh(Hb), "closed", closed)

# dense checks for the n=2 chain
Hd = xx_dense([0.5], [0, 0])
psi = np.zeros(4, complex); psi[1] = 1  # excitation on site 0
out = expm(-1j * math.pi * Hd) @ psi
print("|10> at t=pi ->", np.round(out, 15))

# Ising from analytic n=4: N=2, B=[K1,K3], J=[K2/2]
K = [0.5 * math.sqrt(k * (4 - k)) for k in range(1, 4)]
print("ising N=2 B", [K[0], K[2]], "J", [K[1] / 2])

# initfree transfer, n=6 analytic, junk=1010 on sites 3..6, alpha=beta=1/sqrt2
n = 6
Ja = [0.5 * math.sqrt(k * (n - k)) for k in range(1, n)]
Hd = xx_dense(Ja, [0] * n)
U = expm(-1j * math.pi * Hd)
def basis(bits):
    return sum(1 << i for i, v in enumerate(bits) if v)
junk = [1, 0, 1, 0]
al = be = 1 / math.sqrt(2)
psi = np.zeros(2**n, complex)
psi[basis([0, 1] + junk)] += al   # alpha on |01> of spins (1,2)
psi[basis([1, 0] + junk)] += be
out = U @ psi
# measure spin N-1 (index 4) in X, conditional Z on spin N (index 5), read spin N
fids = []
for sgn in (1, -1):
    rho = np.zeros((2, 2), complex)
    for rest in itertools.product([0, 1], repeat=n - 2):
        vec = np.zeros(2, complex)
        for sN in (0, 1):
            for sm in (0, 1):
                amp = out[basis(list(rest) + [sm, sN])]
                vec[sN] += amp * (1 if sm == 0 else sgn) / math.sqrt(2)
        if sgn < 0:
            vec[1] *= -1
        rho += np.outer(vec, vec.conj())
    p = np.trace(rho).real
    target = np.array([al, be])
    fids.append((p, (target.conj() @ rho @ target).real / p))
print("initfree n=6 junk=1010 (prob, fidelity) per X outcome", fids)

# hypercube d=3 antipodal
d = 3
Hc = np.zeros((8, 8))
for v in range(8):
    for k in range(d):
        Hc[v, v ^ (1 << k)] = 0.5
print("hypercube d=3 |<111|U(pi)|000>|", abs(expm(-1j * math.pi * Hc)[7, 0]))

# theta entangler on analytic 5-chain, theta=pi/8
n = 5
Ja = [0.5 * math.sqrt(k * (n - k)) for k in range(1, n)]
th = math.pi / 8
Jt = list(Ja); Jt[1] = math.sqrt(2) * math.cos(th) * Ja[1]; Jt[2] = math.sqrt(2) * math.sin(th) * Ja[2]
U = expm(-1j * math.pi * h1(Jt, [0] * n)); U0 = expm(-1j * math.pi * h1(Ja, [0] * n))
ph = U0[4, 0]
print("theta pi/8 amplitudes / arrival phase", U[0, 0] / ph, U[4, 0] / ph)

# star M=3 with n=2 branch: hub + 3 leaves, coupling 0.5/sqrt3
Hs = np.zeros((4, 4))
for a in range(3):
    Hs[0, 1 + a] = Hs[1 + a, 0] = 0.5 / math.sqrt(3)
print("star M=3 leaf amplitudes at pi", expm(-1j * math.pi * Hs)[1:, 0])

# weak bath coupling d(G)=|gamma'_N(t0)-gamma_N(t0)| for analytic n=4
def bath_gamma(J, G, t):
    n = len(J) + 1
    Hb = np.zeros((2 * n, 2 * n)); Hb[:n, :n] = h1(J, [0] * n)
    for k in range(n):
        Hb[k, n + k] = Hb[n + k, k] = G
    return expm(-1j * t * Hb)[n - 1, 0]
Ja = [0.5 * math.sqrt(k * (4 - k)) for k in range(1, 4)]
g0 = bath_gamma(Ja, 0.0, math.pi)
for G in (0.01, 0.005, 0.0025):
    print("bath weak G=%g d=%.17g d/G^2=%.17g" % (G, abs(bath_gamma(Ja, G, math.pi) - g0), abs(bath_gamma(Ja, G, math.pi) - g0) / G**2))

# uniform chains: best end-to-end fidelity on a grid over [0, 100]
for n in range(4, 11):
    H = h1([1.0] * (n - 1), [0] * n)
    w, v = np.linalg.eigh(H)
    t = np.linspace(0, 100, 200001)
    f = np.abs((v[0] * v[-1]) @ np.exp(-1j * np.outer(w, t))) ** 2
    k = f.argmax()
    print("uniform n=%d max %.6f at t=%.4f expm check %.6f" % (n, f[k], t[k], abs(expm(-1j * t[k] * H)[n - 1, 0]) ** 2))
