"""Independent reference values frozen into the C++ tests.

Uses mpmath (arbitrary precision) and scipy; shares no code with the library.
Run: python3 tests/oracles/generate.py
"""
import mpmath as mp
import numpy as np
from scipy.special import roots_laguerre, roots_legendre

mp.mp.dps = 40


def show(label, v):
    print(f"{label} = {mp.nstr(v, 20)}")


print("# log n!")
for n in [0, 1, 10, 100, 170, 1000, 4000]:
    show(f"log_factorial({n})", mp.loggamma(n + 1))

print("# regularized lower incomplete gamma P(a, x)")
for a in [1, 1.5, 2.5, 10, 30.5, 50]:
    for x in [0.1, 1, 5, 30, 60]:
        show(f"P({a}, {x})", mp.gammainc(a, 0, x, regularized=True))

print("# Gauss-Laguerre")
for k in [10, 80]:
    t, w = roots_laguerre(k)
    print(k, repr(t[0]), repr(w[0]), repr(t[-1]))
t, w = roots_laguerre(10)
print("K=10 nodes", [repr(x) for x in t])
print("K=10 weights", [repr(x) for x in w])

print("# Gauss-Legendre n=5")
x, w = roots_legendre(5)
print([repr(v) for v in x], [repr(v) for v in w])


def e(n, z):
    return mp.sqrt(mp.pi**n / mp.factorial(n)) * z**n


print("# basis values")
for n, z in [(0, mp.mpc(0.3, -0.2)), (3, mp.mpc(0.5, 0.25)), (20, mp.mpc(1.1, 0.7)), (60, mp.mpc(-2, 1))]:
    v = e(n, z)
    print(f"e_{n}({z}) = {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")


def sector_entry(m, n, r1, r2, t1, t2):
    rad = mp.quad(lambda r: r ** (n + m) * mp.exp(-mp.pi * r * r) * r, [r1, r2])
    ang = mp.quad(lambda th: mp.expj((n - m) * th), [t1, t2])
    return mp.sqrt(mp.pi ** (n + m) / (mp.factorial(n) * mp.factorial(m))) * rad * ang


print("# sector entries r in [0.3, 1.1], theta in [0.2, 1.7]")
for m, n in [(0, 0), (1, 3), (2, 7), (5, 5), (10, 25)]:
    v = sector_entry(m, n, 0.3, 1.1, 0.2, 1.7)
    print(f"M[{m}][{n}] = {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")

mp.mp.dps = 20
c = mp.mpc(1, 0.5)
R = 1 / mp.sqrt(mp.pi)


def disc_entry(m, n):
    def f(rho, th):
        z = c + rho * mp.expj(th)
        return e(n, z) * mp.conj(e(m, z)) * mp.exp(-mp.pi * abs(z) ** 2) * rho

    re = mp.quad(lambda rho, th: mp.re(f(rho, th)), [0, R], [0, 2 * mp.pi])
    im = mp.quad(lambda rho, th: mp.im(f(rho, th)), [0, R], [0, 2 * mp.pi])
    return re, im


print("# off-centre disc D(1+0.5i, 1/sqrt(pi)) entries")
for m, n in [(0, 0), (0, 1), (2, 5), (7, 7)]:
    re, im = disc_entry(m, n)
    print(f"D[{m}][{n}] = {mp.nstr(re, 17)} {mp.nstr(im, 17)}")

print("# e_1 mass on D(0,1)")
show("1-(1+pi)e^-pi", 1 - (1 + mp.pi) * mp.exp(-mp.pi))

# Main-theorem example 0.5 chi_D(0,1) - 0.5 chi_D(3,1) at N = 30 with numpy.
N = 30
rho, wr = roots_legendre(120)
rho = 0.5 * (rho + 1)
wr = 0.5 * wr
M = 512
th = 2 * np.pi * np.arange(M) / M
from math import lgamma, pi as PI


def basis(z):
    out = np.empty((N,) + z.shape, dtype=complex)
    out[0] = 1
    for k in range(1, N):
        out[k] = out[k - 1] * z * np.sqrt(PI / k)
    return out


def disc_matrix(center, radius):
    R_, T_ = np.meshgrid(radius * rho, th, indexing="ij")
    W = (radius * wr)[:, None] * R_ * (2 * np.pi / M)
    z = center + R_ * np.exp(1j * T_)
    W = W * np.exp(-PI * np.abs(z) ** 2)
    b = basis(z).reshape(N, -1)
    w = W.reshape(-1)
    return (b * w) @ b.conj().T  # [n][m] = sum w e_n conj(e_m)


A = 0.5 * disc_matrix(0, 1) - 0.5 * disc_matrix(3, 1)
A = A.T  # row m, column n
ev = np.linalg.eigvalsh(0.5 * (A + A.conj().T))
print("# norm of 0.5 chi_D(0,1) - 0.5 chi_D(3,1), N=30:", repr(max(abs(ev))))
