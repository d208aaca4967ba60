"""Reference values for the unit tests, computed with mpmath at 50 digits."""
import csv
import os

import mpmath as mp

mp.mp.dps = 50
HERE = os.path.dirname(os.path.abspath(__file__))


def write(name, header, rows):
    with open(os.path.join(HERE, name), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([mp.nstr(x, 20) if isinstance(x, (mp.mpf, float)) else x for x in r])


def sphere_area(k):
    return 2 * mp.pi ** (mp.mpf(k + 1) / 2) / mp.gamma(mp.mpf(k + 1) / 2)


def spherical_F(n, alpha, r):
    s = mp.mpf(n - 1) / 2
    a = s / 2 + 1j * mp.mpf(alpha) / 2
    b = s / 2 - 1j * mp.mpf(alpha) / 2
    return mp.re(mp.hyp2f1(a, b, mp.mpf(n) / 2, -mp.sinh(r) ** 2))


rows = []
for n in (2, 3, 4, 5):
    for alpha in ("0.5", "1", "5", "20", "50"):
        for r in ("0.001", "0.1", "0.5", "1", "2", "3", "4.5", "6"):
            rows.append((n, alpha, r, spherical_F(n, mp.mpf(alpha), mp.mpf(r))))
write("spherical_F.csv", ["n", "alpha", "r", "F"], rows)

rows = []
cases = [
    ((0.5, 0), (0.5, 0), (1.5, 0), -0.3),
    ((1, 2), (1, -2), (1.5, 0), -4.0),
    ((0.25, 3), (0.25, -3), (1, 0), -0.9),
    ((0.75, 10), (0.75, -10), (2, 0), -25.0),
    ((0.5, 1), (0.5, -1), (1, 0), -400.0),
    ((1.5, 0.2), (0.3, 0), (2.5, 0), -1e4),
    ((0.5, 25), (0.5, -25), (1.5, 0), -2.0),
]
for a, b, c, z in cases:
    A, B, C = mp.mpc(*a), mp.mpc(*b), mp.mpc(*c)
    v = mp.hyp2f1(A, B, C, z)
    rows.append((a[0], a[1], b[0], b[1], c[0], c[1], z, mp.re(v), mp.im(v)))
write("hyp2f1.csv", ["are", "aim", "bre", "bim", "cre", "cim", "z", "re", "im"], rows)

rows = []
for z in [(0.5, 0), (1, 1), (3.7, -2.2), (0.1, 25), (-2.5, 0.5), (-0.3, -4), (12, 40), (0.5, -50), (1e-3, 1e-3)]:
    v = mp.loggamma(mp.mpc(*z))
    rows.append((z[0], z[1], mp.re(v), mp.im(v)))
write("loggamma.csv", ["re", "im", "lre", "lim"], rows)

rows = []
for nu in ("0", "0.5", "1", "1.5", "2.5"):
    for x in ("0.01", "1", "5", "12", "29", "31", "80", "400"):
        rows.append((nu, x, mp.besselj(mp.mpf(nu), mp.mpf(x))))
write("besselj.csv", ["nu", "x", "J"], rows)

rows = []
for n in (2, 3, 4, 5):
    s = mp.mpf(n - 1) / 2
    for alpha in ("0.5", "1", "5", "20", "100"):
        al = mp.mpf(alpha)
        c = 2 ** (2 * s - 1) * mp.gamma(1j * al) * mp.gamma(s + mp.mpf(1) / 2) / (mp.sqrt(mp.pi) * mp.gamma(s + 1j * al))
        rho = mp.mpf(2) ** (n - 2) / (sphere_area(n - 1) ** 2 * abs(c) ** 2)
        rows.append((n, alpha, mp.re(c), mp.im(c), rho))
write("c_function.csv", ["n", "alpha", "re", "im", "rho"], rows)

rows = []
for n in (2, 3, 4, 5):
    for R in ("0.1", "0.5", "1", "3", "8"):
        v = sphere_area(n - 1) * mp.quad(lambda t: mp.sinh(t) ** (n - 1), [0, mp.mpf(R)])
        rows.append((n, R, v))
write("ball_volume.csv", ["n", "R", "volume"], rows)

rows = []
for n in (2, 3, 4):
    for lam in ("1", "100"):
        for s in ("0.01", "0.3", "1", "4"):
            x = mp.sqrt(mp.mpf(lam)) * mp.mpf(s)
            nu = mp.mpf(n) / 2 - 1
            v = (2 * mp.pi) ** (mp.mpf(n) / 2) / sphere_area(n - 1) * x ** (1 - mp.mpf(n) / 2) * mp.besselj(nu, x)
            rows.append((n, lam, s, v))
write("berry.csv", ["n", "lambda", "s", "C"], rows)
print("golden files written")
