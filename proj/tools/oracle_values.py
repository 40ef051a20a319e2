"""Reference values for the unit tests, computed at 40 digits with mpmath.

Run: python3 tools/oracle_values.py
"""
import mpmath as mp

mp.mp.dps = 40


def I(p, a, b):
    return mp.betainc(a, b, 0, p, regularized=True)


def quad_I(p, a, b):
    f = lambda x: x ** (a - 1) * (1 - x) ** (b - 1)
    return mp.quad(f, [0, p]) / mp.beta(a, b)


def equipoint(s, t):
    return mp.findroot(lambda e: I(e, s, t + 1) + I(e, s + 1, t) - 1, (s + 1) / (s + t + 2) + mp.mpf(1) / 1000)


def sigma(s, t):
    return mp.findroot(lambda p: I(p, s / 2, 1 + t / 2) - I(1 - p, t / 2, 1 + s / 2), mp.mpf(s) / (s + t))


def f(s, t, p):
    ip = I(p, mp.mpf(s) / 2, 1 + mp.mpf(t) / 2)
    iq = I(1 - p, mp.mpf(t) / 2, 1 + mp.mpf(s) / 2)
    return (2 * (1 - p) * s * iq + 2 * p * t * ip) / ((1 - p) * s + p * t) - 1


def kappa_star(s, t):
    return f(s, t, sigma(mp.mpf(s), mp.mpf(t)))


def show(label, v):
    print(f"{label:40s} {mp.nstr(mp.re(v), 20)}")


show("quad I_0.5(1,4.5)", quad_I(mp.mpf("0.5"), 1, mp.mpf("4.5")))
for x in ["0.1", "2.5", "10.3", "100.7", "1e-5", "0.75"]:
    show(f"lngamma({x})", mp.loggamma(mp.mpf(x)))
for p, a, b in [("0.01", "0.5", "50"), ("0.4", "200", "300"), ("0.9", "7.5", "0.25"), ("0.3", "2", "3")]:
    show(f"I_{p}({a},{b})", I(mp.mpf(p), mp.mpf(a), mp.mpf(b)))
for s, t in [(2, 1), (3, 1), (5, 2), (7, 6)]:
    show(f"sigma({s},{t})", sigma(mp.mpf(s), mp.mpf(t)))
for s, t in [(2, 1), (3, 2), (5, 1), (11, 10), (26, 25)]:
    show(f"kappa_star({s},{t})", kappa_star(s, t))
for s, t in [("2.5", "1"), ("0.5", "0.5"), ("3.7", "1.2"), ("40", "13")]:
    show(f"equipoint({s},{t})", equipoint(mp.mpf(s), mp.mpf(t)))
