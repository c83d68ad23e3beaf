"""Regenerates reference.json with mpmath (pip install mpmath).

Every value here is computed from the defining formulas at 40 digits,
independently of the Rust code.
"""
import json
from mpmath import mp, mpf, mpc, hyp2f1, gamma, psi, sqrt, diff, quad, pi, rf, factorial, findroot, sin, cos, atan

mp.dps = 40


def bsqrt(u):
    u = mpc(u)
    if u.imag == 0 and u.real < 0:
        return mpc(0, -sqrt(-u.real))
    return sqrt(u)


def second(k, a, b, x, d=mpf("1e-15")):
    """Log solution at x = 0 as the symmetric delta-limit."""
    if k == 0:
        return 2 * diff(lambda t: x ** (t / 2) * hyp2f1(a + t / 2, b + t / 2, 1 + t, x), 0)
    big_a = gamma(a) * gamma(b) / (gamma(a - k) * gamma(b - k))

    def br(t):
        mu = (k + t) / mpf(2)
        t1 = x ** (-mu) * hyp2f1(a - k - t / 2, b - k - t / 2, 1 - k - t, x)
        t2 = big_a / gamma(1 + k + t) * gamma(1 - k - t) * x ** mu * hyp2f1(a + t / 2, b + t / 2, 1 + k + t, x)
        return t1 - t2

    return (br(d) + br(-d)) / 2


class Problem:
    def __init__(self, theory, outer, coupling, m):
        self.theory, self.outer, self.coupling, self.m = theory, mpf(outer), mpf(coupling), m
        self.k = abs(m)
        self.c = 2 if theory == "oscillator" else 1

    def exps(self, big_w):
        big_r = self.outer
        w = big_r ** 2 * big_w
        if self.theory == "oscillator":
            q = self.coupling
            nu = bsqrt(q - w) / 4
            sig = sqrt(q) / 4 if q >= 0 else mpc(0, sqrt(-q) / 4)
        else:
            g = self.coupling
            nu = bsqrt(1 + 4 * big_r * g - w) / 4
            sig = bsqrt(1 - w) / 4
        mu = mpf(self.k) / 2
        return mu, nu, sig, mpf(1) / 2 + mu + nu + sig, mpf(1) / 2 + mu + nu - sig

    def x(self, s):
        big_r = self.outer
        if self.theory == "oscillator":
            return 4 * big_r ** 2 * s ** 2 / (big_r ** 2 + s ** 2) ** 2
        return 4 * big_r * s / (big_r + s) ** 2

    def pref(self, s):
        big_r = self.outer
        return big_r ** 2 * sqrt(s) / (big_r ** 2 - s ** 2)

    def basis(self, big_w, s):
        mu, nu, sig, a1, b1 = self.exps(big_w)
        x = self.x(s)
        env = self.pref(s) * x ** mu * (1 - x) ** (mpf(1) / 4 + nu)
        o1 = env * hyp2f1(a1, b1, 1 + self.k, x)
        o3 = env * hyp2f1(a1, b1, 1 + 2 * nu, 1 - x)
        o4 = env * x ** (-mpf(self.k) / 2) * second(self.k, a1, b1, x)
        return o1, o3, o4

    def f0(self, big_w):
        _, _, _, a1, b1 = self.exps(big_w)
        return 2 * psi(0, 1) - psi(0, a1) - psi(0, b1)

    def f1(self, big_w):
        _, nu, sig, a1, b1 = self.exps(big_w)
        return (nu ** 2 - sig ** 2) * (psi(0, a1) + psi(0, b1)) - nu

    def omega(self, big_w, angle=None):
        c = self.c
        if self.k == 0 and angle is not None:
            f = self.f0(big_w)
            return (f * sin(angle) - cos(angle)) / (c * pi * (f * cos(angle) + sin(angle)))
        if self.k == 1 and angle is not None:
            f = self.f1(big_w)
            return -(f * sin(angle) + cos(angle)) / (pi * (f * cos(angle) - sin(angle)))
        if self.k == 0:
            return self.f0(big_w) / (c * pi)
        k = self.k
        _, _, _, a1, b1 = self.exps(big_w)
        pa = lambda t: rf(t - k, k)
        big_a = pa(a1) * pa(b1)
        dpoly = diff(pa, a1) * pa(b1) + pa(a1) * diff(pa, b1)
        return (-1) ** (k + 1) * (2 * big_a * (psi(0, a1) + psi(0, b1)) - dpoly) / (2 * c * pi * factorial(k) ** 2)

    def connection_ratio(self, big_w):
        """b/c in O3 = b O1 + c O4, from a linear solve."""
        s1, s2 = self.outer * mpf("0.3"), self.outer * mpf("0.55")
        a = self.basis(big_w, s1)
        b = self.basis(big_w, s2)
        det = a[0] * b[2] - a[2] * b[0]
        bb = (a[1] * b[2] - a[2] * b[1]) / det
        cc = (a[0] * b[1] - a[1] * b[0]) / det
        return bb / cc


def cnum(z):
    z = mpc(z)
    return [float(z.real), float(z.imag)]


out = {}

out["hyp2f1"] = []
for a, b, c, x in [
    (mpc(1.1, 0.3), mpc(0.2, -0.5), mpc(1.9, 0.1), mpf("0.3")),
    (mpc(1.1, 0.3), mpc(0.2, -0.5), mpc(1.9, 0.1), mpf("0.8")),
    (mpc(1.1, 0.3), mpc(0.2, -0.5), mpc(1.9, 0.1), mpf("0.97")),
    (mpc(2.5, 0), mpc(1.5, 0), mpc(2, 0), mpf("0.9")),
    (mpc(0.75, 0.5), mpc(0.75, -0.5), mpc(1, 0), mpf("0.95")),
    (mpc(3.25, 1.0), mpc(0.25, 1.0), mpc(2.5, 0), mpf("0.7")),
    (mpc(-3, 0), mpc(4.5, 0.2), mpc(1.5, 0), mpf("0.99")),
]:
    out["hyp2f1"].append({"a": cnum(a), "b": cnum(b), "c": cnum(c), "x": float(x), "value": cnum(hyp2f1(a, b, c, x))})

out["second"] = []
for k in range(4):
    a, b = mpc(1.3 + k / 2.0, 0.1), mpc(0.45 + k / 2.0, -0.1)
    for x in [mpf("0.05"), mpf("0.3"), mpf("0.8")]:
        # the solution of the hypergeometric equation is x^(-k/2) times the bracket
        v = x ** (-mpf(k) / 2) * second(k, a, b, x)
        out["second"].append({"k": k, "a": cnum(a), "b": cnum(b), "x": float(x), "value": cnum(v)})

out["gamma"] = []
for z in [mpc(1, 1), mpc(-2.5, 0), mpc(0.3, -7.0), mpc(12.5, 3.0), mpc(-4.7, 0.2)]:
    out["gamma"].append({"z": cnum(z), "gamma": cnum(gamma(z)), "digamma": cnum(psi(0, z)),
                         "trigamma": cnum(psi(1, z))})

problems = [
    ("oscillator", 1, 100, 0, [mpc(50.3, 0), mpc(50.3, 2), mpc(130, 0.5)], [0.2, 0.37, 0.8]),
    ("oscillator", 1, 100, 1, [mpc(50.3, 0), mpc(-20, 1)], [0.2, 0.37, 0.8]),
    ("oscillator", 1.5, 30, 2, [mpc(10, 0), mpc(10, 3)], [0.3, 0.73]),
    ("coulomb", 1, -10, 0, [mpc(-60, 0), mpc(-30, 1)], [0.1, 0.5, 0.9]),
    ("coulomb", 1, -10, 1, [mpc(-60, 0), mpc(-30, 1)], [0.1, 0.5, 0.9]),
    ("coulomb", 2, -3, 3, [mpc(-2, 0.5)], [0.2, 0.75]),
]
out["basis"] = []
out["omega"] = []
for theory, outer, coupling, m, ws, radii in problems:
    p = Problem(theory, outer, coupling, m)
    for w in ws:
        for s in radii:
            o1, o3, o4 = p.basis(w, mpf(s) * p.outer)
            out["basis"].append({"theory": theory, "outer": outer, "coupling": coupling, "m": m, "W": cnum(w),
                                 "s": float(mpf(s) * p.outer), "o1": cnum(o1), "o3": cnum(o3), "o4": cnum(o4)})
        om = p.omega(w)
        out["omega"].append({"theory": theory, "outer": outer, "coupling": coupling, "m": m, "W": cnum(w),
                             "angle": None, "value": cnum(om)})
    if m in (0, 1):
        for ang in [mpf("0.4"), mpf("-1.1")]:
            for w in ws:
                if m == 1 and theory == "oscillator":
                    continue
                out["omega"].append({"theory": theory, "outer": outer, "coupling": coupling, "m": m, "W": cnum(w),
                                     "angle": float(ang), "value": cnum(p.omega(w, ang))})

out["density"] = []
for theory, outer, coupling, m, e in [("oscillator", 1, 100, 1, 200), ("oscillator", 1, 100, 0, 130.5),
                                       ("coulomb", 1, -10, 2, 10), ("coulomb", 1, -10, 0, -20)]:
    p = Problem(theory, outer, coupling, m)
    om = p.omega(mpc(e, 0))
    # independent of the second solution: Im of the Green function on the diagonal
    s = p.outer * mpf("0.4")
    o1 = lambda t: p.basis(mpc(e, 0), t)[0]
    o3 = lambda t: p.basis(mpc(e, 0), t)[1]
    p0 = (p.outer ** 2 - s ** 2) ** 2 / p.outer ** 4
    wr = p0 * (o1(s) * diff(o3, s) - o3(s) * diff(o1, s))
    green = -(o3(s) / wr).imag / (pi * o1(s).real)
    assert abs(om.imag - green) < mpf("1e-20") * abs(green), (theory, m, e)
    out["density"].append({"theory": theory, "outer": outer, "coupling": coupling, "m": m, "E": e,
                           "value": float(om.imag)})


def angle_levels(p, angle, guesses):
    levels = []
    for nu0 in guesses:
        def f(nu):
            big_w = energy(p, nu)
            return (p.f0(big_w) * cos(angle) + sin(angle)) if p.k == 0 else (p.f1(big_w) * cos(angle) - sin(angle))
        nu = findroot(lambda t: f(t).real, mpf(nu0))
        big_w = energy(p, nu)
        sa, ca = sin(angle), cos(angle)

        def u(s):
            o1, _, o4 = p.basis(big_w, s)
            return (sa * o1 + ca * o4).real if p.k == 0 else (sa * o1 + ca * o4).real

        # near the outer end the growing parts cancel, so use the decaying solution there
        half = p.outer / 2
        lam = u(half) / p.basis(big_w, half)[1].real
        tail = lambda s: (lam * p.basis(big_w, s)[1].real) ** 2
        norm = quad(lambda s: u(s) ** 2, [0, p.outer / 4, half]) + quad(tail, [half, p.outer])
        levels.append({"E": float(big_w.real), "Q": float(1 / sqrt(norm))})
    return levels


def energy(p, nu):
    if p.theory == "oscillator":
        return mpc((p.coupling - 16 * nu ** 2) / p.outer ** 2, 0)
    return mpc((1 + 4 * p.outer * p.coupling - 16 * nu ** 2) / p.outer ** 2, 0)


out["angle_levels"] = []
for theory, outer, coupling, m, ang, guesses in [
    ("oscillator", 1, 100, 0, mpf(0), [2.27, 1.32, 0.256]),
    ("oscillator", 1, 100, 0, mpf(-1), [2.2, 1.3, 0.19]),
    ("coulomb", 1, -10, 0, mpf("0.7"), [7.9, 2.05]),
    ("coulomb", 1, -10, 1, mpf(0), [2.57]),
]:
    p = Problem(theory, outer, coupling, m)
    out["angle_levels"].append({"theory": theory, "outer": outer, "coupling": coupling, "m": m,
                                "angle": float(ang), "levels": angle_levels(p, ang, guesses)})

with open(__file__.replace("gen_reference.py", "reference.json"), "w") as fh:
    json.dump(out, fh, indent=1)
