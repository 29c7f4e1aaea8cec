"""I(P delta) for one bubble at the disk center, zero datum.

P delta is radial, so the Euler functional reduces to a 1-D integral in r.
Prints I(lambda) and (I - 4pi/3) lambda^2, which tends to 8 A0 H~(0) = 8 pi.
The value at lambda = 20 is frozen in tests/unit/test_direct.cpp.
"""
from mpmath import mp, mpf, pi, quad

mp.dps = 30


def energy(lam):
    lam = mpf(lam)
    c = 2 * lam / (1 + lam**2)
    d = (lam**2 - 1) / (lam**2 + 1)

    def integrand(r):
        s = 1 + lam**2 * r**2
        # In-plane radial part f(r) and vertical part w(r), boundary values removed.
        f = 2 * lam * r / s - c * r
        fp = 2 * lam * (1 - lam**2 * r**2) / s**2 - c
        w = 1 - 2 / s - d
        wp = 4 * lam**2 * r / s**2
        dirichlet = (fp**2 + f**2 / r**2 + wp**2) / 2
        cubic = mpf(2) / 3 * (f * fp * w - f**2 * wp) / r
        return 2 * pi * (dirichlet + cubic) * r

    return quad(integrand, [0, 1 / lam, 4 / lam, 1])


if __name__ == "__main__":
    for lam in [10, 20, 40, 80, 160]:
        v = energy(lam)
        print(lam, mp.nstr(v, 16), mp.nstr((v - 4 * pi / 3) * lam**2, 10))
