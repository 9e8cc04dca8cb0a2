"""Dev validation of special_functions against mpmath (not part of the suite)."""
import numpy as np
import mpmath as mp

from weilbench.special_functions import (
    log_gamma, digamma, hurwitz_zeta, riemann_siegel_theta,
    riemann_siegel_Z, _rs_asymptotic_Z, rs_remainder_bound, AccuracyBudget,
)

mp.mp.dps = 30
rng = np.random.default_rng(42)

# --- log_gamma / digamma over a grid avoiding poles
pts = (rng.uniform(-5, 5, 300) + 1j * rng.uniform(-20, 20, 300))
pts = pts[np.abs(pts.imag) > 1e-3]  # keep off the real axis for pole safety
err_lg = 0.0
err_ps = 0.0
for z in pts:
    ref = complex(mp.loggamma(complex(z)))
    got = log_gamma(z)
    err_lg = max(err_lg, abs(got - ref))
    refp = complex(mp.digamma(complex(z)))
    gotp = digamma(z)
    err_ps = max(err_ps, abs(gotp - refp))
print("log_gamma max err:", err_lg)
print("digamma  max err:", err_ps)

# positive real axis + just above the negative axis
for z in [0.5, 1.0, 3.7, 0.3 + 2.0j, -2.5 + 0.1j, -7.3 - 0.2j, 0.25 + 500j]:
    ref = complex(mp.loggamma(complex(z)))
    got = log_gamma(z)
    assert abs(got - ref) < 5e-13 * max(1, abs(ref)), (z, got, ref)
print("spot log_gamma ok (incl. principal branch off negative axis)")

# --- hurwitz zeta
cases = [(2.0, 1.0), (0.5 + 3j, 0.5), (0.5 + 14.134725j, 1.0), (1.5, 0.25),
         (0.5 + 98.7j, 1.0/3.0), (-1.5 + 40j, 0.7), (2.0 - 60j, 1.0)]
for s, a in cases:
    ref = complex(mp.zeta(s, a))
    got = hurwitz_zeta(s, a)
    print(f"hz s={s} a={a}: err={abs(got-ref):.2e}")
    assert abs(got - ref) < 1e-11 * max(1.0, abs(ref)), (s, a, got, ref)

# batch path
svec = 0.5 + 1j * np.linspace(1, 90, 57)
got = hurwitz_zeta(svec, 1.0)
ref = np.array([complex(mp.zeta(complex(s))) for s in svec])
print("batch zeta max err:", np.max(np.abs(got - ref)))

# --- theta
t = 50.0
th = riemann_siegel_theta(t)
approx = t/2*np.log(t/(2*np.pi)) - t/2 - np.pi/8 + 1.0/(48*t)
print("theta(50):", th, "asymptotic:", approx, "diff:", abs(th - approx))

# --- Z via EM vs mpmath
for tv in [14.0, 30.0, 100.0, 500.0, 1000.0, 2515.0]:
    ref = float(mp.siegelz(tv))
    got = riemann_siegel_Z(tv, method="em")
    print(f"Z({tv}) em err: {abs(got-ref):.2e}")
    assert abs(got - ref) < 1e-9

# --- RS asymptotic path: check the sign convention and corrections
print("\nRS asymptotic validation:")
for tv in [250.0, 537.0, 804.3, 1500.0, 2999.0, 7345.2]:
    ref = float(mp.siegelz(tv))
    for K in (0, 1, 2):
        got = _rs_asymptotic_Z(tv, K)
        bound = rs_remainder_bound(tv, K)
        flag = "OK " if abs(got - ref) <= bound else "FAIL"
        print(f"  t={tv:8.1f} K={K}: err={abs(got-ref):.3e} bound={bound:.3e} {flag}")

# dense scan to confirm the empirical bound on [200, 3000]
ts = np.linspace(200, 3000, 400)
worst = [0.0, 0.0, 0.0]
for tv in ts:
    ref = float(mp.siegelz(float(tv)))
    for K in (0, 1, 2):
        e = abs(_rs_asymptotic_Z(float(tv), K) - ref)
        r = e / rs_remainder_bound(float(tv), K)
        worst[K] = max(worst[K], r)
print("worst err/bound ratio per K:", worst)
