"""Dev validation for test_functions: identities + mpmath cross-check."""
import numpy as np
import mpmath as mp

from weilbench.test_functions import (make_bump, mellin, mellin_line, tau_involution,
                                      mconvolve, parse_descriptor)

mp.mp.dps = 30

g = make_bump(0.6, 1.7, "exp_inverse")
h = make_bump(0.4, 2.5, "cosine_power", n=8)

# 1. mellin vs mpmath quad (log coords)
for fn, (la, lb) in ((g, g.log_support), (h, h.log_support)):
    for s in (0.5 + 3.7j, 0.5 - 11.2j, 0.0 + 25.0j, 1.0 + 0.0j, 0.5 + 60.0j):
        mv = mellin(fn, s)
        ref = mp.quad(lambda x: mp.mpf(float(fn.eval_log(np.array([float(x)]))[0]))
                      * mp.e**(mp.mpc(s) * x), [la, (la + lb) / 2, lb])
        err = abs(complex(ref) - mv.value)
        print(f"{fn.descriptor:35s} s={s}: err={err:.2e} qerr={mv.quadrature_error:.2e}")
        assert err < 5e-12, (fn.descriptor, s, err)

# 2. batch vs single
taus = np.linspace(-80, 80, 321)
vals, cert = mellin_line(g, taus, 0.5)
worst = max(abs(vals[i] - mellin(g, 0.5 + 1j * taus[i]).value) for i in range(0, 321, 40))
print(f"batch-vs-single worst={worst:.2e} cert={cert:.2e}")
assert worst < 1e-11

# 3. decay bounds honored: |ghat(1/2+i tau)| <= min_m V_m/tau^m
for tau in (5.0, 20.0, 60.0):
    got = abs(mellin(g, 0.5 + 1j * tau).value)
    bnd = g.line_decay_bound(tau, "half")
    print(f"decay tau={tau}: |ghat|={got:.3e} bound={bnd:.3e}")
    assert got <= bnd

# 4. tau involution: ghat^tau(s) = conj(ghat(1 - conj(s)))
gt = tau_involution(g)
for s in (0.5 + 4.0j, 0.3 + 9.0j, 0.8 - 2.0j):
    lhs = mellin(gt, s).value
    rhs = np.conj(mellin(g, 1 - np.conj(s)).value)
    print(f"tau-inv s={s}: diff={abs(lhs - rhs):.2e}")
    assert abs(lhs - rhs) < 1e-11
# V bounds preserved
print("V bounds g:", [f"{v:.3e}" for v in g.derivative_bounds[:4]])
print("V bounds gt:", [f"{v:.3e}" for v in gt.derivative_bounds[:4]])

# 5. mconvolve: khat = ghat * hhat on several lines; support product
k = mconvolve(g, h)
print("k support:", k.support, "expect", (0.6 * 0.4, 1.7 * 2.5))
for s in (0.5 + 0.0j, 0.5 + 7.3j, 0.2 + 2.0j, 0.5 + 30.0j):
    lhs = mellin(k, s, tol=1e-9).value
    rhs = mellin(g, s).value * mellin(h, s).value
    print(f"mconv s={s}: diff={abs(lhs - rhs):.2e}")
    assert abs(lhs - rhs) < 1e-9

# 6. self-convolution with involution -> khat on half-line = |ghat|^2 (real, >= 0)
k2 = mconvolve(g, tau_involution(g))
for tau in (0.0, 3.0, 12.0):
    got = mellin(k2, 0.5 + 1j * tau, tol=1e-9).value
    want = abs(mellin(g, 0.5 + 1j * tau).value) ** 2
    print(f"k2 tau={tau}: {got:.6e} vs {want:.6e} diff={abs(got - want):.2e}")
    assert abs(got - want) < 1e-9

# 7. V_2 stability under refinement (1% contract)
for fn in (g, h):
    v2 = fn.v_bound(2)
    v2r = fn.v_bound(2, refined=True)
    print(f"{fn.descriptor}: V2={v2:.6e} refined={v2r:.6e} rel={abs(v2-v2r)/v2r:.2e}")
    assert abs(v2 - v2r) / v2r < 1e-4

# 8. descriptor round trip
for fn in (g, h):
    fn2 = parse_descriptor(fn.descriptor)
    assert fn2.descriptor == fn.descriptor
    xs = np.linspace(0.1, 5.0, 77)
    assert np.allclose(fn(xs), fn2(xs), atol=0)
print("descriptor round-trip OK")

# 9. smoothness: central finite differences vs eval derivatives
xs = np.linspace(g.log_support[0] + 0.05, g.log_support[1] - 0.05, 23)
eps = 1e-5
fd = (g.eval_log(xs + eps) - g.eval_log(xs - eps)) / (2 * eps)
print("fd deriv err:", np.max(np.abs(fd - g.eval_log(xs, 1))))
assert np.max(np.abs(fd - g.eval_log(xs, 1))) < 1e-6 * max(1, g.w_bound(2))

# 10. plancherel: int |ghat(1/2+i tau)|^2 dtau/2pi = int g^2 du
taus = np.linspace(-400, 400, 160001)
vals, _ = mellin_line(g, taus, 0.5)
lhs = np.trapezoid(np.abs(vals) ** 2, taus) / (2 * np.pi)
xs = np.linspace(*g.log_support, 20001)
rhs = np.trapezoid(g.eval_log(xs) ** 2 * np.exp(xs), xs)  # int g(u)^2 du, u=e^x
print(f"plancherel: {lhs:.10f} vs {rhs:.10f} diff={abs(lhs-rhs):.2e}")
assert abs(lhs - rhs) < 1e-8

print("ALL TEST_FUNCTIONS CHECKS PASSED")
