"""Ultimate bounds under persistent bounded disturbance in the input channel.

A corrupted phase estimate acts on the transverse dynamics as a matched
disturbance d.  Two theoretical ceilings apply to the tail of ||eta||:

    min-norm alone:     4 c2 / (gamma c1 eps) |d|inf
    with damping u_s:   2 eps_bar c2 / (c1^2 eps^2) |d|inf

Both are deliberately loose over-approximations; the measured tail sits far
below them and scales linearly with the disturbance amplitude, which is the
asymptotic-gain signature of input-to-state stability.
"""

import numpy as np

import orbitclf as oc

dims = oc.OutputDims(0, 1)
dyn = oc.build_fg(dims)
plant = oc.HopfPlant(dims=dims)
cert = oc.certificate(dyn, np.eye(2), 0.1)
x0 = np.array([0.0, 0.0, 1.0, 0.0])

print("=== min-norm controller, sinusoid and random disturbances ===")
for kind in ("sinusoid", "piecewise_constant_random"):
    print(f"kind = {kind}")
    for amp in (0.01, 0.05, 0.1):
        sig = oc.DisturbanceSignal(kind=kind, dim=1, amplitude=amp,
                                   frequency=0.5, dwell=0.5, seed=3)
        loop = oc.DisturbedClosedLoop(plant=plant, cert=cert,
                                      controller="min_norm", signal=sig, sigma=1.0)
        rec = oc.integrate(loop, x0, T=12.0, dt=1e-3)
        ult = oc.ultimate_bound(rec)
        bound = oc.min_norm_ultimate_bound(cert, amp)
        print(f"  |d|inf = {amp:5.2f}: measured {ult:.5f}   bound {bound:8.3f}   "
              f"measured/|d|inf = {ult / amp:.4f}")
    print()

print("=== damping feedback shrinks the tail further ===")
amp = 0.05
sig = oc.DisturbanceSignal(kind="sinusoid", dim=1, amplitude=amp, frequency=0.5)
for eps_bar in (0.5, 0.1):
    loop = oc.DisturbedClosedLoop(plant=plant, cert=cert,
                                  controller="min_norm_plus_us", signal=sig,
                                  eps_bar=eps_bar, sigma=1.0)
    rec = oc.integrate(loop, x0, T=12.0, dt=1e-3)
    ult = oc.ultimate_bound(rec)
    print(f"  eps_bar = {eps_bar}: measured {ult:.6f}   "
          f"damped bound {oc.damped_ultimate_bound(cert, eps_bar, amp):.4f}")

print("\nThe damping term contributes -(1/eps_bar) ||G'P_eps eta||^2 to")
print("dV_eps/dt, which caps the disturbance cross term at eps_bar |d|inf^2;")
print("smaller eps_bar therefore rejects harder.")
