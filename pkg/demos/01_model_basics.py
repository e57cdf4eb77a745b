"""Tour of the problem instance: channels, rates, and element powers.

A transmissive-RIS transmitter with N elements sends one stream per
multicast group; a group's rate is its worst user's rate, and every
element carries its own power budget instead of a total-power constraint.
"""

import numpy as np

import trtcbeam as tb

cfg = tb.SystemConfig(N=16, G=2, group_of=(0, 0, 1, 1), P_t=tb.dbm_to_watts(10.0), rng_seed=42)
geo = tb.GeometryConfig()  # 100 m half-disc cell, 5 dB Rician factor, -90 dBm noise
inst = tb.build_instance(cfg, geo)
ch = inst.channels

print(f"instance: N={cfg.N} elements, G={cfg.G} groups, K={cfg.K} users")
print(f"user distances from transmitter (m):")
d = np.linalg.norm(inst.user_positions - np.asarray(geo.trtc_position), axis=1)
print("  " + "  ".join(f"{x:7.1f}" for x in d))
print(f"channel gains |h|^2 summed per user (dB):")
print("  " + "  ".join(f"{10*np.log10(np.sum(np.abs(h)**2)):7.1f}" for h in ch.h))

F = tb.initial_beamformer(cfg, ch)
print(f"\ninitial beamformer: every element at its {tb.dbm_to_watts(10.0)*1e3:.0f} mW budget")
print(f"  per-element powers (mW): min {tb.element_powers(F).min()*1e3:.3f}, "
      f"max {tb.element_powers(F).max()*1e3:.3f}")
print(f"  feasible: {tb.is_feasible(cfg, F)}")

rates = tb.user_rates(cfg, ch, F)
print("\nper-user rates at the initial point (nats):")
for k, r in enumerate(rates):
    print(f"  user {k} (group {cfg.group_of[k]}): {r:.4f}  SINR={tb.sinr(cfg, ch, F, k):.2f}")
print(f"sum of per-group worst rates: {tb.objective(cfg, ch, F):.4f} nats "
      f"({tb.nats_to_bits(tb.objective(cfg, ch, F)):.4f} bits)")
