# %% [markdown]
# # Dynamics on both sides of a gap resonance
#
# Biases just below and just above `eps_A + delta_L` and `eps_B + delta_R`,
# plus a high bias. Crossing a resonance switches a transport channel on,
# which changes how fast the concurrence evolves.

# %%
import dataclasses

import numpy as np

from qdmjj.config import load_preset
from qdmjj.observables import concurrence
from qdmjj.sweep import dynamics, resonance_biases

# %%
for name in ("fig5a", "fig5b"):
    cfg = load_preset(name)
    print(f"{name}: gaps {cfg.lead_left.delta}/{cfg.lead_right.delta}, "
          f"initial = {cfg.resolved_initial()}")
    for label, v in resonance_biases(cfg).items():
        rows = dynamics(dataclasses.replace(cfg, bias=v))
        c = np.array([r.concurrence for r in rows])
        t = np.array([r.t for r in rows])
        print(f"  {label:15s} V = {v:6.2f}: max C = {c.max():.3f} at t = {t[c.argmax()]:.3f}, "
              f"C(end) = {c[-1]:.3f}")
