# %% [markdown]
# # Steady-state entanglement vs bias
#
# Concurrence of the stationary state for symmetric coupling (kappa = 0) and
# for strongly asymmetric coupling (kappa = 0.95). The stationary state does
# not depend on where the evolution starts.

# %%
import numpy as np

from qdmjj.config import load_preset
from qdmjj.liouvillian import steady_state
from qdmjj.observables import concurrence, purity
from qdmjj.sweep import generator_at

voltages = [0.0, 2.5, 5.0, 7.5, 10.0, 12.0]

# %%
for name in ("fig3a", "fig3b"):
    cfg = load_preset(name)
    print(f"{name}: kappa = {cfg.kappa}")
    for dl, dr in cfg.gap_pairs():
        sub = cfg.for_gaps(dl, dr)
        row = []
        for v in voltages:
            rho = steady_state(generator_at(sub, v))
            row.append(f"{concurrence(rho):.3f}/{purity(rho):.2f}")
        print(f"  gaps {dl}/{dr}:  " + "  ".join(row))
print("columns: V =", voltages, "(concurrence/purity)")

# %% [markdown]
# Transport drives the stationary state close to a classical mixture of the
# four dot configurations, so the concurrence stays small at every bias.
