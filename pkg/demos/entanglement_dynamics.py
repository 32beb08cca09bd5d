# %% [markdown]
# # Entanglement dynamics at fixed bias
#
# A Bell state loses its entanglement once the leads are connected
# (symmetric coupling), while the product state `|gg>` builds some up
# transiently under asymmetric coupling. Larger gaps make both faster.

# %%
import numpy as np

from qdmjj.config import load_preset
from qdmjj.liouvillian import default_time_grid, evolve
from qdmjj.observables import concurrence
from qdmjj.sweep import generator_at
from qdmjj.system import initial_state


def efold(t, c, decaying):
    if decaying:
        level = c[-1] + (c[0] - c[-1]) / np.e
        return t[np.argmax(c <= level)]
    return t[np.argmax(c >= (1 - 1 / np.e) * c.max())]


# %%
for name, decaying in (("fig4a", True), ("fig4b", False)):
    cfg = load_preset(name)
    print(f"{name}: V = {cfg.bias}, initial = {cfg.resolved_initial()}")
    for dl, dr in cfg.gap_pairs():
        sub = cfg.for_gaps(dl, dr)
        traj = evolve(generator_at(sub, sub.bias), initial_state(sub.resolved_initial()),
                      default_time_grid(sub.t_max, sub.t_points))
        c = np.array([concurrence(rho) for rho in traj.states])
        print(f"  gaps {dl}/{dr}: C(0) = {c[0]:.3f}, max C = {c.max():.3f}, "
              f"C(end) = {c[-1]:.3f}, e-folding time = {efold(traj.times, c, decaying):.3f}")
