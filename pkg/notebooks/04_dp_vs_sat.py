# %% [markdown]
# # An exact tree DP for hole-free independent offices
#
# Each room hangs below its parent through one corridor.  The DP keeps, per
# branch, a few guard sets that differ in how close they come to the two
# gate vertices, and glues them room by room.

# %%
import time

from dispersive_agp import dp
from dispersive_agp.exact import max_dispersion
from dispersive_agp.instances import GenConfig, gen_random_office

o = gen_random_office(GenConfig(seed=7, n_rooms=14, independent=True))
inst = dp.prepare(o)
print(len(o.rooms), "rooms, root", inst.tree.root, "edges", inst.tree.edges)

# %%
ell = 4
configs, ctx = dp.configuration_sets(inst, ell)
for edge, cs in (configs or {}).items():
    print(edge, [(c.dist_to_gate, c.covers_parent_room) for c in cs])

# %%
t = time.perf_counter()
a = dp.max_dispersion_dp(o, inst)
t_dp = time.perf_counter() - t
t = time.perf_counter()
b = max_dispersion(o.polygon)
t_sat = time.perf_counter() - t
print(f"dp {a.dispersion} in {t_dp:.2f}s, sat {b.dispersion} in {t_sat:.2f}s")
