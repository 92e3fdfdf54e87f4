# %% [markdown]
# # Guards that are always far apart
#
# On integer office polygons a guard set with dispersion 3 always exists and
# ``wc3`` builds one.  With rational coordinates only 2 is guaranteed, and
# ``wc2`` walks each room's left and top walls to get it.

# %%
from dispersive_agp.instances import GenConfig, gen_random_office, rationalize_office
from dispersive_agp.worstcase import wc2, wc3
from dispersive_agp.exact import max_dispersion
from dispersive_agp.witness import verify_solution

o = gen_random_office(GenConfig(seed=11, n_rooms=12, allow_holes=True))
print(len(o.rooms), "rooms,", len(o.corridors), "corridors,", len(o.polygon.holes), "holes")

# %%
sol = wc3(o)
print("wc3:", len(sol.guards), "guards, dispersion", sol.dispersion)
print("guards by phase:", {p: sol.stats["phase"].count(p) for p in (1, 2, 3)})
print(verify_solution(o.polygon, sol.guards, 3, at_least=True))

# %%
# How much is left on the table?  The exact optimum for comparison.
print("optimum:", max_dispersion(o.polygon).dispersion)

# %%
r = rationalize_office(o, seed=11)
s2 = wc2(r)
print("wc2 on the rational copy:", s2.dispersion, verify_solution(r.polygon, s2.guards, 2, at_least=True).ok)
