# %% [markdown]
# # When the guarantees cannot be beaten
#
# Three unit corridors one unit apart force two guards within distance 3.
# Corridors packed tau apart push the optimum below 2 + eps.

# %%
from fractions import Fraction

from dispersive_agp.instances import gen_fig_disp3, gen_packing, gen_ratio_family
from dispersive_agp.instances import ratio_dispersive_guards, ratio_small_guards
from dispersive_agp.exact import decide, enumerate_optimal, max_dispersion
from dispersive_agp.witness import verify_coverage, verify_solution

print("three corridors:", max_dispersion(gen_fig_disp3().polygon).dispersion)

# %%
eps, tau = Fraction(1, 2), Fraction(1, 8)
for c in (9, 10, 11):
    p = gen_packing(c, eps, tau).polygon
    print(f"{c} corridors: optimum {max_dispersion(p).dispersion}, "
          f"guard sets at 2+eps: {enumerate_optimal(p, 2 + eps)}")

# %%
# The stacked-rooms family: k guards suffice, but dispersion 4k+1 needs about twice as many.
for k in (2, 3):
    o = gen_ratio_family(k)
    sol = max_dispersion(o.polygon)
    print(f"k={k}: optimum {sol.dispersion} with {len(sol.guards)} guards; "
          f"{k} guards cover: {verify_coverage(o.polygon, ratio_small_guards(k))}")
    rep = verify_solution(o.polygon, ratio_dispersive_guards(k), 4 * k + 1)
    print("   alternating strip construction realizes", rep.dispersion)
# for k=2 there is a single gap of 2, so the strip guards end up only 6+2 = 8 apart
