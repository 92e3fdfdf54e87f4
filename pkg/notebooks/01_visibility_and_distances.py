# %% [markdown]
# # Seeing and walking in an orthogonal polygon
#
# Two vertices see each other when the axis-parallel box they span lies in
# the polygon.  Distances are L1 lengths of shortest paths that stay inside.

# %%
from dispersive_agp.geom import OrthoPolygon, Point
from dispersive_agp.visibility import rvis_polygon, sees
from dispersive_agp.geodesic import all_pairs_vertex_dist, point_dist

u = OrthoPolygon.from_coords([(0, 0), (3, 0), (3, 3), (2, 3), (2, 1), (1, 1), (1, 3), (0, 3)])
print(u, "vertices:", u.vertices)

# %%
# The tips of the U cannot see each other; each sees straight down its own arm.
a, b = Point.of(0, 3), Point.of(3, 3)
print("tip to tip:", sees(u, a, b), " tip to its foot:", sees(u, a, Point.of(1, 0)))
print("tip to far corner:", sees(u, a, Point.of(3, 0)))
print("walking distance tip to tip:", point_dist(u, a, b))

# %%
# Vis(q) is a union of boxes, one staircase per quadrant.
v = rvis_polygon(u, a)
for r in v.rects:
    print(r)

# %%
# The full vertex distance matrix, scaled to integers.
d = all_pairs_vertex_dist(u)
print("scale", d.scale)
print(d.scaled)
print("distinct distances:", [str(x) for x in d.candidates()])
