"""Guard placement with maximum dispersion in orthogonal polygons.

Vertex guards see with r-visibility, distances are L1 geodesics, and all
arithmetic is exact.
"""
from .geom import (Point, Rect, OrthoPolygon, OfficePolygon, Corridor,
                   contains_point, contains_rect, validate_ortho, validate_office,
                   office_to_polygon)
from .visibility import sees, covers_rect, rvis_polygon
from .geodesic import build_hanan, geodesic_dist, all_pairs_vertex_dist
from .witness import INF, build_cells, shadow_witnesses, verify_coverage, verify_solution
from .exact import Solution, decide, max_dispersion, enumerate_optimal
from .worstcase import wc2, wc3
from .dp import check_independent, decide_dp, max_dispersion_dp
from .instances import (GenConfig, gen_random_office, gen_packing, gen_ratio_family,
                        gen_fig_disp3, gen_random_orthogonal, read_instance, write_instance)

__version__ = "0.1.0"
