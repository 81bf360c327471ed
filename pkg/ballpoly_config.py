"""
Configuration for tolerances, search limits and sampling densities.

Library modules import these dictionaries with a fallback to built-in
defaults, so this file may be edited (or removed) without touching code.
"""

# Numerical tolerances
TOLERANCES = {
    'eps_geom': 1e-9,          # predicate tolerance (distances, memberships)
    'eps_opt': 1e-12,          # optimizer stopping tolerance
    'degeneracy_band': 1e-6,   # 4th sphere closer than this (but not incident) is degenerate
}

# Exhaustive search caps (desk scale)
SEARCH_LIMITS = {
    'exhaustive_circumball': 12,   # support-set enumeration up to this many points
    'es_search_points': 20,
    'kirchberger_points': 24,
    'dowker_n_max': 12,
    'angle_sweep': 64,             # find_frame rotations before giving up
}

# Optimizer settings
OPTIMIZER = {
    'restarts': 32,                # extremal_search multi-start count
    'max_workers': 4,              # thread fan-out for restarts
    'active_set_max_iter': 500,
}

# Sampling densities for verification routines
SAMPLING = {
    'counterexample_samples': 10000,
    'unit_separation_grid_2d': 256,
    'unit_separation_grid_3d': 48,
    'direction_scan_2d': 720,
    'direction_scan_3d': 2000,
    'edge_samples': 6,
}

# Report / figure output
REPORTS = {
    'float_digits': 17,
    'svg_scale': 200.0,            # pixels per unit
    'svg_margin': 20.0,
    'svg_stroke': '#1f4e79',
    'svg_circle_stroke': '#b0b0b0',
}
