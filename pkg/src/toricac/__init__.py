"""Exact toric birational geometry around the anticanonical model.

Fans, torus-invariant Q-divisors and their polytopes; good Zariski
decompositions of -K; discrepancies and minimal terminal resolutions; the
redundant MMP over the anticanonical model; the factorization diagram and the
Fano-type certificate built on top of them.
"""
from .divisor import TorusDivisor, anticanonical, canonical, polytope_of, positivity
from .errors import ToricError
from .fan import Fan, make_fan, normal_fan, refines, star_subdivision
from .mmp import extremal_wall_classes, is_redundant, mmp_step, redundant_mmp
from .pipeline import (check_fano_type, enumerate_models, q_factorialize, theorem_b_diagram,
                       weak_fano_certificate)
from .polytope import RationalPolytope
from .singularities import (LogPair, classify_pair, construct_klt_cy_boundary, log_discrepancy,
                            minimal_terminal_resolution)
from .zariski import anticanonical_model, good_zariski, sqm_to_zariski

__version__ = "0.1.0"
