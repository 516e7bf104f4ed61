"""Higher spectral sequences of finite multifiltered chain complexes over F_p."""

from .complexes import Generator, MultifilteredComplex, filtration_subspace, load_mfc, read_mfc
from .downsets import Box, Downset, DownsetQuad, comp0, lex_downset, representative_quad, step_quads
from .engine import e_term, extension_filtration, limit, page, page_differential, s_term, saturate
from .linalg import Subquotient, Subspace, induced_map
from .planner import continued_fraction, fibonacci_check, normal_vector, plan_word
from .words import (
    Word,
    b_region,
    differential_data,
    is_admissible,
    is_final,
    lattice,
    normalize,
    parse_word,
    saturated_sets,
    t_matrix,
    u_vec,
)

__version__ = "0.1.0"
