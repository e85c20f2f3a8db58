"""Covering arrays from maximal-period sequences over finite fields."""

from .arrays import SymbolArray, read_array, write_array
from .coverage import feasible_tset, lambda_counts, verify_ca, verify_oa
from .cosets import coset_system, cyclotomic_coset, problem2_search
from .finite_field import FieldTower, build_tower, find_primitive_poly, tower_for
from .lp_bounds import brute_lambda, build_and_emit_lp, lambda_coeffs, lambda_li, truncation_bounds
from .modv import construct_family, existence_conditions, verify_modv
from .recipes import builtin_recipes, construct_from_recipe, parse_recipe, render_recipe
from .search import SearchConfig, find_ca
from .sequences import max_seq, seq_mod_v
from .trace_arrays import build_concat_array, build_mod_v_array, build_trace_array, fusion

__version__ = "0.1.0"
