"""Frobenius and test-ideal computations over F_p[x_1, ..., x_n] and its
hypersurface quotients."""

from .fieldpoly import DEGREVLEX, LEX, MonomialOrder, Poly, PolyRing, frobenius_decompose
from .ideal import Ideal, RingCtx, colon, intersect, krull_dim, member, vspace_length
from .frobenius import (CartierMapSpec, bracket_power, eth_root, fedder_is_fpure,
                        hom_to_multiplier, splitting_ideal_Ie, trace_image)
from .testideal import (PairAt, TauResult, fpt_bounds, is_strongly_f_regular, jumping_numbers_grid,
                        nu_value, tau_hypersurface, tau_ideal_regular, tau_map_pair)
from .numinv import InvariantEstimate, fsig_sequence, hk_sequence, splitting_prime_approx
from .closures import (ClosureVerdict, briancon_skoda_check, frobenius_closure_test,
                       monomial_integral_closure, tight_closure_witness)

__all__ = [name for name in dir() if not name.startswith("_")]
