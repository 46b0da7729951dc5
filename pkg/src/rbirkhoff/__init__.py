"""Restricted Birkhoff polytopes: exact geometry, lattice-point counts, RSK and rowmotion."""
from .birkhoff import BirkhoffSpec, Margins, build_restricted_birkhoff, build_transportation, count_lattice_points_direct
from .diagdp import HAVE_COMPILED
from .ehrhart import CountFunction, QuasiPolynomial, ehrhart_polynomial, interpolate_polynomial, quasi_polynomial
from .errors import RBirkhoffError
from .exactgeom import HPolytope, VRep, affine_dim, count_lattice_points, facet_count, lattice_points, vertices
from .gtpatterns import GTPattern, build_GT, build_M, count_M_diagonal_DP, kostka
from .posets import Poset, chain_polytope, order_polytope, product_of_chains, transfer, transfer_inverse
from .rsk import rho, rho_inverse, rsk_forward, rsk_inverse

__version__ = "0.1.0"
