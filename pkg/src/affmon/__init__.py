"""Affine monoids, their normality and seminormality, and regularity bounds for monoid rings."""
from .lattice import Lattice, lattice_member, lattice_rank, smith_normal_form
from .monoid import (AffineMonoid, MembershipVerdict, is_positive, membership, monoid_rank,
                     restructure_generators, units)
from .cones import (interior_monoid, is_normal, is_seminormal, normalization,
                    seminormality_witness, seminormalization)
from .polyalg import Poly, graded_component, is_monic_in, is_quasi_monic, leading_data, parse_poly
from .classes import (CertificationFailed, CertificationInconclusive, MnCertificate,
                      SubstitutionAutomorphism, apply_automorphism, certify_Mn, direct_sum_lift,
                      downgrade, is_phi_simplicial, tilt_automorphism, tilted_variables,
                      verify_automorphism, verify_certificate)
from .segre import (k_of, ps_certificate, rees_monoid, segre_certificate, segre_monoid,
                    verify_segre_iso)
from .bounds import RingProfile, mu_bound, serre_bound

__version__ = "0.1.0"
