"""Scalar photon propagation: fractional Fourier transform, Fresnel diffraction,
smeared Green's functions and photon-counting scans."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .field import (CustomSource, Gaussian, GaussianPair, RectSlit, SampledField, energy,
                    render_source, resample, source_from_json, source_to_json)
from .frft import (ReducedSignal, frft_composed, frft_fast, frft_kernel, frft_reference,
                   harmonic_kernel, hermite_gauss, propagate_q, reduce_order)
from .geometry import (MassTerm, PropagationGeometry, geometry_from_alpha, geometry_from_z,
                       general_geometry, reduce_field, unreduce_field)
from .propagators import (compare_fields, fraunhofer, fresnel_direct, fresnel_via_frft,
                          rayleigh_sommerfeld_oracle)
from .green import (Dirac, GaussianDist, Mixture, UniformBall, generalized_G,
                    kernel_shape_compare, sifting_check, smoothing_factor, spherical_G)
from .counting import DetectorScan, chi_square_fit, integrate_detector, simulate_scan
from .scenarios import load_scenario
