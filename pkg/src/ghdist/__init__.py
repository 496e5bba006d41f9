"""Exact Hausdorff, Gromov-Hausdorff and Lipschitz distances between finite
metric spaces, window constructions of a few unbounded spaces, and a
verification harness."""
from .errors import (AxiomViolation, DegenerateScale, DomainError, FiberDiameter, MetricError,
                     SizeLimit, SizeMismatch, SpaceMismatch)
from .gh import (Correspondence, GHResult, Relation, distortion, gh_enumerate_oracle, gh_exact,
                 gh_lower_bound_diam, gh_upper_bound_diam)
from .lip import Bijection, LipResult, delta_from_eps, dilation, eps_from_delta, lemma1_check, lip_exact
from .metric import (FiniteMetricSpace, PointSubset, diameter, hausdorff_distance, l1_product, scale,
                     set_distance, validate)

__version__ = "0.1.0"
