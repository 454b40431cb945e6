"""Reflection probability of a randomly placed segment object.

Analytic (quadrature) and Monte Carlo estimates of the probability that a
random line-segment object can reflect a signal between a fixed transmitter
and receiver, with a metasurface coating (any reflection angle) and without
one (specular reflection).
"""

from .analytic import (
    IntegrationLimits,
    NetworkConfig,
    ReflectionReport,
    heaviside,
    heaviside_c,
    pr_event1_approach1,
    pr_event1_approach2,
    pr_event2,
    pr_event3_upper,
    reflection_report,
    theta_kernel,
)
from .errors import (
    DegenerateConfig,
    DegenerateSlope,
    InvalidParameter,
    MetareflectError,
    ParallelLines,
    QuadratureFailure,
    VerticalLine,
)
from .geometry import (
    GeneralLine,
    Point2,
    PolarLine,
    SegmentObject,
    SideClassification,
    SlopeLine,
)
from .montecarlo import McReport, ProbabilityEstimate, SampleSpec, estimate
from .quadrature import QuadratureSpec, integrate

__version__ = "0.1.0"
