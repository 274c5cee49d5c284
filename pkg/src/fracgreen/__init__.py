"""Green functions of time-fractional diffusion equations of single and distributed order.

Single order ``0 < beta <= 1``: ``u(x, t) = t^(-beta/2) M_{beta/2}(|x| t^(-beta/2)) / 2``,
with Fourier-cosine and Mellin-Barnes routes as independent checks.
Distributed order: a Laplace-type integral over the branch cut of
``B(s) = int b(beta) s^beta dbeta`` with a Fox-Wright kernel, its series in
``x``, and the second moment by numerical Laplace inversion.
"""

from importlib.metadata import PackageNotFoundError, version as _version

from .distributed import (
    OrderWeight,
    RayValue,
    b_transform,
    green_distributed,
    green_distributed_series,
    kernel_K,
    mass,
    parse_weight,
    phi_k,
    ray_decompose,
    second_moment,
    second_moment_asymptote,
    second_moment_laplace,
)
from .errors import (
    CancellationError,
    ConvergenceError,
    DomainError,
    FracGreenError,
    InstabilityError,
    NumericalError,
    PoleError,
    TruncationError,
)
from .mellin import ContourSpec, mb_F_kernel, mb_reduced_green
from .single_order import (
    FractionalOrder,
    GreenEvaluation,
    fourier_oracle_green,
    green,
    green_grid,
    moment,
    normalization,
    quadrature_moment,
    reduced_green,
)
from .specfun import (
    SeriesPolicy,
    erfc,
    fox_wright_F,
    gamma_complex,
    gamma_real,
    mittag_leffler_neg,
    mittag_leffler_tail,
    mwright,
    mwright_asymptotic,
    mwright_with_path,
    rgamma,
)

try:
    __version__ = _version("artifact")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.1.0"
