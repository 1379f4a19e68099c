"""Central record of tolerances, step sizes and caps."""

from dataclasses import dataclass, replace
import os


@dataclass(frozen=True)
class Config:
    """Numerical settings used across the package.

    Every tolerance used by a verification lives here so that reports can
    state exactly what was checked.
    """

    # enveloping algebra / extension
    degree_cap: int = 12
    closure_round_cap: int = 64

    # eigenvalues and matrix functions
    root_tol: float = 1e-12
    root_max_iter: int = 500
    cluster_tol: float = 1e-8
    taylor_tol: float = 1e-18
    imag_tol: float = 1e-10
    sqrt_max_iter: int = 100

    # group geometry
    neighborhood: float = 2.0
    projection_tol: float = 1e-8
    fd_step: float = 1e-5
    outer_step: float = 1e-2
    convergence_step: float = 2e-2
    convergence_ratio: float = 3.5
    convergence_floor: float = 1e-8
    duality_tol: float = 1e-9
    identity_tol: float = 1e-7
    associativity_tol: float = 1e-7
    bracket_tol: float = 1e-5
    structure_tol: float = 1e-5
    lie_tol: float = 1e-4
    maurer_cartan_tol: float = 1e-4
    metric_tol: float = 1e-4
    metric_flag: float = 1e-2
    bch_tol: float = 1e-10

    # symbolic tables
    trials: int = 20
    expr_tol: float = 1e-9
    resample_cap: int = 200

    seed: int = 20240611


DEFAULT = Config()
SEED_ENV = "ADOFRAMES_SEED"


def default_config():
    """Return the default configuration, honoring the seed override."""
    seed = os.environ.get(SEED_ENV)
    if seed is None:
        return DEFAULT
    return replace(DEFAULT, seed=int(seed))
