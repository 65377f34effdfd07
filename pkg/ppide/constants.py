"""All application-wide constants, experiment defaults, and numerical tolerances for ppide."""

from pathlib import Path

# ---------------------------------------------------------------------------
# Application identity & directory layout
# ---------------------------------------------------------------------------

APP_NAME: str = "ppide"
APP_DIR: Path = Path.home() / ".ppide"
LOG_DIR: Path = APP_DIR / "logs"

# ---------------------------------------------------------------------------
# Logging configuration
# ---------------------------------------------------------------------------

LOG_FILENAME: str = "ppide.log"
MAX_LOG_BYTES: int = 2 * 1024 * 1024  # 2 MB per rotating file
LOG_BACKUP_COUNT: int = 5             # keep 5 rotated files
LOG_RECORD_FORMAT: str = "%(asctime)s %(levelname).1s [%(threadName)s] %(name)s | %(message)s"
LOG_DATEFMT: str = "%H:%M:%S"
LOG_LEVEL_ENV_VAR: str = "PPIDE_LOG_LEVEL"

# ---------------------------------------------------------------------------
# Threads
# ---------------------------------------------------------------------------

THREADS_ENV_VAR: str = "PPIDE_THREADS"
DEFAULT_THREADS: int = 1

# ---------------------------------------------------------------------------
# Jump model defaults (positive side carries the experiments)
# ---------------------------------------------------------------------------

DEFAULT_LAMBDA: float = 0.2
DEFAULT_NU: float = 1.0
DEFAULT_ALPHA: float = -1.0

# ---------------------------------------------------------------------------
# Market / terminal condition defaults
# ---------------------------------------------------------------------------

DAYS_PER_YEAR: float = 365.0
DEFAULT_STRIKE: float = 100.0
DEFAULT_RATE: float = 0.01
DEFAULT_VOL: float = 0.1
DEFAULT_MATURITY: float = 30.0 / DAYS_PER_YEAR
DEFAULT_OPTION_KIND: str = "put"

# ---------------------------------------------------------------------------
# Grid defaults
# ---------------------------------------------------------------------------

DEFAULT_S_MIN: float = 1e-8
DEFAULT_S_MAX: float = 500.0
DEFAULT_N_SPACE: int = 256
DEFAULT_N_TIME: int = 50
MIN_N_SPACE: int = 4

DEFAULT_X_STAR: float = 20.0
DEFAULT_FFT_SIZES: tuple[int, ...] = (256, 512, 1024, 2048, 4096)

# Values printed in the published grid-step table, used as a self-check.
TABLE1_FD_H: float = 0.096
TABLE1_FFT_H: tuple[float, ...] = (0.1563, 0.078, 0.039, 0.0195, 0.00977)
TABLE1_RTOL: float = 5e-3

# ---------------------------------------------------------------------------
# Scheme defaults
# ---------------------------------------------------------------------------

PADE_KINDS: tuple[str, ...] = ("cn11", "pade12", "pade22")
DEFAULT_PADE: str = "cn11"

# Sign of the pseudo-parabolic right-hand side; +1 adds the jump generator to dC/dtau.
DEFAULT_RHS_SIGN: int = 1
# Share of the Green-function delta mass counted on the half line.
DEFAULT_DELTA_WEIGHT: float = 0.5
EXPERIMENT_DELTA_WEIGHT: float = 1.0

VG_INTEGER_ORDERS: tuple[int, ...] = (0, 1, 2)
VG_MAX_M: float = 2.0

DEFAULT_NU_STAR: float = 300.0
DEFAULT_M_INTERVALS: int = 80
TIME_ORDERS: tuple[str, ...] = ("order2", "order3")
DEFAULT_TIME_ORDER: str = "order2"

# ---------------------------------------------------------------------------
# FFT reference
# ---------------------------------------------------------------------------

COMPENSATION_MODES: tuple[str, ...] = ("analytic", "discrete")
DEFAULT_COMPENSATION: str = "analytic"
TRAPEZOID_ORIGIN_WEIGHT: float = 0.5

# ---------------------------------------------------------------------------
# Stability diagnostics
# ---------------------------------------------------------------------------

STABILITY_TOL: float = 1e-12
POWER_ITER_MAX: int = 500
POWER_ITER_RTOL: float = 1e-10
DENSE_FALLBACK_MAX_N: int = 256
STIFFNESS_WARN_RATIO: float = 1.0

# ---------------------------------------------------------------------------
# Sweep defaults
# ---------------------------------------------------------------------------

DEFAULT_NU_STAR_VALUES: tuple[float, ...] = (100.0, 300.0, 600.0)
DEFAULT_M_VALUES: tuple[int, ...] = (40, 80, 160)
DEFAULT_STABILITY_H: tuple[float, ...] = (0.05, 0.1, 0.2)
DEFAULT_STABILITY_THETA: tuple[float, ...] = (1e-3, 1e-2, 1e-1)
DEFAULT_STABILITY_ALPHA: tuple[int, ...] = (-1, -2, -3)
DEFAULT_STABILITY_NU: tuple[float, ...] = (0.5, 1.0, 1.5)
DEFAULT_STABILITY_N: int = 64
DEFAULT_TEST_ALPHAS: tuple[float, ...] = (-0.5, -1.0, -1.5, -2.0)
DEFAULT_INFVAR_NU: float = 2.0
DEFAULT_INFVAR_EDGE_SHARE: float = 0.08
DEFAULT_VG_STABILITY_H: tuple[float, ...] = (0.1, 1.0, 4.0)
DEFAULT_ALPHA_REAL: float = -2.5
ALPHA_SCALINGS: tuple[str, ...] = ("plain", "mass")
DEFAULT_ALPHA_SCALING: str = "mass"
DEFAULT_REFERENCE_N: int = 2048

DEFAULT_BASIC_ALPHA: float = 1.0
DEFAULT_BASIC_LAMBDA: float = 0.2
DEFAULT_BASIC_X_MIN: float = -10.0
DEFAULT_BASIC_X_MAX: float = 10.0

# ---------------------------------------------------------------------------
# Experiments & results
# ---------------------------------------------------------------------------

EXPERIMENTS: tuple[str, ...] = (
    "fd_vs_fft",
    "alpha_interp",
    "vg_case",
    "infvar_nu_star_sweep",
    "infvar_m_sweep",
    "stability_sweep",
    "test_integral",
    "basic_model",
)

DEFAULT_OUTPUT_DIR: str = "results"
CSV_FLOAT_FORMAT: str = ".17g"
CSV_SUFFIX: str = ".csv"
TABLE1_FILENAME: str = "table1.csv"

# ---------------------------------------------------------------------------
# Environment checks
# ---------------------------------------------------------------------------

MIN_PYTHON: tuple[int, int] = (3, 11)
REQUIRED_PACKAGES: tuple[str, ...] = ("numpy", "scipy", "click", "rich")
