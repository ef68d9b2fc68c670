"""
Shared constants used across gpsolid.

Centralizes tolerances and numerical defaults so the modules agree on
them and tests can refer to the same values.
"""

# Adaptive trapezoid quadrature
QUAD_RTOL = 1e-8
QUAD_MAX_NODES = 2 ** 20
QUAD_MIN_INTERVALS = 256
QUAD_ROMBERG_DEPTH = 4

# Far-field cutoff for power-law tails, relative to the tail integral
TRUNCATION_TOL = 1e-12

# Sampled checks on the tail (evenness, envelope, sign)
TAIL_SAMPLES = 512
EVENNESS_RTOL = 1e-10

# Radial k-scan
KGRID_POINTS = 4096
KGRID_RANGE_FACTOR = 20.0
KGRID_FALLBACK_KMAX = 20.0

# "w_hat >= 0" is decided at -FOURIER_SIGN_TOL * w_hat(0)
FOURIER_SIGN_TOL = 1e-10

# Descent
MULTISTART_TIE = 1e-12
STALL_WINDOW = 10
STALL_RTOL = 1e-12
COSINE_SEED_AMPLITUDE = 0.1
RANDOM_SEED_AMPLITUDE = 0.2

# Grids must resolve the instability wavelength: h <= (2 pi / k0) / WAVELENGTH_NODES
WAVELENGTH_NODES = 12

# Densities below this are treated as rounding noise
NEGATIVE_DENSITY_TOL = 1e-12

# Mean density of a grand-canonical minimizer is expected in [mu / C, C mu]
DENSITY_BAND_FACTOR = 4.0

# Diagnostics
PEAK_THRESHOLD = 0.1
OSCILLATION_SLACK = 0.5
BOUNDARY_MARGIN = 5.0
BOUNDARY_MARGIN_FRACTION = 1.0 / 8.0
DEGREE_MIN_SAMPLES = 64
DEGREE_MODULUS_TOL = 1e-12

# Thermodynamic pipeline
LOW_CONFIDENCE_GAP = 0.05
BRACKET_REFINE_STEPS = 6
MIN_BOX_SIZES = 3

# Classical measures
SUPPORT_THRESHOLD = 1e-8

# Output
CSV_FLOAT_FORMAT = ".17g"
SNAPSHOT_MAGIC = b"GPSF"
SNAPSHOT_VERSION = 1
