# Aliases accepted on top of the canonical material names
MATERIAL_ALIASES = {
    "vacuum": "air",
    "au": "gold",
    "si": "silicon",
}

# Plasma and resonance frequencies in rad/s
GOLD_PLASMA_FREQUENCY = 1.37e16
SILICON_RESONANCE_FREQUENCY = 6.6e15
SILICON_PLASMA_FREQUENCY = 3.3 * SILICON_RESONANCE_FREQUENCY

# Geometry used throughout the published curves
DEFAULT_WAVELENGTH = 1e-6
DEFAULT_SPHERE_RADIUS = 180e-6
NORMAL_FORCE_GAPS = [100e-9, 300e-9, 600e-9]
LATERAL_FORCE_GAPS = [100e-9, 200e-9, 400e-9]
FILL_FRACTIONS = [0.5, 0.2]
MATERIAL_PAIRS = [("gold", "silicon"), ("silicon", "air"), ("gold", "air")]

# Length units accepted in sweep configs, as powers of ten of a metre
LENGTH_UNITS = {
    "nm": -9,
    "um": -6,
    "μm": -6,
    "µm": -6,
    "mm": -3,
    "m": 0,
}

OUTPUT_CHOICES = ("normal", "normal_normalized", "lateral")

# Environment variables
THREADS_ENV_VAR = "CASIMIR_SWEEP_THREADS"
LOG_LEVEL_ENV_VAR = "CASIMIR_LOG_LEVEL"
