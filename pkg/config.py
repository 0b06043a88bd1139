import os
import yaml

ROOT_PATH = os.path.dirname(__file__)
CONFIG_FILE_PATH = os.path.join(ROOT_PATH, "env.yaml")

if os.path.exists(CONFIG_FILE_PATH):
    with open(CONFIG_FILE_PATH, "r") as r_file:
        data = yaml.safe_load(r_file) or dict()
else:
    data = dict()


class ApplicationConfig:
    LOG_LEVEL = data.get("LOG_LEVEL", "INFO")

    # Critical-mass algebra
    A_GAMMA = float(data.get("A_GAMMA", 1.0))  # Hardy-Littlewood-Sobolev placeholder
    DEFAULT_L = float(data.get("DEFAULT_L", 2.0))
    GAMMA_SNAP_TOLERANCE = float(data.get("GAMMA_SNAP_TOLERANCE", 1e-9))

    # Lane-Emden integration
    LANE_EMDEN_XI0 = float(data.get("LANE_EMDEN_XI0", 1e-6))
    LANE_EMDEN_XI_MAX = float(data.get("LANE_EMDEN_XI_MAX", 1e4))
    LANE_EMDEN_RTOL = float(data.get("LANE_EMDEN_RTOL", 1e-12))
    LANE_EMDEN_ATOL = float(data.get("LANE_EMDEN_ATOL", 1e-14))
    LANE_EMDEN_POINTS = int(data.get("LANE_EMDEN_POINTS", 2001))

    # Initial data
    INITIAL_GRID_POINTS = int(data.get("INITIAL_GRID_POINTS", 4001))
    UNIFORM_TAPER_FRACTION = float(data.get("UNIFORM_TAPER_FRACTION", 0.05))
    COMPATIBILITY_TOLERANCE = float(data.get("COMPATIBILITY_TOLERANCE", 1e-10))
    FILE_COMPATIBILITY_TOLERANCE = float(data.get("FILE_COMPATIBILITY_TOLERANCE", 1e-6))

    # Verification thresholds
    ENERGY_TOLERANCE = float(data.get("ENERGY_TOLERANCE", 1e-2))
    MASS_TOLERANCE = float(data.get("MASS_TOLERANCE", 1e-10))
    GEOMETRY_TOLERANCE = float(data.get("GEOMETRY_TOLERANCE", 1e-12))
    ENVELOPE_X_MIN_FRACTION = float(data.get("ENVELOPE_X_MIN_FRACTION", 0.2))
    Y_BOUND_SLACK = float(data.get("Y_BOUND_SLACK", 0.05))
    PATH_PAIR_STRIDES = list(data.get("PATH_PAIR_STRIDES", [1, 2, 4, 8, 16, 32, 64]))
    MIN_FIT_SAMPLES = int(data.get("MIN_FIT_SAMPLES", 10))

    # Output
    SNAPSHOT_EVERY = int(data.get("SNAPSHOT_EVERY", 10))
    DEFAULT_OUTPUT_DIR = data.get("DEFAULT_OUTPUT_DIR", "run")
