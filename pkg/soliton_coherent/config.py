import os

from dotenv import load_dotenv

load_dotenv()


class Config:
    N_MAX = int(os.getenv("SOLITON_CS_N_MAX", 20))
    QUAD_ORDER = int(os.getenv("SOLITON_CS_QUAD_ORDER", 80))
    GRID = os.getenv("SOLITON_CS_GRID", "-20:20:2048")
    # p-space trapezoid window for the continuum (spectral) integrals
    P_MAX = float(os.getenv("SOLITON_CS_P_MAX", 12.0))
    P_POINTS = int(os.getenv("SOLITON_CS_P_POINTS", 961))
    TOL_MEASURE = float(os.getenv("SOLITON_CS_TOL_MEASURE", 1e-8))
    TOL_FUNCTIONAL = float(os.getenv("SOLITON_CS_TOL_FUNCTIONAL", 1e-3))
    TOL_DARBOUX = float(os.getenv("SOLITON_CS_TOL_DARBOUX", 1e-6))
    INVERSE_TOLERANCE = float(os.getenv("SOLITON_CS_INVERSE_TOLERANCE", 1e-6))
    INVERSE_SIZE_CAP = int(os.getenv("SOLITON_CS_INVERSE_SIZE_CAP", 4096))
    LOG_LEVEL = os.getenv("SOLITON_CS_LOG_LEVEL", "INFO")
    SUITES = [
        "xi", "rho", "darboux", "coherent",
    ]
