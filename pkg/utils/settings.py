"""
Environment-backed defaults.

`.env` is loaded by app.py with python-dotenv; this module only reads the
resulting environment. Tool functions never look at the environment, the CLI
passes these values down explicitly.
"""
import os

TOOL_VERSION = "0.3.0"


def _env_bool(name, default="false"):
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


def _env_int(name, default):
    raw = os.getenv(name)
    return int(raw) if raw not in (None, "") else default


def _env_float(name, default):
    raw = os.getenv(name)
    return float(raw) if raw not in (None, "") else default


class Settings:
    """Runtime configuration"""

    def __init__(self, environment="development", debug=False, log_level="WARNING",
                 limit_aut=1_000_000, limit_group=1_000_000, max_vertices=12,
                 max_direction_edges=8, tol_flow=1e-6, tol_symmetry=1e-12, jobs=1):
        self.environment = environment
        self.debug = debug
        self.log_level = "DEBUG" if debug else log_level.upper()
        self.limit_aut = limit_aut
        self.limit_group = limit_group
        self.max_vertices = max_vertices
        self.max_direction_edges = max_direction_edges
        self.tol_flow = tol_flow
        self.tol_symmetry = tol_symmetry
        self.jobs = jobs

    @property
    def report_dir(self):
        return "reports_dev" if self.environment == "development" else "reports"

    @classmethod
    def from_env(cls):
        return cls(
            environment=os.getenv("ENVIRONMENT", "development"),
            debug=_env_bool("DEBUG"),
            log_level=os.getenv("LIE_LOG_LEVEL", "WARNING"),
            limit_aut=_env_int("LIE_LIMIT_AUT", 1_000_000),
            limit_group=_env_int("LIE_LIMIT_GROUP", 1_000_000),
            max_vertices=_env_int("LIE_MAX_VERTICES", 12),
            max_direction_edges=_env_int("LIE_MAX_DIRECTION_EDGES", 8),
            tol_flow=_env_float("LIE_TOL_FLOW", 1e-6),
            tol_symmetry=_env_float("LIE_TOL_SYMMETRY", 1e-12),
            jobs=_env_int("LIE_JOBS", 1),
        )

    def to_dict(self):
        return {
            "environment": self.environment,
            "debug": self.debug,
            "log_level": self.log_level,
            "limit_aut": self.limit_aut,
            "limit_group": self.limit_group,
            "max_vertices": self.max_vertices,
            "max_direction_edges": self.max_direction_edges,
            "tol_flow": self.tol_flow,
            "tol_symmetry": self.tol_symmetry,
            "jobs": self.jobs,
        }
