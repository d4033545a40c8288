"""actidash: actigraphy and biometrics analytics for cohort dashboards.

Ingests accelerometer epochs and sparse biometrics, classifies activity via
configurable counts-per-minute cut-points, aggregates per local day, and
serves comparisons, cohort statistics, and recommendations over HTTP.
"""

__version__ = "0.1.0"
