# ##############################################################################
#  This file is part of df_contours                                            #
#                                                                              #
#  You may use, distribute and modify this code under the                      #
#  terms of the (BSD-like) CeCILL-B license.                                   #
#                                                                              #
#  You should have received a copy of the CeCILL-B license with                #
#  this file. If not, please visit:                                            #
#  https://cecill.info/licences/Licence_CeCILL-B_V1-en.txt (English)           #
#  or https://cecill.info/licences/Licence_CeCILL-B_V1-fr.txt (French)         #
#                                                                              #
# ##############################################################################
SYSTEM_MUSKAT = "muskat_multiphase"
SYSTEM_SQG_CONTOUR = "sqg_contour"
SYSTEM_SQG_MULTIPHASE = "sqg_multiphase"
SYSTEMS = (SYSTEM_MUSKAT, SYSTEM_SQG_CONTOUR, SYSTEM_SQG_MULTIPHASE)
GRAPH_SYSTEMS = (SYSTEM_MUSKAT, SYSTEM_SQG_MULTIPHASE)

DOMAIN_PERIODIC = "periodic"
DOMAIN_REALLINE = "realline"
DOMAINS = (DOMAIN_PERIODIC, DOMAIN_REALLINE)

WORKER_SYNC = "sync"
WORKER_THREAD = "thread"
WORKER_PROCESS = "process"
WORKERS = (WORKER_SYNC, WORKER_THREAD, WORKER_PROCESS)

STATUS_OK = "ok"
STATUS_SPLASH = "splash"
STATUS_ERROR = "error"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SPLASH = 3
EXIT_CERTIFICATION = 4
EXIT_IO = 5

MIN_NODES = 16
DEFAULT_DECAY_TOL = 1e-6
# smallest admissible beta^2 + delta^2 in the graph kernels
SINGULAR_DENOMINATOR = 1e-30
MONITOR_C0 = 16.0

SERIES_COLUMNS = (
    "t",
    "S",
    "alpha_min",
    "sup_f2",
    "sup_g2",
    "curvature_max",
    "chord_arc",
    "C_mon",
    "envelope",
)
CERTIFICATE_COLUMNS = SERIES_COLUMNS + ("ineq_margin", "applicable")
GRAPH_SNAPSHOT_COLUMNS = ("alpha", "f", "g")
CONTOUR_SNAPSHOT_COLUMNS = ("alpha", "x1", "x2")
STATUS_PREFIX = "#status: "

CONFIG_FILENAME = "config.txt"
SERIES_FILENAME = "series.csv"
SNAPSHOT_DIRNAME = "snapshots"
SNAPSHOT_PATTERN = "snapshot_%05d.csv"
CERTIFICATE_FILENAME = "certificate.csv"
SUMMARY_FILENAME = "certificate.json"
