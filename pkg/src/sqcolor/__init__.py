"""List colouring of squares of subcubic graphs.

Three constructive solvers, each with exact precondition checks:

* :func:`solve8` -- lists of size 8, any subcubic graph without a Petersen
  component.
* :func:`solve7` -- lists of size 7 when ``mad(G) < 14/5``.
* :func:`solve6` -- lists of size 6 when ``G`` has girth at least 7 and
  ``mad(G) < 18/7``.

Exact oracles and graph generators live in :mod:`sqcolor.testkit`.
"""

from .coloring import (
    PartialColoring,
    format_coloring,
    format_lists,
    read_coloring,
    read_lists,
    uniform_lists,
    verify_square_coloring,
)
from .density import mad_below, mad_exact
from .discharging import (
    decompose,
    discharge_check_6,
    discharge_check_7,
    find_6prime_reducible,
    find_7_reducible,
    rebuild,
    recolor_u3,
    solve6,
    solve7,
)
from .errors import (
    GirthTooSmall,
    InternalCaseFailure,
    ListTooShort,
    MadTooLarge,
    NoConfigurationFound,
    PetersenInput,
    PreconditionViolated,
    StuckAt,
)
from .graph import Graph, GraphError, from_edge_list, girth, read_edge_list, square
from .theorem1 import detect_structure, solve8
from .trace import Trace

__version__ = "0.1.0"
