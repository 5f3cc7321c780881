"""Exact scale values and scale volumes for envelopes of Schottky lattices.

Graphs of B(n) (connected, min degree 3, Betti number n) are enumerated up to
isomorphism; each maximal subtree gives a Schottky basis of the free group of
rank n, whose scales in the automorphism group of the universal covering tree
are read off a ramification product along each axis.
"""

__version__ = "0.1.0"

from .multigraph import (  # noqa: E402
    GraphError,
    Multigraph,
    betti,
    build_multigraph,
    canonical_key,
    parse_graph,
    read_graph,
)
from .enumeration import certificate, enumerate_rank  # noqa: E402
from .cover_colors import branch_iso_check, refine_dart_colors  # noqa: E402
from .scale_engine import (  # noqa: E402
    ELLIPTIC,
    AxisWalk,
    oracle_scale,
    ramification_profile,
    scale_element,
    scale_hyperbolic,
)
from .schottky import schottky_basis, spanning_trees  # noqa: E402
from .volumes import (  # noqa: E402
    build_bs,
    build_cycle_gadget,
    build_rose,
    prime_spectrum,
    schottky_volume,
    svol_report,
    verify_explicit_bounds,
)
