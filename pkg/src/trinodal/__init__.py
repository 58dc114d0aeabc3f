"""Exact nodal domain counts for Dirichlet eigenfunctions of the right
isosceles triangle.

The antisymmetric eigenfunctions sin(mx)sin(ny) - sin(nx)sin(my) on the
triangle 0 <= y <= x <= pi are indexed by integer pairs m > n >= 1.  This
package counts their nodal domains exactly by two independent methods (an
integer recursion for the interior loop count and an Euler-formula count
on the nodal connectivity graph), checks them against a dense-grid
oracle, and computes statistics of the normalised count over the
spectrum along with the length spectrum hidden in its fluctuations.
"""

__version__ = "0.1.0"

from .modes import (ModePair, Reduction, SpectralSequence, enumerate_spectrum,
                    is_nontiling, reduce_mode, validate_mode, weyl_q)
from .counts import (NodalSummary, boundary_count, loop_count, loop_recursion,
                     nodal_count, recursion_trace)
from .graph import (Cell, GraphCounts, NodalGraph, build_cells, build_graph,
                    counts_from_graph, edges_for_cell, eval_phi, export_graph,
                    graph_nodal_count, render_svg, v_points)
from .oracle import grid_count, stable_count
from .stats import (DistributionHistogram, NodalSequence, distribution,
                    integrated_distribution, nodal_sequence, window_histogram)
from .trace import (CumulativeCurve, OrbitLength, Peak, PowerSpectrum,
                    SmoothFit, cumulative, loglog_slope, match_peaks,
                    orbit_table, power_spectrum, smooth_fit)
from .verify import SweepResult, oracle_sweep, sweep_modes

__all__ = [
    "__version__",
    "ModePair", "Reduction", "SpectralSequence", "enumerate_spectrum",
    "is_nontiling", "reduce_mode", "validate_mode", "weyl_q",
    "NodalSummary", "boundary_count", "loop_count", "loop_recursion",
    "nodal_count", "recursion_trace",
    "Cell", "GraphCounts", "NodalGraph", "build_cells", "build_graph",
    "counts_from_graph", "edges_for_cell", "eval_phi", "export_graph",
    "graph_nodal_count", "render_svg", "v_points",
    "grid_count", "stable_count",
    "DistributionHistogram", "NodalSequence", "distribution",
    "integrated_distribution", "nodal_sequence", "window_histogram",
    "CumulativeCurve", "OrbitLength", "Peak", "PowerSpectrum", "SmoothFit",
    "cumulative", "loglog_slope", "match_peaks", "orbit_table",
    "power_spectrum", "smooth_fit",
    "SweepResult", "oracle_sweep", "sweep_modes",
]
