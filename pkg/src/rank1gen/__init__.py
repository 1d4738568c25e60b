"""Event-driven generation of rank-1 (expected-degree) random graphs.

A weight sequence x_1..x_n defines a multigraph whose per-pair edge
multiplicities are independent Poissons with mean x_i x_j / L_n, where
L_n is the total weight mass.  Generation is event-driven: draw one
Poisson event budget K with mean L_n/2, then K endpoint pairs from the
weight distribution via an alias table, deduplicating on the fly for the
simple projection.  Expected cost is O(n + m), output-sensitive.

The package also ships an Erdos-Renyi generator built the same way,
two reference baselines (an exact pairwise oracle and a sorted
edge-skipping generator), a statistical validation harness, and a
scaling benchmark comparing the compiled and pure-Python kernel
backends.
"""

from ._backend import get_backend
from .alias import (
    AliasTable,
    build_alias,
    dump_alias_tsv,
    reconstruction_error,
    sample_vertex,
)
from .baselines import (
    generate_chung_lu_skip,
    generate_nr_oracle,
    prepare_chung_lu,
)
from .bench import (
    BenchResult,
    doubling_ratios,
    draw_weights,
    emit_report,
    load_results_csv,
    paired_prep_margins,
    run_sweep,
)
from .errors import (
    BenchError,
    DegeneracyError,
    DomainError,
    EmptyInputError,
    GraphGenError,
    ParseError,
)
from .generators import (
    GenOutcome,
    Multigraph,
    SimpleGraph,
    generate_er,
    generate_nr_multigraph,
    generate_nr_simple,
    project_simple,
)
from .graphio import (
    read_edges_binary,
    read_edges_text,
    write_edges_binary,
    write_edges_text,
)
from .randomness import RandomStream, poisson, uniform_index, uniform_real
from .stats import (
    CheckResult,
    ValidationConfig,
    ValidationReport,
    run_validation,
)
from .weights import (
    RegularityReport,
    WeightSequence,
    dump_weights,
    load_weights,
    regularity_report,
)

__version__ = "0.1.0"

__all__ = [
    "AliasTable",
    "BenchError",
    "BenchResult",
    "CheckResult",
    "DegeneracyError",
    "DomainError",
    "EmptyInputError",
    "GenOutcome",
    "GraphGenError",
    "Multigraph",
    "ParseError",
    "RandomStream",
    "RegularityReport",
    "SimpleGraph",
    "ValidationConfig",
    "ValidationReport",
    "WeightSequence",
    "build_alias",
    "doubling_ratios",
    "draw_weights",
    "dump_alias_tsv",
    "dump_weights",
    "emit_report",
    "generate_chung_lu_skip",
    "generate_er",
    "generate_nr_multigraph",
    "generate_nr_oracle",
    "generate_nr_simple",
    "get_backend",
    "load_results_csv",
    "load_weights",
    "paired_prep_margins",
    "poisson",
    "prepare_chung_lu",
    "project_simple",
    "read_edges_binary",
    "read_edges_text",
    "reconstruction_error",
    "regularity_report",
    "run_sweep",
    "run_validation",
    "sample_vertex",
    "uniform_index",
    "uniform_real",
    "write_edges_binary",
    "write_edges_text",
    "__version__",
]
