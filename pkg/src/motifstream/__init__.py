"""Single-pass estimation of 4- and 5-clique counts in edge streams."""

from .clique_prob import (
    prob_clique_fiveest,
    prob_clique_fourest,
    prob_clique_ts4c1,
    prob_clique_ts4c2,
    prob_clique_ts5c,
    prob_clique_ts5c_exact,
)
from .estimators import ESTIMATORS, make_estimator
from .oracle import ExactOracle, compute_mape, count_overlap_pairs
from .reservoir import Reservoir, joint_inclusion_prob
from .stream import Edge, dedup_stream, make_rng, parse_edge_line, read_stream
from .synthgen import generate_ba

__version__ = "0.1.0"
