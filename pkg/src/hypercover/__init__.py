"""Minimum-degree thresholds for covering 3-graphs by connected three-edge patterns."""

from .constructions import (ClaimedBound, Construction, claimed_c1, construct, construct_f5_lower,
                            construct_gs3_lower, construct_k113_lower, construct_s3_lower,
                            construct_tp3_lower, construct_trivial_intersecting,
                            construct_turan_3partite)
from .core import Graph2, ThreeGraph, degree, link_graph, min_i_degree, remove_vertices
from .embedding import (CoverageReport, count_labeled_copies, find_rooted_copy, has_covering,
                        is_free, iter_embeddings)
from .graphs import (TutteBergeCertificate, check_common_neighbor_lemma, common_neighbor_graph,
                     max_matching_size, tutte_berge_certificate)
from .io import GraphFormatError, parse_graph, read_graph, serialize_graph, write_graph
from .patterns import Pattern, PatternId, all_patterns, pattern
from .threshold import (SearchConfig, ThresholdResult, exact_threshold, naive_threshold_oracle,
                        probe_lower_bound)
from .verify import VerifyReport, verify

__version__ = "0.1.0"
