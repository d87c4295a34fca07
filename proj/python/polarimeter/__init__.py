"""Multi-opinion polarization scores for opinion-labeled networks."""

from ._core import (
    Graph,
    analyze,
    build_retweet_network,
    census,
    classify_stance,
    generate_sbm,
    karate_club,
    load_graph,
    louvain,
    modularity,
    polarization_component,
    relabel,
    score_partition,
)

__all__ = [
    "Graph",
    "analyze",
    "build_retweet_network",
    "census",
    "classify_stance",
    "generate_sbm",
    "karate_club",
    "load_graph",
    "louvain",
    "modularity",
    "polarization_component",
    "relabel",
    "score_partition",
]
