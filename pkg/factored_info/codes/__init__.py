"""Maximal-distance codes and partitions of the string set"""

from .codes import (
    Code,
    CodePartition,
    bipartite_matchings_partition,
    count_max_distance_codes,
    count_partitions,
    enumerate_all_partitions,
    enumerate_max_distance_codes,
    exhaustive_partitions,
    hamming_distance,
    partition_into_codes,
)

__all__ = [
    "Code",
    "CodePartition",
    "bipartite_matchings_partition",
    "count_max_distance_codes",
    "count_partitions",
    "enumerate_all_partitions",
    "enumerate_max_distance_codes",
    "exhaustive_partitions",
    "hamming_distance",
    "partition_into_codes",
]
