"""
Unit Tests for Histogram Map/Reduce
"""

import functools
from collections import Counter

from kasami_welch.parallel import default_threads, map_reduce_histograms, merge_histograms, split_range


def _mod_histogram(modulus, bounds):
    return Counter(x % modulus for x in range(*bounds))


class TestSplitRange:
    """Test range partitioning."""

    def test_covers_range_in_order(self):
        ranges = split_range(10, 3)
        assert ranges == [(0, 4), (4, 7), (7, 10)]

    def test_more_parts_than_items(self):
        assert split_range(2, 8) == [(0, 1), (1, 2)]

    def test_empty(self):
        assert split_range(0, 4) == []

    def test_zero_parts_means_one(self):
        assert split_range(5, 0) == [(0, 5)]


class TestMapReduce:
    """Test merging and dispatch."""

    def test_merge(self):
        merged = merge_histograms([Counter({1: 2}), Counter({1: 1, 3: 4})])
        assert merged == Counter({1: 3, 3: 4})

    def test_in_process(self):
        worker = functools.partial(_mod_histogram, 3)
        result = map_reduce_histograms(worker, split_range(30, 4), threads=1)
        assert result == Counter({0: 10, 1: 10, 2: 10})

    def test_pool_matches_in_process(self):
        """Test the counts never depend on the worker count."""
        worker = functools.partial(_mod_histogram, 7)
        chunks = split_range(1000, 8)
        assert map_reduce_histograms(worker, chunks, threads=2) == map_reduce_histograms(
            worker, chunks, threads=1
        )

    def test_default_threads_positive(self):
        assert default_threads() >= 1
