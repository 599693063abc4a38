"""Test suite for kasami-welch."""
