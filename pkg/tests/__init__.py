"""Test suite for antbench."""
