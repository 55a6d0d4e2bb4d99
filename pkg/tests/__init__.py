"""Test suite for kmapfactor."""
