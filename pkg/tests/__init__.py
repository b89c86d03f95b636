"""Test suite for dglift."""
