"""Lift pipeline orchestration."""
