"""Exact graded linear algebra over Q and F_p"""
