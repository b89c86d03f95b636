"""Finite dg-category presentations"""
