"""Strictly unital A-infinity functors and pre-natural transformations"""
