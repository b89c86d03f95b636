"""Lifting H0 natural transformations to closed A-infinity transformations"""
