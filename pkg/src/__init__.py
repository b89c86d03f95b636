"""dglift: exact lifting of natural transformations between A-infinity functors"""
