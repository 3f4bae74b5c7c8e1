"""Simulation library for the WACA hierarchical weighted clustering algorithm.

Modules
-------
topology       unit-disk neighborhoods, clustering coefficient, degree deviation
weighting      device weight function
waca           election, role classification, king bonus
wca_baseline   WCA one-hop clustering baseline
mobility       placement and random waypoint movement
simkit         engine, sweeps, CSV output and command line
"""
__version__ = "0.1.0"
