"""
Analysis toolkit for two-hop cooperative cognitive radio networks with an
energy-harvesting decode-and-forward relay.

The package is organized into the following modules:

- :py:mod:`specfun`: exponential integrals and the gamma/binomial helpers.
- :py:mod:`model`: geometry, protocol configuration and derived parameters.
- :py:mod:`analytic`: closed-form outage and throughput evaluators.
- :py:mod:`optimize`: closed-form and numeric optimal EH parameters.
- :py:mod:`montecarlo`: the channel-level simulator used as oracle.
- :py:mod:`sweep` and :py:mod:`logging`: parameter sweeps and their output.
"""
__version__ = "0.1.0"
