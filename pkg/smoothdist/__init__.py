"""
smoothdist - Differentiable distance metrics between convex polytopes

Generalized alternating projection with k-times differentiable
point-to-set metrics, plus a benchmark harness and command-line front end.
"""

__version__ = "0.1.0"
__author__ = "HiepLP"
__email__ = "hiepphuocly@gmail.com"
