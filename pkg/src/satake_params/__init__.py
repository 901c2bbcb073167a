"""Exact computations with unramified-type Satake parameters of p-adic groups.

The package works purely on the dual side: based root data with a Galois
action, Kottwitz groups, characters with formal values in q, and the
normalized transfer between Satake parameters of a group and of its
quasi-split inner form.
"""

__version__ = "0.1.0"
