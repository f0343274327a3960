"""Many-valued logics as a two-valued multi-modal sequent calculus."""

__version__ = "0.1.0"
