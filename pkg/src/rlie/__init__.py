"""Schunck classes, projectors and p-envelopes for restricted Lie algebras over finite fields."""

from __future__ import annotations

__version__ = "0.1.0"
