"""HTTP service wrapping the hurstlab core library."""

from .app import app, create_app

__all__ = ["app", "create_app"]
