"""HTTP service exposing the library's checks as request/response endpoints."""

from .app import create_app

__all__ = ["create_app"]
