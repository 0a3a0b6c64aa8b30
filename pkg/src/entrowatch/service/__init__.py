"""Live session service: WebSocket wire protocol plus the FastAPI app."""

from .app import create_app

__all__ = ["create_app"]
