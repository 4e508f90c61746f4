"""Local HTTP session service for live or replayed PPT acquisition."""

from .app import create_app
from .manager import ServiceConfig, SessionManager

__all__ = ["ServiceConfig", "SessionManager", "create_app"]
