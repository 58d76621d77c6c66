from .app import create_app
from .manager import SessionManager

__all__ = ["SessionManager", "create_app"]
