"""Request/response models, handlers, and the HTTP app."""

from . import handlers, models

__all__ = ["handlers", "models"]
