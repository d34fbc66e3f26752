__all__ = ["config", "console", "errors", "output", "utils"]
