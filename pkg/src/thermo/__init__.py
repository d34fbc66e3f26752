__all__ = ["commands", "heat_capacity", "shells"]
