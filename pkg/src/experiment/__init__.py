__all__ = ["commands", "deviation", "reconcile", "scan", "threshold", "validity"]
