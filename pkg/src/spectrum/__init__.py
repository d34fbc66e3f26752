__all__ = ["commands", "couplings", "dispersion", "ngb"]
