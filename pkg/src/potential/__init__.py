__all__ = ["coefficients", "commands", "modes", "oracles", "specfun"]
