class InputError(ValueError):
    """Raised for malformed or out-of-range arguments (CLI exit status 2)."""
