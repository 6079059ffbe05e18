class InputError(ValueError):
    """Bad user-supplied input: files, flags, presets, score tables.

    The CLI maps this to exit code 2; anything else escaping a command is
    an internal error (exit code 1).
    """
