def documented():
    """Return nothing.

    The body is just a string and a return.
    """
    return None
