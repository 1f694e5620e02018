def outer(x):
    def inner(y):
        return x * y
    return inner

triple = outer(3)
