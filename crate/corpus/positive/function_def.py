def add(a, b):
    return a + b

def nothing():
    pass

result = add(1, 2)
