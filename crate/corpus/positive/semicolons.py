a = 1; b = 2; c = a + b
if c:
    d = 1; e = 2
