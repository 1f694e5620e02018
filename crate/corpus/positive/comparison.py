a = x == y
b = x != y
c = (x < y) == (y < z)
d = x >= y
