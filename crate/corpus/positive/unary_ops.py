a = -1
b = - - 2
c = -x ** 2
d = not not e
