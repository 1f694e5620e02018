pi = 3.14159
avogadro = 6.022e23
tiny = 1.0E-9
area = pi * 2.0 ** 2
