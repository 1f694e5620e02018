a = 1 + 2 * 3
b = (1 + 2) * 3
c = 2 ** 3 ** 2
d = 7 // 2 % 3
e = -a + +b
