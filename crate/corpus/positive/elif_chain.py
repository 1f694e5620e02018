if x < 0:
    sign = -1
elif x == 0:
    sign = 0
elif x > 1000:
    sign = 2
else:
    sign = 1
