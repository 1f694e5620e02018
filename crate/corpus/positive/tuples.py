t = (1, 2, 3)
single = (1,)
unit = ()
mixed = (a, [b, c], {"k": d})
