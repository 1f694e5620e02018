t = True
f = False
n = None
if n == None:
    t = not t
