def fib(n):
    a = 0
    b = 1
    while n > 0:
        t = a + b
        a = b
        b = t
        n -= 1
    return a

for i in range(10):
    print(fib(i))
