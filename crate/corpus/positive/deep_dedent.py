while a:
  while b:
    while c:
      while d:
        e = 1
f = 2
