total = first + \
        second + \
 third
ok = total > 10 and \
    total < 100
