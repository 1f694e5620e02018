print("this is a demo")
if 1 < 2:
    print("inside the block")
