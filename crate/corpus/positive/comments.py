# leading comment
x = 1  # trailing comment

    # indented comment at odd depth
if x:
    # comment inside a block
    y = 2
# closing remark
