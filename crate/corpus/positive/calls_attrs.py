obj.method(1, 2)
value = obj.attr.inner
result = make()(3)
item = table.rows[2].cells[0]
