import os
import os.path
import collections.abc
root = os.path.join("a", "b")
