# running ``python -m normratio`` at import time would break doctest collection
collect_ignore = ["src/normratio/__main__.py"]
