# scalediff/cli/__init__.py
