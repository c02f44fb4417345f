import sys
from pathlib import Path

ROOT = Path(__file__).parents[2].resolve()

sys.path.insert(0, ROOT.as_posix())

from neron_graphs import __version__  # noqa: E402

# Sphinx configuration, see
# https://www.sphinx-doc.org/en/master/usage/configuration.html

project = "Neron Graphs"
copyright = "2026, Benny Thadikaran"
author = "Benny Thadikaran"
release = __version__

extensions = ["sphinx.ext.autodoc"]

# document members in the order they appear in the source; type hints go
# into the parameter descriptions
autodoc_member_order = "bysource"
autodoc_typehints = "description"

templates_path = ["_templates"]
exclude_patterns = ["_build"]

html_theme = "furo"
html_title = f"Neron Graphs {release}"
html_static_path = ["_static"]
