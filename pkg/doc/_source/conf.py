# -*- coding: utf-8 -*-
#
# pyrevol documentation build configuration file.

import sys, os

sys.path.insert(0, os.path.abspath('../..'))

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinx.ext.napoleon',
              'matplotlib.sphinxext.plot_directive',
              'sphinx.ext.autosummary',
              ]

templates_path = ['../_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'pyrevol'
copyright = u'2026, the pyrevol developers'

import pyrevol
version = pyrevol.__version__
release = pyrevol.__version__

exclude_patterns = ['../_build']
default_role = "autolink"
add_function_parentheses = False
pygments_style = 'sphinx'
autosummary_generate = True

html_theme = 'alabaster'
html_title = "%s v%s Manual" % (project, version)
html_last_updated_fmt = '%b %d, %Y'
html_use_modindex = True
html_copy_source = False
html_domain_indices = False
html_file_suffix = '.html'
htmlhelp_basename = 'pyrevoldoc'

latex_elements = {
'preamble': '''
\\usepackage{amssymb}
\\newcommand{\\cone}{{\\mathcal K}_m}
\\newcommand{\\cube}{Q_m}
''',
}

latex_documents = [
  ('index', 'pyrevol.tex', u'pyrevol Documentation',
   u'the pyrevol developers', 'manual'),
]

man_pages = [
    ('index', 'pyrevol', u'pyrevol Documentation',
     [u'the pyrevol developers'], 1)
]
