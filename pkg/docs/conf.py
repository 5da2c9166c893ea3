# -*- coding: utf-8 -*-
#
# covprior documentation build configuration file.
import os
import sys

sys.path.insert(0, os.path.abspath('..'))

from covprior import __version__  # noqa: E402

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.napoleon']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'covprior'
version = __version__
release = __version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'
html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'covpriordoc'

latex_documents = [
    ('index', 'covprior.tex', u'covprior Documentation', u'covprior developers', 'manual'),
]
man_pages = [
    ('index', 'covprior', u'covprior Documentation', [u'covprior developers'], 1)
]
