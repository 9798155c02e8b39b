# -*- coding: utf-8 -*-
#
# Sphinx configuration for the rmtk documentation.


try:
    from sphinxcontrib import spelling
except ImportError:
    spelling = None


extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'releases',
]
if spelling:
    extensions.append('sphinxcontrib.spelling')

source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build']

project = 'rmtk'
author = 'rmtk contributors'
copyright = '2026, ' + author
version = '0.1'
release = '0.1.0'
language = 'en'

# Docstrings are reST with ``:param:`` fields.
autodoc_member_order = 'bysource'
autodoc_typehints = 'description'

spelling_word_list_filename = 'spelling_wordlist.txt'

pygments_style = 'sphinx'
html_theme = 'alabaster'
html_title = 'rmtk documentation'
htmlhelp_basename = 'rmtkdoc'

man_pages = [
    (master_doc, 'rmtk', 'random matrix toolkit', [author], 1),
]
