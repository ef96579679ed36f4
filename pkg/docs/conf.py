# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('..'))


# -- Project information -----------------------------------------------------

project = u'ehcrn'
copyright = u'2021, ehcrn contributors'
author = u'ehcrn contributors'

version = u''
release = u'0.1'


# -- General configuration ---------------------------------------------------

extensions = [
    'autoapi.extension',
    'sphinx.ext.doctest',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx_rtd_theme',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = None
exclude_patterns = [u'_build', 'Thumbs.db', '.DS_Store']
pygments_style = None

autoclass_content = "class"
autoapi_dirs = ['../ehcrn']
autoapi_options = [
    'members',
    'undoc-members',
    'show-inheritance',
    'show-module-summary',
    'imported-members'
]
autoapi_python_class_content = 'both'


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_options = {
    'collapse_navigation': False,
}
htmlhelp_basename = 'ehcrndoc'


# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'ehcrn', u'ehcrn Documentation',
     [author], 1)
]
