"""Setup configuration for the `multalpha` program."""

import codecs
import os

from setuptools import (
    find_packages,
    setup)

HERE = os.path.abspath(os.path.dirname(__file__))
MULTALPHA_DIR = os.path.join(HERE, 'multalpha')
VERSION_FILE = os.path.join(MULTALPHA_DIR, 'version.py')

with codecs.open(VERSION_FILE, encoding='utf-8') as f:
    exec(f.read())
    version = __version__  # noqa

setup(
    name='multalpha',
    version=version,
    description='Expected error costs of tests at multiple alpha levels',
    long_description='Visit the project\'s home page for more information',
    license='MIT',
    python_requires='>=3.10',
    install_requires=['colorama', 'jsonschema', 'matplotlib', 'numpy',
                      'scipy', 'toml'],
    packages=find_packages(exclude=['tests', '*.tests', '*.tests.*']),
    package_data={
        'multalpha': ['configuration/*.toml', 'configuration/*.json']
    },
    include_package_data=True,
    entry_points={
        'console_scripts': [
            'multalpha = multalpha.__main__:main'
        ]
    },
    classifiers=[
        'Environment :: Console',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics'
    ]
)
