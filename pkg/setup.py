# -*- coding: utf-8 -*-


from setuptools import find_packages, setup


def readfile(path):
    with open(path, 'rb') as stream:
        return stream.read().decode('utf-8')


readme = readfile('README.rst')


setup(
    name='rmtk',
    version='0.1.0',
    packages=find_packages(where='src'),
    package_dir={
        '': 'src',
    },
    description='rmtk: random matrix toolkit',
    long_description=readme,
    python_requires='>=3.9',
    install_requires=[
        'numpy>=1.20',
        'pandas>=1.2',
        'scipy>=1.6',
        'typing-extensions>=3.7.4',
    ],
    entry_points={
        'console_scripts': [
            'rmtk = rmtk._cli:main',
        ],
    },
)
