from setuptools import setup, find_packages

setup(
    name='cauchytool',
    version='0.4.0',
    description='Exact walk kernels, transfer matrices and Monte Carlo checks for the Cauchy directed polymer.',
    install_requires=['diskcache', 'numpy', 'scipy'],
    extras_require={'test': ['pytest']},
    packages=find_packages(exclude=["scripts", "tests"]),
    entry_points={
        'console_scripts': ['cauchytool=cauchytool.cli.main:main'],
    },
)
