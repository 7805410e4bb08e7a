"""nbspectra - nonbacktracking spectra of sparse random matrices"""

__version__ = "1.0.0"
