# API controllers package

from .spectral_controller import SpectralController
