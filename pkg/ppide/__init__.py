__version__ = "0.1.0"
__author__ = "ppide contributors"
__license__ = "MIT"
