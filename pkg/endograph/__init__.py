import logging
from endograph._settings import _Settings

settings = _Settings()
logging.basicConfig(level=settings.DEBUG_LEVEL)
logging.debug(f"Initializing with the following settings: \n{settings}")
