import logging

sim_logger = logging.getLogger("ccnsim")
# Prevent "No handler found" warnings if the application doesn't configure logging
sim_logger.addHandler(logging.NullHandler())
