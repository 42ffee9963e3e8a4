"""HTTP service surface; see ``roughvar.service.app``."""
