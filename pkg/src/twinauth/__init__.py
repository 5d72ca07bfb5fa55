"""Digital-twin-assisted 5G handover authentication: protocol, simulator,
adversary harness, and overhead models."""

__version__ = "0.1.0"
