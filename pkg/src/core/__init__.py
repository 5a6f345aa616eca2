"""Core modules: configuration, logging, exceptions."""
