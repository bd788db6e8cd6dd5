"""Command line interface for idlkit."""
