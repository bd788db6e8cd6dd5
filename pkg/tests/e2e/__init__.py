"""End-to-end tests exercising the public CLI interfaces."""

