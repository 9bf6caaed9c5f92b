"""Command implementations for the symwave CLI."""
