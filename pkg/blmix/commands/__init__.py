"""Command modules for durable operations."""
