"""
Main entry point for `python -m blmix` command.
"""
from .cli import cli

if __name__ == '__main__':
    cli()
