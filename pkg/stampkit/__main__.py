"""Allow running with: python -m stampkit"""

from .cli import cli

cli()
