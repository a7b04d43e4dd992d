"""Console entrypoint for the bitrade command group."""

from bitrade.commands import cli

if __name__ == "__main__":
    cli(prog_name="bitrade")
