from borelwit.cli import cli

cli(prog_name="borelwit")
