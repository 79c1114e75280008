"""
Command Line Module

Main Components:
- lpd_cli.py: Argument parsing and the main entry point
- config.py: RunConfig and its validation
- commands.py: One function per subcommand
- validation.py: Threaded invariant suite behind `validate`
"""
