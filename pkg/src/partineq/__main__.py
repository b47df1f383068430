from partineq.cli import entry

entry()
