from sphpoly.cli import main

main()
