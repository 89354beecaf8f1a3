from swdegree.cli import main

main()
