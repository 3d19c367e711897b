from polarlab.cli import main

main()
