from dgs.main import main

main()
