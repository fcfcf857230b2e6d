from coxjsj.cli import main

main()
