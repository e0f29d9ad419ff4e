# OreSolve engine services
