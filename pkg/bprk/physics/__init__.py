# Conservation laws and exact Riemann solver
