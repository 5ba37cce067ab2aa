# Runge-Kutta tableaux and steppers
