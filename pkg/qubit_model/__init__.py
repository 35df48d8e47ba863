# Qubit model app initialization
