# Harness app initialization
