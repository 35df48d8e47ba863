# Statistics app initialization
