# Outcome source app initialization
