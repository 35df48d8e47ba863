# Adaptive estimator app initialization
