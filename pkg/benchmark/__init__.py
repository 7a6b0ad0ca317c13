# Evaluation protocol: corpus I/O, benchmark harness, weight grid search, report emission
