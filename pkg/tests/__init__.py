# Unit tests for graphcolor and benchmark
