"""Greedy first-fit graph coloring under metric-driven vertex orderings."""
