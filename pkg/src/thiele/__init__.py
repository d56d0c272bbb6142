"""Exact Thiele committee rules on structured approval domains."""
