"""Test suite for constwidth."""
