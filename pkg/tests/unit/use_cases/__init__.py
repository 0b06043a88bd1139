"""Unit tests for use cases"""
