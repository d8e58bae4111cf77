"""Tests for the Anki vocabulary generator.""" 