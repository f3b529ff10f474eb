"""Обработчики команд"""
from . import charscan, forward, invert, reconstruct, reduce, verify, weyl

HANDLERS = [forward, weyl, charscan, reconstruct, invert, verify, reduce]

__all__ = ["HANDLERS"]
