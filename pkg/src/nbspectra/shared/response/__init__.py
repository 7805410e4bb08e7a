"""Response building exports"""
from .builder import NextStep, NextStepEngine, ResponseBuilder, to_jsonable

__all__ = ["NextStep", "NextStepEngine", "ResponseBuilder", "to_jsonable"]
