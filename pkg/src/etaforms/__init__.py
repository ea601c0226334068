"""Exact computations with eta-quotients on Gamma_0(N)."""

from .etaquot import CuspOrders, EtaQuotient, cusp_orders, parse
from .ntheory import DomainError, SL2Matrix

__all__ = ["CuspOrders", "DomainError", "EtaQuotient", "SL2Matrix", "cusp_orders", "parse"]
__version__ = "0.1.0"
