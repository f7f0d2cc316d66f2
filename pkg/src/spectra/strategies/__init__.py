"""Bidder policies and the unilateral-deviation search."""

from .base import BidEvent, ClosedResult, LicenseView, Policy, PrivateState, PublicView
from .policies import (
    CartelAgreement,
    CartelDefector,
    CartelMember,
    DemandReducer,
    ExposureChaser,
    ScaledSealed,
    ShadedSealed,
    StraightforwardAscending,
    TruthfulSealed,
)
from .registry import POLICIES, make_policy
