"""measureboost: classification of weighted point sets by boosted
region-mass threshold classifiers, with an in-repo persistent homology
engine and estimators for the associated complexity and limit theorems."""

from .measures import (
    Measure,
    LabeledDataset,
    total_mass,
    integrate,
    mass_in_region,
    mbar_p,
)
from .regions import Ball, AxisRect, SmoothParams, contains, dist_to_ball, smooth_feature, sigmoid

__version__ = "0.1.0"
