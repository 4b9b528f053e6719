"""Grid-sweep certification of volume-bound campaigns."""

from .builtins import builtin_campaign, builtin_campaigns, builtin_config, builtin_names
from .campaign import Campaign, ConditionSpec, campaign_from_config, load_campaign
from .engine import default_workers, eval_condition, run_campaign, run_drilling_chain
from .report import CampaignReport, CheckRecord, ConditionResult
from .schedule import AffineMax, GridSchedule, StructuralCheck, validate_schedule

__all__ = [
    "AffineMax", "Campaign", "CampaignReport", "CheckRecord", "ConditionResult",
    "ConditionSpec", "GridSchedule", "StructuralCheck", "builtin_campaign",
    "builtin_campaigns", "builtin_config", "builtin_names", "campaign_from_config",
    "default_workers", "eval_condition", "load_campaign", "run_campaign",
    "run_drilling_chain", "validate_schedule",
]
