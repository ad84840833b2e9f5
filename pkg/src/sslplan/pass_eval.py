"""Pass evaluation under its module name; the implementation lives in :mod:`sslplan.evaluation`."""

from .evaluation import (FreeKickPlan, KickOrder, PassFeatures, Possession, ScoredPass, ShotDecision, ShotReason,
                         Side, best_of, best_pass, best_scored_pass, decide_shot, goal_windows, pass_features,
                         plan_free_kick, possession, rank_passes, score_pass, shoot_angle, widest_window)

__all__ = ["FreeKickPlan", "KickOrder", "PassFeatures", "Possession", "ScoredPass", "ShotDecision", "ShotReason",
           "Side", "best_of", "best_pass", "best_scored_pass", "decide_shot", "goal_windows", "pass_features",
           "plan_free_kick", "possession", "rank_passes", "score_pass", "shoot_angle", "widest_window"]
