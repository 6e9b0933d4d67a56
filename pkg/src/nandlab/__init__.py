"""NAND-tree instances, their choice complexity, the associated electrical
networks and span program, and a cost-model simulation of the game."""

from .complexity import ComplexityReport, choice_complexity, criticality, player_complexity
from .extrational import INF, ExtRational
from .game import CostModel, GameTranscript, Strategy, expected_cost, play, select
from .graph import LabeledGraph, build_dual, build_primal, verify_duality
from .resistance import dual_resistance_exact, resistance_exact, resistance_numeric
from .span import WitnessReport, approx_witnesses, build_span
from .tree import NandInstance, Player, evaluate

__all__ = [
    "INF",
    "ComplexityReport",
    "CostModel",
    "ExtRational",
    "GameTranscript",
    "LabeledGraph",
    "NandInstance",
    "Player",
    "Strategy",
    "WitnessReport",
    "approx_witnesses",
    "build_dual",
    "build_primal",
    "build_span",
    "choice_complexity",
    "criticality",
    "dual_resistance_exact",
    "evaluate",
    "expected_cost",
    "play",
    "player_complexity",
    "resistance_exact",
    "resistance_numeric",
    "select",
    "verify_duality",
]
