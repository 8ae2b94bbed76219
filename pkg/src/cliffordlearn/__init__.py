"""Learning Born distributions of Clifford circuits: stabilizer simulation,
SAMPLE/SQ oracles, an exact affine-subspace learner, and Monte Carlo checks
of the moment and distance bounds behind the SQ hardness argument."""

from .distributions import AffineUniform, Dense, uniform
from .f2core import AffineSubspace, BitVec, F2Matrix
from .learner import LearnedModel, LearnerConfig, pac_learn
from .oracles import SampleOracle, SQOracle
from .stabsim import BrickworkCircuit, CliffordGate2, StabilizerTableau, random_brickwork, run_circuit

__version__ = "0.1.0"

__all__ = [
    "AffineSubspace",
    "AffineUniform",
    "BitVec",
    "BrickworkCircuit",
    "CliffordGate2",
    "Dense",
    "F2Matrix",
    "LearnedModel",
    "LearnerConfig",
    "SQOracle",
    "SampleOracle",
    "StabilizerTableau",
    "pac_learn",
    "random_brickwork",
    "run_circuit",
    "uniform",
]
