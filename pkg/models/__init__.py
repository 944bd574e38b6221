from models.lie_algebra import InnerProduct, LieAlgebra, MatrixSubspace, SymForm, TransitivityResult, ValidationReport
from models.symmetry import Certificate, ReversibilityResult, SymmetryGroup
from models.curvature import RicciData, SolitonDecomposition
from models.flow import FlowProblem, FlowSample, FlowTrajectory
from models.graph import DirectedGraph, GraphAutomorphism, SimpleGraph
from models.family import FAMILY_NAMES, FamilySpec
from models.report import RunReport

__all__ = [
    'LieAlgebra',
    'InnerProduct',
    'SymForm',
    'MatrixSubspace',
    'ValidationReport',
    'TransitivityResult',
    'SymmetryGroup',
    'ReversibilityResult',
    'Certificate',
    'RicciData',
    'SolitonDecomposition',
    'FlowProblem',
    'FlowSample',
    'FlowTrajectory',
    'SimpleGraph',
    'DirectedGraph',
    'GraphAutomorphism',
    'FamilySpec',
    'FAMILY_NAMES',
    'RunReport',
]
