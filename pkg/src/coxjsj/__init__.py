"""Visual JSJ decompositions of Coxeter groups over virtually abelian splitters."""

from coxjsj.classify import classify_irreducible, coxeter_graph_components, virtually_abelian_structure
from coxjsj.diagram import CoxeterDiagram, components, components_minus, induced_subdiagram, separates
from coxjsj.errors import ContractViolation, CoxeterInputError, DiagramSyntaxError, OracleRefusal
from coxjsj.gog import GraphOfGroups
from coxjsj.jsj import jsj, m_jsj_decomposition, next_stage, reduce, split_vertex
from coxjsj.splitters import candidate_splitters, crosses, is_compatible, is_minimal, minimal_splitters

__all__ = [
    "CoxeterDiagram",
    "GraphOfGroups",
    "ContractViolation",
    "CoxeterInputError",
    "DiagramSyntaxError",
    "OracleRefusal",
    "candidate_splitters",
    "classify_irreducible",
    "components",
    "components_minus",
    "coxeter_graph_components",
    "crosses",
    "induced_subdiagram",
    "is_compatible",
    "is_minimal",
    "jsj",
    "m_jsj_decomposition",
    "minimal_splitters",
    "next_stage",
    "reduce",
    "separates",
    "split_vertex",
    "virtually_abelian_structure",
]
