"""The sequent system: axiom schemas, derivations, checking, search and synthesis."""

from .axioms import AxiomId, ac_key, connective_axioms, format_axiom_listing, generate_axiom, is_axiom, match_axioms
from .proof import Axiom, Hypothesis, Macro, Proof, Rule, Verdict, check_proof, cut, lower, macro, upper
from .proofio import dump_proof, load_proof, proof_from_json, proof_to_json
from .search import prove_bounded
from .synthesis import literal_theory, synthesize_completeness_proof

__all__ = [
    "AxiomId",
    "ac_key",
    "connective_axioms",
    "format_axiom_listing",
    "generate_axiom",
    "is_axiom",
    "match_axioms",
    "Axiom",
    "Hypothesis",
    "Macro",
    "Proof",
    "Rule",
    "Verdict",
    "check_proof",
    "cut",
    "lower",
    "macro",
    "upper",
    "dump_proof",
    "load_proof",
    "proof_from_json",
    "proof_to_json",
    "prove_bounded",
    "literal_theory",
    "synthesize_completeness_proof",
]
