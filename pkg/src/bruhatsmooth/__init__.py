"""Schubert variety smoothness in finite Weyl groups through Bruhat graphs."""

__version__ = "0.1.0"

from .bruhat import BruhatGraph, BruhatInterval, bruhat_graph, bruhat_leq, degree, lower_interval
from .coxeter import (
    CoxeterSystem, GroupElement, Reflection, build_system, enumerate_group, inverse,
    inversion_set, is_involution, left_descents, length, longest_element, multiply,
    reflections, support,
)
from .errors import (
    BruhatSmoothError, CapExceeded, MalformedCartan, NonFiniteType, PreconditionViolated,
    SystemMismatch, TheoremViolation, UnknownType, WordParseError,
)
from .smoothness import (
    BrokenRhombus, DegreeDefect, RegularGraph, SmoothnessCertificate, cross_validate,
    find_broken_rhombi, is_regular, rationally_smooth_br, rationally_smooth_cp,
)
from .subgroups import (
    ReflectionSubgroup, canonical_generators, compare_bruhat_graphs, dihedral_from_quadruple,
    dihedral_type, reflection_closure,
)
from .verifier import (
    InvolutionVerdict, ProofWitness, TheoremReport, involutions, is_parabolic_longest,
    proof_witness, verify_theorem,
)
