"""Finite subgroups of SO(q) for ternary quadratic forms over Q and F_p.

Everything is exact: rationals are Fractions, residues are integers mod p.
"""

from .conjugacy import (
    ConjugacySummary,
    DihedralClassDescriptor,
    InvolutionClass,
    KleinInvariant,
    conjugacy_summary,
    dihedral_class,
    dihedral_representative,
    dihedral_same_class,
    involution_class,
    klein_invariant,
    klein_representative,
    klein_same_class,
    representative_involution,
)
from .cyclotomic import CyclotomicData, alpha_beta, half_alpha_plus_one
from .embedding import (
    A4,
    A5,
    KLEIN,
    S4,
    Cyclic,
    Dihedral,
    GeneratorSet,
    GroupSpec,
    embeds,
    synthesize_generators,
    verify_subgroup,
)
from .errors import *  # noqa: F401,F403
from .field import GF, QQ, Field, Residue, SquareClass, reduce_square_class
from .oracle import cross_check, enumerate_group, subgroup_census
from .quadform import (
    REAL,
    BinaryForm,
    DiagonalForm,
    Place,
    TernaryForm,
    diagonalize,
    explicit_isometry,
    find_isotropic_vector,
    find_representation_vector,
    hasse_invariant,
    hilbert_symbol,
    is_isotropic,
    isometric,
    make_form,
    q0,
    quaternion_isomorphic,
    represents,
)
from .spectra import OrthoMatrix, analyze_element, p_irregular_isotropy_check

__version__ = "0.1.0"
