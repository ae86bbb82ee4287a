"""Twin conjugacy-search toolkit over braid groups.

Braid arithmetic with Garside left-greedy normal forms, hashed encryption
from the conjugacy search problem (single and twin), the trapdoor test
for twin decision queries, an executable simulation of the reduction from
the single problem to the oracle-assisted twin problem, and two key
exchange protocols with a framed wire format.
"""

from .braid import (
    BraidWord,
    CanonicalForm,
    GroupParams,
    PermutationBraid,
    StrandMismatchError,
    conjugate,
    default_params,
    delta,
    equals,
    invert,
    multiply,
    nf_conjugate,
    nf_invert,
    nf_multiply,
    normal_form,
    permutation_of,
    word_of,
)
from .codec import (
    AuthenticationError,
    CodecError,
    SealedBox,
    SymKey,
    hash_elements,
    serialize_canonical,
    sym_decrypt,
    sym_encrypt,
)
from .elgamal import (
    Ciphertext,
    CsKeyPair,
    CsPublicKey,
    TwinKeyPair,
    TwinPublicKey,
    ccs_shared,
    cs_decrypt,
    cs_encrypt,
    cs_keygen,
    twin_decrypt,
    twin_encrypt,
    twin_keygen,
)
from .kex import (
    KexMessage,
    KeyConfirmError,
    NikeIdentity,
    NikePublic,
    ProtocolError,
    Role,
    kex_run,
    loopback_run,
    nike_keygen,
    nike_shared_key,
)
from .reduction import (
    CcsInstance,
    ReductionResult,
    make_ccs_instance,
    oracle_leak_demo,
    perfect_adversary,
    probing_adversary,
    random_adversary,
    run_reduction,
)
from .sampling import SeededRng, SubgroupSide, commutes, sample_subgroup
from .trapdoor import (
    DecisionQuery,
    Trapdoor,
    honest_query,
    random_element,
    trapdoor_check,
    trapdoor_from_secrets,
    trapdoor_setup,
    truth_2ccsp,
)

__all__ = [
    "AuthenticationError",
    "BraidWord",
    "CanonicalForm",
    "CcsInstance",
    "Ciphertext",
    "CodecError",
    "CsKeyPair",
    "CsPublicKey",
    "DecisionQuery",
    "GroupParams",
    "KexMessage",
    "KeyConfirmError",
    "NikeIdentity",
    "NikePublic",
    "PermutationBraid",
    "ProtocolError",
    "ReductionResult",
    "Role",
    "SealedBox",
    "SeededRng",
    "StrandMismatchError",
    "SubgroupSide",
    "SymKey",
    "Trapdoor",
    "TwinKeyPair",
    "TwinPublicKey",
    "ccs_shared",
    "commutes",
    "conjugate",
    "cs_decrypt",
    "cs_encrypt",
    "cs_keygen",
    "default_params",
    "delta",
    "equals",
    "hash_elements",
    "honest_query",
    "invert",
    "kex_run",
    "loopback_run",
    "make_ccs_instance",
    "multiply",
    "nf_conjugate",
    "nf_invert",
    "nf_multiply",
    "nike_keygen",
    "nike_shared_key",
    "normal_form",
    "oracle_leak_demo",
    "perfect_adversary",
    "permutation_of",
    "probing_adversary",
    "random_adversary",
    "random_element",
    "run_reduction",
    "sample_subgroup",
    "serialize_canonical",
    "sym_decrypt",
    "sym_encrypt",
    "trapdoor_check",
    "trapdoor_from_secrets",
    "trapdoor_setup",
    "truth_2ccsp",
    "twin_decrypt",
    "twin_encrypt",
    "twin_keygen",
    "word_of",
]
