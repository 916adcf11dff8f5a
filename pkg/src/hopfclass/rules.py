"""Fixed catalogue of inference rules and the proof traces built from them.

Rules imported from the literature are axioms: they appear in traces with
their source but are never computed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

RULES: dict[str, str] = {
    # arithmetic / counting
    "nichols-zoeller": "Nichols-Zoeller: dim of a Hopf subalgebra divides dim H; |G(H*)| divides dim H",
    "frobenius-type": "Frobenius type for dim p^m q^n: simple-module dimensions divide dim H, so deg in {1, p, p^2, q}",
    "nontrivial-grouplike": "dim p^m q^n has a non-trivial 1-dimensional representation: |G(H*)| != 1",
    "dimension-equation": "dim H = |G(H*)| + sum over degrees d>1 of n_d d^2",
    "empty-enumeration": "dimension equation has no nonnegative solution under the stated pins",
    "no-solution": "dim H = offset + c q^2 has no nonnegative integer solution c",
    "grouplike-count-bound": "|G(H*)| divides n (deg chi)^2, n = number of simple modules of degree deg chi",
    "p-part-quotient": "characters of degree 1, p, p^2 span a *-invariant standard subalgebra; its quotient dimension divides dim H",
    "stabilizer-divides-degsq": "|G[chi]| divides (deg chi)^2",
    "degree-residual": "chi chi^* = sum_{g in G[chi]} g + higher-degree terms; residual (deg chi)^2 - |G[chi]| must be a sum of degrees > 1",
    "nonprime-power-unit": "p^k = 1 + m p has no integer solution for k >= 1",
    # fusion rules (Nichols relations)
    "frobenius-reciprocity": "m(chi, psi omega) = m(psi^*, omega chi^*) = m(psi, chi omega^*)",
    "duality": "m(chi, psi) = m(chi^*, psi^*)",
    "grouplike-multiplicity": "m(g, chi psi) = 1 if psi = chi^* g and 0 otherwise",
    "grouplike-equivariance": "(g chi) psi = g (chi psi) and chi (psi g) = (chi psi) g",
    "degree-accounting": "sum_omega m(omega, chi psi) deg omega = deg chi deg psi",
    "standard-subalgebra-closure": "*-invariant standard subalgebras of R(H) correspond to quotient Hopf algebras, whose dimension divides dim H",
    "orbit-lengths": "an abelian G(H*) acts on X_t by left multiplication with orbit lengths dividing |G(H*)|",
    "fusion-infeasible": "exhaustive fusion search: no table satisfies the character-algebra relations",
    "fusion-feasible": "fusion search found a table satisfying the character-algebra relations",
    # cited structural results
    "lower-semisolvable-pq2": "a Hopf subalgebra of dimension p q^2 (index p, smallest prime) is normal (Kobayashi); quotients of dimension p are trivial (Zhu); hence lower semisolvable",
    "upper-from-quotient-pq2": "a quotient Hopf algebra of dimension p q^2 gives a Hopf subalgebra of H* of dimension p q^2, so H* is lower and H is upper semisolvable",
    "masuoka-p2": "semisimple Hopf algebras of dimension p^2 are group algebras (Masuoka)",
    "central-grouplikes": "G(H*) fixes every chi_q, so G(H*) is normal in the Hopf subalgebra generated by the q^2-dimensional simple subcoalgebras (Natale); H is upper semisolvable",
    "biproduct-gcd": "gcd(|G(H)|, |G(H*)|) = p^2 implies H = R # kG with |G| = p^2 and dim R = q^2",
    "biproduct-or-semisolvable": "|G(H*)| in {p^2, p^2 q}: H is semisolvable or a biproduct R # kG, |G| = p^2, dim R = q^2",
    "coideal-obstruction": "in a biproduct, dim H^{coq} = q^2 forces q^2 = 1 + m p or q^2 = q + n p",
    "dual-group-algebra": "|G(H*)| = dim H implies H is a dual group algebra",
    "dim36-cited": "semisimple Hopf algebras of dimension 36 are upper or lower semisolvable (Natale)",
    "verdict": "case conclusion assembled from the preceding steps",
}


class UnknownRule(KeyError):
    pass


def citation(rule: str) -> str:
    try:
        return RULES[rule]
    except KeyError:
        raise UnknownRule(rule) from None


def digest(data) -> str:
    blob = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class ProofStep:
    rule: str
    detail: str
    conclusion: str
    data: dict = field(default_factory=dict, compare=False, hash=False)
    citation: str = ""

    def __post_init__(self) -> None:
        expected = citation(self.rule)
        if not self.citation:
            object.__setattr__(self, "citation", expected)

    @property
    def inputs_digest(self) -> str:
        return digest(self.data)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "citation": self.citation,
            "detail": self.detail,
            "conclusion": self.conclusion,
            "inputs": self.data,
            "digest": self.inputs_digest,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ProofStep":
        return cls(obj["rule"], obj["detail"], obj["conclusion"], obj["inputs"], obj["citation"])


class ProofTrace(list):
    """Ordered proof steps; only catalogued rule ids are accepted."""

    def add(self, rule: str, detail: str, conclusion: str = "", **data) -> ProofStep:
        step = ProofStep(rule, detail, conclusion, data)
        self.append(step)
        return step

    def to_json(self) -> list:
        return [s.to_json() for s in self]

    @classmethod
    def from_json(cls, steps: list) -> "ProofTrace":
        return cls(ProofStep.from_json(s) for s in steps)
