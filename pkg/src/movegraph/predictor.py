"""Closed-form cycle spectrum of the sub-add move graph modulo an odd prime p.

With t = ord(-4 mod p) the matrix has order k = 4t, since M^4 = -4 I. Its
eigenvalues are 1 + i and 1 - i. A vertex off the eigenvector line of the
smaller-order eigenvalue lies on a cycle of length k ("primary"); nonzero
vertices on that line lie on cycles of length s = ord(1 - i), which are
"secondary" whenever s < k.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import asdict, dataclass

from .algebra import Gf2Element, check_odd_prime, gf2_order, gf2_pow, mult_order, odd_primes, sqrt_minus_one
from .errors import InvariantError
from .graph import build, decompose, weak_components
from .subadd import SUBADD_ROWS

CASES = ("t_even", "t1_i", "t3_i", "t1_negi", "t3_negi", "p3mod4")

SURVEY_HEADER = (
    "p", "p_mod_8", "t", "k", "s", "secondary_exists",
    "secondary_length", "secondary_count", "primary_count",
)


class Mod8Verdict(str, enum.Enum):
    NONE_GUARANTEED = "none_guaranteed"
    EXISTS_GUARANTEED = "exists_guaranteed"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class PrimePrediction:
    p: int
    t: int
    k: int
    i_root: int | None
    s: int
    case_label: str
    secondary_exists: bool
    secondary_length: int | None
    primary_count: int
    secondary_count: int | None
    fixed_points: int = 1

    def spectrum(self) -> dict[int, int]:
        """Implied cycle spectrum; coincident lengths have their counts summed."""
        counts: dict[int, int] = {1: self.fixed_points}
        if self.secondary_exists:
            counts[self.s] = counts.get(self.s, 0) + self.secondary_count
        counts[self.k] = counts.get(self.k, 0) + self.primary_count
        return dict(sorted(counts.items()))

    def to_dict(self) -> dict:
        return asdict(self)


# secondary length as a multiple of t, keyed by (t mod 4, (1+i)^t == i)
_SECONDARY_FACTOR = {(1, True): 1, (3, True): 2, (1, False): 2, (3, False): 1}


def predict(p: int) -> PrimePrediction:
    check_odd_prime(p)
    t = mult_order(-4, p)
    k = 4 * t

    root = sqrt_minus_one(p)
    if root is None:
        # i lives in GF(p^2); 1 - w and 1 + w are conjugate, so equal order
        s = gf2_order(Gf2Element.of(1, -1, p))
        if s != k or gf2_order(Gf2Element.of(1, 1, p)) != k:
            raise InvariantError(f"conjugate eigenvalues mod {p} must both have order {k}")
        case, secondary = "p3mod4", None
    else:
        plus = gf2_order(Gf2Element.of(1 + root, 0, p))
        minus = gf2_order(Gf2Element.of(1 - root, 0, p))
        if max(plus, minus) != k:
            raise InvariantError(f"larger eigenvalue order {max(plus, minus)} != {k} mod {p}")
        # label the roots so that ord(1 + i) = k >= ord(1 - i) = s
        i = root if plus >= minus else p - root
        s = min(plus, minus)
        if t % 2 == 0:
            case, secondary = "t_even", None
        else:
            lifted = gf2_pow(Gf2Element.of(1 + i, 0, p), t).a
            if lifted not in (i, p - i):
                raise InvariantError(f"(1+i)^t is not +-i mod {p}")
            is_i = lifted == i
            case = f"t{t % 4}_{'i' if is_i else 'negi'}"
            secondary = _SECONDARY_FACTOR[(t % 4, is_i)] * t

    exists = s != k
    if (secondary is not None) != exists or (exists and secondary != s):
        raise InvariantError(f"case {case} disagrees with s = {s}, k = {k} at p = {p}")
    if exists:
        secondary_count = (p - 1) // s
        primary_count = (p * p - p) // k
    else:
        secondary_count = None
        primary_count = (p * p - 1) // k
    return PrimePrediction(
        p=p, t=t, k=k, i_root=root, s=s, case_label=case,
        secondary_exists=exists, secondary_length=s if exists else None,
        primary_count=primary_count, secondary_count=secondary_count,
    )


def enumerated_spectrum(p: int, *, budget: int | None = None) -> dict[int, int]:
    return decompose(build(SUBADD_ROWS, p, budget=budget)).spectrum


def verify_prediction(p: int, *, budget: int | None = None) -> bool:
    return predict(p).spectrum() == enumerated_spectrum(p, budget=budget)


def mod8_criterion(p: int) -> Mod8Verdict:
    check_odd_prime(p)
    residue = p % 8
    if residue in (3, 7):
        return Mod8Verdict.NONE_GUARANTEED
    if residue == 5:
        return Mod8Verdict.EXISTS_GUARANTEED
    return Mod8Verdict.UNDETERMINED


@dataclass(frozen=True)
class SurveyRow:
    prediction: PrimePrediction
    criterion: Mod8Verdict

    @property
    def p(self) -> int:
        return self.prediction.p

    def csv_fields(self) -> list:
        pr = self.prediction
        return [
            pr.p, pr.p % 8, pr.t, pr.k, pr.s, str(pr.secondary_exists).lower(),
            "" if pr.secondary_length is None else pr.secondary_length,
            "" if pr.secondary_count is None else pr.secondary_count,
            pr.primary_count,
        ]


def survey(p_max: int) -> list[SurveyRow]:
    """One row per odd prime p <= p_max, in increasing p.

    secondary_exists always comes from comparing s with k; the mod-8 verdict
    is carried alongside and is ``undetermined`` for p = 1 (mod 8).
    """
    return [SurveyRow(predict(p), mod8_criterion(p)) for p in odd_primes(p_max)]


def survey_csv(rows: list[SurveyRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SURVEY_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


def oeis_terms(n_max: int, *, budget: int | None = None) -> list[int]:
    """Weakly connected component counts of the sub-add graph for n = 1..n_max.

    n = 1 gives 1 by convention (a single vertex with a loop).
    """
    terms = []
    for n in range(1, n_max + 1):
        if n == 1:
            terms.append(1)
            continue
        count, _ = weak_components(build(SUBADD_ROWS, n, budget=budget))
        terms.append(count)
    return terms
