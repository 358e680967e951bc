import json
import logging

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from sympy import isprime

from .errors import CycleParseError, DegreeCapExceeded, GroupError, ParseError, UnsupportedSpec
from .group import DEFAULT_ORDER_CAP, DEGREE_CAP, FiniteGroup, direct_product, group_from_generators
from .lattice import DEFAULT_LATTICE_CAP, MAX_LATTICE_CAP
from .perm import Permutation, cycle_to_perm, parse_cycles

CYCLIC = "cyclic"
DIHEDRAL = "dihedral"
QUATERNION8 = "quaternion8"
SYMMETRIC = "symmetric"
ALTERNATING = "alternating"
KLEIN4 = "klein4"
SL2_3 = "sl2_3"
FROBENIUS20 = "frobenius20"
PSL2 = "psl2"
PRODUCT = "product"
GENERATORS = "generators"

SIZED_KINDS = [CYCLIC, DIHEDRAL, SYMMETRIC, ALTERNATING, PSL2]
FIXED_KINDS = [QUATERNION8, KLEIN4, SL2_3, FROBENIUS20]
group_kinds = SIZED_KINDS + FIXED_KINDS + [PRODUCT, GENERATORS]

PSL2_MIN_Q = 5
PSL2_MAX_Q = 13

logger = logging.getLogger(__name__)


@dataclass
class GroupSpec:
    """One corpus record: a named construction or explicit generators"""

    name: str
    kind: str
    n: Optional[int] = None
    degree: Optional[int] = None
    generators: List[str] = field(default_factory=list)
    factors: List["GroupSpec"] = field(default_factory=list)


@dataclass
class VerifierConfig:
    lattice_cap: int
    opt_in_lattice_cap: int
    order_cap: int
    workers: int
    chain_max_order: int
    gt_primes: List[int]
    lemma3_t_max: int
    zsigmondy_q_max: int
    zsigmondy_n_max: int


def load_json(filename: str, errors_sink):
    """Read a file and parse json. Returns None in case of errors."""

    if not Path(filename).is_file():
        print(
            f"load_json: required file does not exist: '{filename}'", file=errors_sink)
        return None

    try:
        with open(filename, "r") as f:
            data = json.load(f)

    except json.JSONDecodeError as e:
        print(
            f"load_json: JSONDecodeError from file '{filename}'; {e}", file=errors_sink)
        return None

    return data


def _positive_int(record: Dict[str, Any], key: str, line: Optional[int]) -> int:
    value = record.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ParseError(f"'{key}' must be a positive integer, got {value!r}", line)
    return value


def parse_group_def(record: Any, line: Optional[int] = None) -> GroupSpec:
    """Validate one corpus record and turn it into a GroupSpec"""

    if not isinstance(record, dict):
        raise ParseError(f"expected an object, got {record.__class__.__name__}", line)

    name = record.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError("missing 'name'", line)

    if "generators" in record:
        degree = _positive_int(record, "degree", line)
        gens = record["generators"]
        if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
            raise ParseError(f"{name}: 'generators' must be a list of strings", line)
        try:
            for g in gens:
                parse_cycles(g, degree)
        except CycleParseError as e:
            raise ParseError(f"{name}: {e}", line) from None
        return GroupSpec(name, GENERATORS, degree=degree, generators=list(gens))

    kind = record.get("kind")
    if kind not in group_kinds or kind == GENERATORS:
        raise UnsupportedSpec(f"{name}: unsupported kind {kind!r}")

    if kind == PRODUCT:
        factors = record.get("factors")
        if not isinstance(factors, list) or len(factors) < 2:
            raise ParseError(f"{name}: 'factors' must list at least two groups", line)
        return GroupSpec(name, PRODUCT, factors=[
            parse_group_def(dict(f, name=f.get("name", f"{name}.{i}"))
                            if isinstance(f, dict) else f, line)
            for i, f in enumerate(factors)])

    if kind in FIXED_KINDS:
        return GroupSpec(name, kind)

    n = _positive_int(record, "n", line)
    if kind == DIHEDRAL and n % 2:
        raise UnsupportedSpec(f"{name}: dihedral order {n} is odd")
    if kind == PSL2 and not (isprime(n) and PSL2_MIN_Q <= n <= PSL2_MAX_Q):
        raise UnsupportedSpec(
            f"{name}: psl2 needs a prime q in [{PSL2_MIN_Q}, {PSL2_MAX_Q}], got {n}")
    return GroupSpec(name, kind, n=n)


def _cyclic(n: int) -> List[Permutation]:
    return [cycle_to_perm(list(range(1, n + 1)), n)] if n > 1 else []


def _dihedral(order: int) -> List[Permutation]:
    t = order // 2
    if t == 1:
        return [parse_cycles("(1 2)", 2)]
    if t == 2:
        return [parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)]
    # reflection i -> t + 2 - i fixes point 1
    reflection = Permutation.from_images([1] + [t + 2 - i for i in range(2, t + 1)])
    return _cyclic(t) + [reflection]


def _symmetric(n: int) -> List[Permutation]:
    if n < 2:
        return []
    if n == 2:
        return [parse_cycles("(1 2)", 2)]
    return [parse_cycles("(1 2)", n), cycle_to_perm(list(range(1, n + 1)), n)]


def _alternating(n: int) -> List[Permutation]:
    if n < 3:
        return []
    if n == 3:
        return [parse_cycles("(1 2 3)", 3)]
    long_cycle = list(range(1, n + 1)) if n % 2 else list(range(2, n + 1))
    return [parse_cycles("(1 2 3)", n), cycle_to_perm(long_cycle, n)]


def _sl2_3() -> List[Permutation]:
    """SL(2,3) acting on the 8 nonzero row vectors of F_3^2 by v -> vM"""

    vectors = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    position = {v: i for i, v in enumerate(vectors)}

    def act(m) -> Permutation:
        return Permutation(tuple(
            position[((a * m[0][0] + b * m[1][0]) % 3, (a * m[0][1] + b * m[1][1]) % 3)]
            for a, b in vectors))

    return [act(((1, 1), (0, 1))), act(((0, 2), (1, 0)))]


def _psl2(q: int) -> List[Permutation]:
    """z -> z + 1 and z -> -1/z on the projective line; infinity is point q + 1"""

    infinity = q
    translate = tuple(list((z + 1) % q for z in range(q)) + [infinity])

    invert = [0] * (q + 1)
    invert[0], invert[infinity] = infinity, 0
    for z in range(1, q):
        invert[z] = (-pow(z, -1, q)) % q

    return [Permutation(translate), Permutation(tuple(invert))]


def _degree(gens: List[Permutation]) -> int:
    return max((g.degree for g in gens), default=1)


def build(spec: GroupSpec, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Deterministic permutation group for a GroupSpec"""

    kind = spec.kind
    if kind == PRODUCT:
        group = build(spec.factors[0], order_cap)
        for factor in spec.factors[1:]:
            group = direct_product(group, build(factor, order_cap), order_cap=order_cap)
        group.name = spec.name
        group.spec = spec
        return group

    if kind == GENERATORS:
        degree = spec.degree
        gens = [parse_cycles(g, degree) for g in spec.generators]
    elif kind == CYCLIC:
        gens = _cyclic(spec.n)
    elif kind == DIHEDRAL:
        gens = _dihedral(spec.n)
    elif kind == SYMMETRIC:
        gens = _symmetric(spec.n)
    elif kind == ALTERNATING:
        gens = _alternating(spec.n)
    elif kind == PSL2:
        gens = _psl2(spec.n)
    elif kind == QUATERNION8:
        gens = [parse_cycles("(1 2 3 4)(5 6 7 8)", 8), parse_cycles("(1 5 3 7)(2 8 4 6)", 8)]
    elif kind == KLEIN4:
        gens = [parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)]
    elif kind == SL2_3:
        gens = _sl2_3()
    elif kind == FROBENIUS20:
        gens = [parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(2 3 5 4)", 5)]
    else:
        raise UnsupportedSpec(f"{spec.name}: unsupported kind {kind!r}")

    if kind != GENERATORS:
        degree = _degree(gens)
    if degree > DEGREE_CAP:
        raise DegreeCapExceeded(f"{spec.name}: degree {degree} exceeds {DEGREE_CAP}")

    group = group_from_generators(gens, degree, order_cap=order_cap, name=spec.name)
    group.spec = spec
    logger.debug(f"built {spec.name}: order {group.order}, degree {degree}")
    return group


def load_corpus(filename: str, errors_sink,
                order_cap: int = DEFAULT_ORDER_CAP) -> Optional[List[FiniteGroup]]:
    """Load a JSON Lines corpus: one group record per line, '#' starts a comment line.

    Bad records are reported to errors_sink and skipped; a missing file gives None.
    """

    if not Path(filename).is_file():
        print(
            f"load_corpus: required file does not exist: '{filename}'", file=errors_sink)
        return None

    groups: List[FiniteGroup] = []
    names = set()

    with open(filename, "r", encoding="utf-8") as f:
        for line_no, text in enumerate(f, start=1):
            text = text.strip()
            if not text or text.startswith("#"):
                continue

            try:
                try:
                    record = json.loads(text)
                except json.JSONDecodeError as e:
                    raise ParseError(f"JSONDecodeError; {e}", line_no) from None

                spec = parse_group_def(record, line_no)
                if spec.name in names:
                    raise ParseError(f"duplicate group name '{spec.name}'", line_no)

                group = build(spec, order_cap)

            except ParseError as e:
                print(f"load_corpus: {e}", file=errors_sink)
                continue
            except GroupError as e:
                print(f"load_corpus: line {line_no}: {e}", file=errors_sink)
                continue

            names.add(spec.name)
            groups.append(group)

    return groups


def find_group(groups: List[FiniteGroup], name: str) -> Optional[FiniteGroup]:
    for group in groups:
        if group.name == name:
            return group
    return None


def load_config(filename: str, errors_sink) -> Optional[VerifierConfig]:
    """Loading verifier parameters from json into VerifierConfig class"""

    config = load_json(filename, errors_sink)
    if config == None:
        return None

    try:
        cfg = VerifierConfig(**config)

        if cfg.opt_in_lattice_cap > MAX_LATTICE_CAP or cfg.lattice_cap > cfg.opt_in_lattice_cap:
            print(
                f"load_config: lattice caps must satisfy lattice_cap <= opt_in_lattice_cap <= "
                f"{MAX_LATTICE_CAP}; got {cfg.lattice_cap}, {cfg.opt_in_lattice_cap}",
                file=errors_sink)
            return None

        if cfg.workers < 1 or not all(isprime(p) for p in cfg.gt_primes):
            print(
                f"load_config: workers must be positive and gt_primes prime; "
                f"got {cfg.workers}, {cfg.gt_primes}", file=errors_sink)
            return None

    except Exception as e:
        print(
            f"load_config: Can't convert json data into {VerifierConfig}: {e}", file=errors_sink)
        return None

    return cfg


def default_config() -> VerifierConfig:
    return VerifierConfig(
        lattice_cap=DEFAULT_LATTICE_CAP,
        opt_in_lattice_cap=MAX_LATTICE_CAP,
        order_cap=DEFAULT_ORDER_CAP,
        workers=4,
        chain_max_order=60,
        gt_primes=[3, 5, 7],
        lemma3_t_max=60,
        zsigmondy_q_max=10,
        zsigmondy_n_max=12,
    )
