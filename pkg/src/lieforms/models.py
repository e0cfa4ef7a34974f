"""Lie-algebra models with contact / locally-conformally-Kahler decorations.

A model is a Lie algebra given by structure constants on an orthonormal
coframe; its invariant-forms complex is the finite stand-in for the
manifold, with the invariant differential determined by
d theta^k (e_i, e_j) = -c^k_{ij}.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations

from .forms import FormElement, contract, inner_product, monomial_basis, wedge
from .matrices import Matrix
from .operators import (
    EVEN,
    GradedOperator,
    ODD,
    contraction_operator,
    extend_derivation,
    supercommutator,
    wedge_operator,
)
from .scalars import I, ONE, Scalar, ZERO


class ModelError(Exception):
    """Base class for model construction failures."""


class ModelSyntaxError(ModelError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class AntisymmetryError(ModelError):
    pass


class JacobiError(ModelError):
    def __init__(self, triple, message: str):
        super().__init__(message)
        self.triple = triple


class StructureError(ModelError):
    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


@dataclass(frozen=True)
class LieModel:
    """Structure constants c^k_{ij} (stored for i<j) on an orthonormal coframe."""

    name: str
    dim: int
    brackets: tuple[tuple[int, int, int, Scalar], ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.brackets, key=lambda b: b[:3]))
        object.__setattr__(self, "brackets", ordered)
        for (i, j, k, c) in ordered:
            if not (1 <= i < j <= self.dim and 1 <= k <= self.dim):
                raise ModelError(f"bad bracket entry ({i},{j})->{k}")
            if c.is_zero():
                raise ModelError(f"explicit zero bracket entry ({i},{j})->{k}")

    def c(self, i: int, j: int, k: int) -> Scalar:
        if i == j:
            return ZERO
        sign = ONE
        if i > j:
            i, j, sign = j, i, -ONE
        for (a, b, m, val) in self.brackets:
            if (a, b, m) == (i, j, k):
                return val * sign
        return ZERO

    def bracket(self, i: int, j: int) -> dict[int, Scalar]:
        return {k: self.c(i, j, k) for k in range(1, self.dim + 1) if self.c(i, j, k)}

    def jacobi_defect(self):
        """First (i,j,k,l) where the Jacobi identity fails, or None."""
        n = self.dim
        for i, j, k in combinations(range(1, n + 1), 3):
            for l in range(1, n + 1):
                acc = ZERO
                for m in range(1, n + 1):
                    acc = acc + self.c(j, k, m) * self.c(i, m, l)
                    acc = acc + self.c(k, i, m) * self.c(j, m, l)
                    acc = acc + self.c(i, j, m) * self.c(k, m, l)
                if not acc.is_zero():
                    return (i, j, k, l)
        return None


@dataclass(frozen=True)
class StructurePack:
    """Contact / Vaisman decorations carried alongside a model.

    j_pairs lists J(e_a) = e_b; for vaisman kind this includes the
    (lee, reeb) pair, which W and the bigrading ignore.
    """

    kind: str  # "kahler" | "sasakian" | "vaisman"
    reeb_index: int | None
    eta: FormElement | None
    omega0: FormElement
    j_pairs: tuple[tuple[int, int], ...]
    lee_index: int | None = None
    theta: FormElement | None = None
    omega: FormElement | None = None
    phi: FormElement | None = None

    @property
    def vertical_indices(self) -> tuple[int, ...]:
        """Vertical coframe for the pack's canonical foliation."""
        if self.kind == "kahler":
            return ()
        if self.kind == "sasakian":
            return (self.reeb_index,)
        return tuple(sorted((self.lee_index, self.reeb_index)))

    def horizontal_indices(self, ngen: int) -> tuple[int, ...]:
        vert = set(self.vertical_indices)
        return tuple(k for k in range(1, ngen + 1) if k not in vert)

    def transversal_pairs(self) -> tuple[tuple[int, int], ...]:
        vert = set(self.vertical_indices)
        return tuple(p for p in self.j_pairs if not (set(p) & vert))

    def transversal_dim(self, ngen: int) -> int:
        """Complex dimension of the transversal Kahler geometry."""
        return len(self.horizontal_indices(ngen)) // 2


@functools.lru_cache(maxsize=None)
def ce_differential(model: LieModel) -> GradedOperator:
    """Invariant differential from the structure constants.

    Jacobi is checked first (it is equivalent to d^2 = 0, and both are
    asserted independently).
    """
    defect = model.jacobi_defect()
    if defect is not None:
        raise JacobiError(defect, f"Jacobi identity fails on triple {defect[:3]} (component {defect[3]})")
    n = model.dim
    action = {}
    for k in range(1, n + 1):
        val = FormElement.zero(n)
        for i, j in combinations(range(1, n + 1), 2):
            c = model.c(i, j, k)
            if not c.is_zero():
                val = val + FormElement.monomial(n, (i, j), -c)
        action[k] = val
    d = extend_derivation(n, ODD, action, label="d", shift=1)
    if not (d @ d).is_zero():
        raise JacobiError(None, "d^2 != 0 despite Jacobi holding; inconsistent constants")
    return d


# -- built-in models ---------------------------------------------------


def _mono(n, *ix):
    return FormElement.monomial(n, ix)


def _build_pack(model: LieModel, kind: str, reeb: int | None, j_pairs,
                lee: int | None = None) -> StructurePack:
    n = model.dim
    if kind == "kahler":
        omega0 = FormElement.zero(n)
        for a, b in j_pairs:
            omega0 = omega0 + _mono(n, a, b)
        pack = StructurePack(kind, None, None, omega0, tuple(j_pairs),
                             phi=FormElement.unit(n))
    else:
        d = ce_differential(model)
        eta = _mono(n, reeb)
        omega0 = d.apply(eta)
        if kind == "sasakian":
            pack = StructurePack(kind, reeb, eta, omega0, tuple(j_pairs), phi=eta)
        else:
            theta = _mono(n, lee)
            omega = omega0 + wedge(theta, eta)
            pack = StructurePack(kind, reeb, eta, omega0, tuple(j_pairs),
                                 lee_index=lee, theta=theta, omega=omega,
                                 phi=wedge(theta, eta))
    validate_pack(model, pack)
    return pack


def validate_pack(model: LieModel, pack: StructurePack):
    """Assert every pack invariant exactly; raise StructureError otherwise."""
    n = model.dim
    d = ce_differential(model)

    used = [k for p in pack.j_pairs for k in p]
    if len(used) != len(set(used)):
        raise StructureError("J", f"J pairs overlap: {pack.j_pairs}")

    expected_omega0 = FormElement.zero(n)
    for a, b in pack.transversal_pairs():
        if a >= b:
            raise StructureError("J", f"pair {a}->{b} not increasing")
        expected_omega0 = expected_omega0 + _mono(n, a, b)

    if pack.kind == "kahler":
        if n % 2:
            raise StructureError("J", "kahler kind needs even dimension")
        if set(used) != set(range(1, n + 1)):
            raise StructureError("J", "J pairs must cover every generator")
        if not d.apply(pack.omega0).is_zero():
            raise StructureError("deta", "fundamental form is not closed")
        if pack.omega0 != expected_omega0:
            raise StructureError("deta", "fundamental form incompatible with J pairs")
        return

    r = pack.reeb_index
    if not 1 <= r <= n:
        raise StructureError("reeb", f"reeb index {r} out of range")
    if contract(r, pack.eta) != FormElement.unit(n):
        raise StructureError("contact", "i_r eta != 1")
    if not contract(r, d.apply(pack.eta)).is_zero():
        raise StructureError("contact", "i_r d eta != 0")
    if d.apply(pack.eta) != pack.omega0:
        raise StructureError("deta", "omega0 is not d(eta)")
    if pack.omega0 != expected_omega0:
        raise StructureError(
            "deta", f"d(eta) = {pack.omega0} incompatible with J pairs {pack.j_pairs}"
        )
    hor = pack.horizontal_indices(n)
    if set(k for p in pack.transversal_pairs() for k in p) != set(hor):
        raise StructureError("J", "J pairs must cover the horizontal coframe")

    if pack.kind == "vaisman":
        lee = pack.lee_index
        if lee is None or not 1 <= lee <= n or lee == r:
            raise StructureError("lee", f"bad lee index {lee}")
        if (lee, r) not in pack.j_pairs and (r, lee) not in pack.j_pairs:
            raise StructureError("J", "vaisman J must pair the lee and reeb directions")
        theta = pack.theta
        if not d.apply(theta).is_zero():
            raise StructureError("vaisman", "lee form is not closed")
        if inner_product(theta, theta) != ONE:
            raise StructureError("vaisman", "|theta| != 1")
        # d(I theta) = omega - theta ^ (I theta), with I theta = eta
        lhs = d.apply(pack.eta)
        rhs = pack.omega - wedge(theta, pack.eta)
        if lhs != rhs:
            raise StructureError("vaisman", "structure equation d(I theta) = omega - theta^(I theta) fails")
        if pack.omega != pack.omega0 + wedge(theta, pack.eta):
            raise StructureError("vaisman", "omega != omega0 + theta^eta")

    # leafwise volume: d(phi) must have no component of top vertical degree
    vert = pack.vertical_indices
    rank = len(vert)
    dphi = d.apply(pack.phi)
    top = _vertical_component(dphi, vert, rank)
    if not top.is_zero():
        raise StructureError("phi", "d(phi) has a top vertical-degree component")


def _vertical_component(a: FormElement, vert: tuple[int, ...], v: int) -> FormElement:
    terms = {m: c for m, c in a.terms.items() if sum(1 for k in m if k in vert) == v}
    return FormElement(a.ngen, terms)


def builtin_models() -> list[tuple[LieModel, StructurePack]]:
    """The seven shipped models, packs validated on construction."""
    out = []
    for name in BUILTIN_NAMES:
        out.append(builtin(name))
    return out


def builtin(name: str) -> tuple[LieModel, StructurePack]:
    try:
        data = _BUILTINS[name]
    except KeyError:
        raise ModelError(f"unknown builtin model {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    model = LieModel(name, data["dim"],
                     tuple((i, j, k, Scalar(Fraction(v))) for (i, j, k, v) in data["brackets"]))
    pack = _build_pack(model, data["kind"], data.get("reeb"), data["j"], data.get("lee"))
    return model, pack


_BUILTINS = {
    "torus2": {"dim": 2, "brackets": [], "kind": "kahler", "j": [(1, 2)]},
    "torus4": {"dim": 4, "brackets": [], "kind": "kahler", "j": [(1, 2), (3, 4)]},
    "su2": {
        "dim": 3,
        "brackets": [(1, 2, 3, -1), (2, 3, 1, -1), (1, 3, 2, 1)],
        "kind": "sasakian", "reeb": 3, "j": [(1, 2)],
    },
    "h3": {
        "dim": 3,
        "brackets": [(1, 2, 3, -1)],
        "kind": "sasakian", "reeb": 3, "j": [(1, 2)],
    },
    "h5": {
        "dim": 5,
        "brackets": [(1, 2, 5, -1), (3, 4, 5, -1)],
        "kind": "sasakian", "reeb": 5, "j": [(1, 2), (3, 4)],
    },
    "su2xr": {
        "dim": 4,
        "brackets": [(2, 3, 4, -1), (3, 4, 2, -1), (2, 4, 3, 1)],
        "kind": "vaisman", "reeb": 4, "lee": 1, "j": [(2, 3), (1, 4)],
    },
    "h3xr": {
        "dim": 4,
        "brackets": [(2, 3, 4, -1)],
        "kind": "vaisman", "reeb": 4, "lee": 1, "j": [(2, 3), (1, 4)],
    },
}

BUILTIN_NAMES = tuple(_BUILTINS)


# -- model file parsing ------------------------------------------------


def parse_model(text: str, name: str = "file") -> tuple[LieModel, StructurePack]:
    """Parse the line-oriented .alg format; every pack invariant asserted.

    Sections: [algebra] with dim = N; [brackets] with lines
    `i j -> k : a/b`; [structure] with kind/reeb/lee assignments and
    `J: i -> j` lines.  Comments start with #; numbers are rationals.
    """
    dim = None
    brackets: dict[tuple[int, int, int], tuple[Scalar, int]] = {}
    kind = None
    reeb = None
    lee = None
    j_pairs: list[tuple[int, int]] = []
    section = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("algebra", "brackets", "structure"):
                raise ModelSyntaxError(line_no, f"unknown section [{section}]")
            continue
        if section == "algebra":
            key, _, value = line.partition("=")
            if key.strip() != "dim" or not value:
                raise ModelSyntaxError(line_no, f"expected `dim = N`, got {line!r}")
            try:
                dim = int(value.strip())
            except ValueError:
                raise ModelSyntaxError(line_no, f"bad dimension {value.strip()!r}")
            if dim < 1:
                raise ModelSyntaxError(line_no, "dimension must be positive")
        elif section == "brackets":
            try:
                left, coeff_text = line.split(":")
                pair, target = left.split("->")
                i_text, j_text = pair.split()
                i, j, k = int(i_text), int(j_text), int(target)
                coeff = Scalar(Fraction(coeff_text.strip()))
            except (ValueError, ZeroDivisionError):
                raise ModelSyntaxError(line_no, f"expected `i j -> k : a/b`, got {line!r}")
            if dim is None:
                raise ModelSyntaxError(line_no, "[brackets] before [algebra]")
            if not all(1 <= x <= dim for x in (i, j, k)):
                raise ModelSyntaxError(line_no, f"index out of range 1..{dim}")
            if i == j:
                raise AntisymmetryError(f"line {line_no}: bracket [e_{i},e_{i}] must vanish")
            key = (min(i, j), max(i, j), k)
            val = coeff if i < j else -coeff
            if key in brackets:
                prev, prev_line = brackets[key]
                if prev != val:
                    raise AntisymmetryError(
                        f"line {line_no}: c^{k}_{{{i}{j}}} contradicts line {prev_line} "
                        "(antisymmetry or duplicate)"
                    )
            brackets[key] = (val, line_no)
        elif section == "structure":
            if line.lower().startswith("j:"):
                try:
                    a_text, b_text = line[2:].split("->")
                    a, b = int(a_text), int(b_text)
                except ValueError:
                    raise ModelSyntaxError(line_no, f"expected `J: i -> j`, got {line!r}")
                j_pairs.append((a, b))
                continue
            key, _, value = line.partition("=")
            key, value = key.strip().lower(), value.strip()
            if not value:
                raise ModelSyntaxError(line_no, f"expected `key = value`, got {line!r}")
            if key == "kind":
                if value not in ("kahler", "sasakian", "vaisman"):
                    raise ModelSyntaxError(line_no, f"unknown kind {value!r}")
                kind = value
            elif key == "reeb":
                reeb = int(value)
            elif key == "lee":
                lee = int(value)
            else:
                raise ModelSyntaxError(line_no, f"unknown structure key {key!r}")
        else:
            raise ModelSyntaxError(line_no, f"content outside any section: {line!r}")

    if dim is None:
        raise ModelSyntaxError(0, "missing [algebra] section with dim")
    if kind is None:
        raise ModelSyntaxError(0, "missing [structure] kind")
    if kind in ("sasakian", "vaisman") and reeb is None:
        raise ModelSyntaxError(0, f"kind {kind} needs a reeb index")
    if kind == "vaisman" and lee is None:
        raise ModelSyntaxError(0, "kind vaisman needs a lee index")

    model = LieModel(name, dim, tuple((i, j, k, v) for (i, j, k), (v, _) in sorted(brackets.items())))

    if not j_pairs:
        j_pairs = _default_j_pairs(dim, kind, reeb, lee)
    elif kind == "vaisman" and not any(set(p) == {lee, reeb} for p in j_pairs):
        j_pairs = list(j_pairs) + [(min(lee, reeb), max(lee, reeb))]
    j_pairs = [tuple(sorted(p)) for p in j_pairs]

    pack = _build_pack(model, kind, reeb, j_pairs, lee)
    return model, pack


def _default_j_pairs(dim, kind, reeb, lee):
    skip = set()
    pairs = []
    if kind == "vaisman":
        skip = {reeb, lee}
        pairs.append((min(lee, reeb), max(lee, reeb)))
    elif kind == "sasakian":
        skip = {reeb}
    free = [k for k in range(1, dim + 1) if k not in skip]
    if len(free) % 2:
        raise StructureError("J", "odd number of horizontal generators")
    for t in range(0, len(free), 2):
        pairs.append((free[t], free[t + 1]))
    return pairs


def load_model_file(path: str) -> tuple[LieModel, StructurePack]:
    with open(path, "r", encoding="ascii") as fh:
        try:
            text = fh.read()
        except UnicodeDecodeError as exc:
            raise ModelSyntaxError(0, f"model files are ASCII: {exc}") from exc
    return parse_model(text, name=path)


def builtin_file_text(name: str) -> str:
    """The shipped .alg source for a builtin model."""
    return resources.files("lieforms.data").joinpath(f"{name}.alg").read_text()


# -- structure operators ----------------------------------------------


@dataclass(frozen=True)
class StructureOperators:
    """Every named operator of the pack's canonical foliation."""

    d: GradedOperator
    e_r: GradedOperator | None
    i_r: GradedOperator | None
    lie_r: GradedOperator | None
    L: GradedOperator
    Lam: GradedOperator
    H: GradedOperator
    W: GradedOperator
    I_aut: GradedOperator
    I_inv: GradedOperator
    pi_hor: GradedOperator
    pi_bidegree: dict[tuple[int, int], GradedOperator]
    pi_pq: dict[tuple[int, int, int], GradedOperator]
    n_trans: int
    vertical: tuple[int, ...]
    horizontal: tuple[int, ...]
    e_theta: GradedOperator | None = None
    i_theta: GradedOperator | None = None
    lie_theta: GradedOperator | None = None

    @property
    def delta(self) -> GradedOperator:
        return supercommutator(self.d, self.d.adjoint().relabel("d*")).relabel("Delta")


def bidegree_projectors(ngen: int, vertical: tuple[int, ...]):
    """Diagonal projectors onto horizontal-degree h, vertical-degree v."""
    vert = set(vertical)
    out: dict[tuple[int, int], GradedOperator] = {}
    nh = ngen - len(vert)
    for h in range(nh + 1):
        for v in range(len(vert) + 1):
            def act(x, h=h, v=v):
                m = next(iter(x.terms))
                mv = sum(1 for k in m if k in vert)
                if (len(m) - mv, mv) == (h, v):
                    return x
                return FormElement.zero(ngen)
            out[(h, v)] = GradedOperator.from_action(ngen, 0, EVEN, act, f"Pi[{h},{v}]")
    return out


@functools.lru_cache(maxsize=None)
def structure_operators(model: LieModel, pack: StructurePack) -> StructureOperators:
    n = model.dim
    d = ce_differential(model)
    vertical = pack.vertical_indices
    horizontal = pack.horizontal_indices(n)
    n_trans = pack.transversal_dim(n)

    e_r = i_r = lie_r = None
    if pack.reeb_index is not None:
        e_r = wedge_operator(pack.eta, "e_r")
        i_r = contraction_operator(n, pack.reeb_index, "i_r")
        lie_r = supercommutator(d, i_r).relabel("Lie_r")

    L = wedge_operator(pack.omega0, "L")
    Lam = L.adjoint().relabel("Lam")
    H = supercommutator(L, Lam).relabel("H")

    # W: even derivation extension of the transversal rotation
    action = {k: FormElement.zero(n) for k in range(1, n + 1)}
    for a, b in pack.transversal_pairs():
        action[a] = FormElement.generator(n, b)
        action[b] = FormElement.generator(n, a).scale(Scalar.of(-1))
    W = extend_derivation(n, EVEN, action, label="W", shift=0)

    pi_bi = bidegree_projectors(n, vertical)
    pi_pq = _pq_projectors(n, W, vertical, n_trans)

    # exhaustiveness and orthogonality of the bigrading
    total = GradedOperator.zero(n, 0, EVEN)
    for p in pi_pq.values():
        total = total + p
    if total != GradedOperator.identity(n):
        raise StructureError("J", "bigrading projectors do not resolve the identity")

    I_aut = GradedOperator.zero(n, 0, EVEN)
    I_inv = GradedOperator.zero(n, 0, EVEN)
    for (p, q, v), proj in pi_pq.items():
        I_aut = I_aut + proj.scale(_i_power(p - q)).relabel(I_aut.label)
        I_inv = I_inv + proj.scale(_i_power(q - p)).relabel(I_inv.label)
    I_aut = I_aut.relabel("I")
    I_inv = I_inv.relabel("I^-1")

    pi_hor = GradedOperator.zero(n, 0, EVEN)
    nh = len(horizontal)
    for h in range(nh + 1):
        pi_hor = pi_hor + pi_bi[(h, 0)]
    pi_hor = pi_hor.relabel("Pi_hor")

    e_theta = i_theta = lie_theta = None
    if pack.kind == "vaisman":
        e_theta = wedge_operator(pack.theta, "e_th")
        i_theta = contraction_operator(n, pack.lee_index, "i_th")
        lie_theta = supercommutator(d, i_theta).relabel("Lie_th")

    return StructureOperators(
        d=d, e_r=e_r, i_r=i_r, lie_r=lie_r, L=L, Lam=Lam, H=H, W=W, I_aut=I_aut,
        I_inv=I_inv, pi_hor=pi_hor, pi_bidegree=pi_bi, pi_pq=pi_pq, n_trans=n_trans,
        vertical=vertical, horizontal=horizontal,
        e_theta=e_theta, i_theta=i_theta, lie_theta=lie_theta,
    )


def _i_power(s: int) -> Scalar:
    return [ONE, I, -ONE, -I][s % 4]


def _pq_projectors(ngen, W, vertical, n_trans):
    """Pi^{p,q} on each (h,v) block by Lagrange interpolation in W.

    W acts on the (p,q) part of horizontal degree h = p+q as i(p-q); the
    candidate eigenvalue set is finite, so the spectral projector is an
    explicit polynomial in W.  Exhaustiveness is asserted by the caller.
    """
    vert = set(vertical)
    out: dict[tuple[int, int, int], GradedOperator] = {}
    for k in range(ngen + 1):
        basis = monomial_basis(ngen, k)
        groups: dict[tuple[int, int], list[int]] = {}
        for idx, m in enumerate(basis):
            mv = sum(1 for t in m if t in vert)
            groups.setdefault((len(m) - mv, mv), []).append(idx)
        for (h, v), positions in groups.items():
            sub = Matrix(
                [[W.blocks[k].rows[i][j] for j in positions] for i in positions],
                len(positions),
            )
            ps = range(max(0, h - n_trans), min(h, n_trans) + 1)
            svals = [2 * p - h for p in ps]
            for p in ps:
                s = 2 * p - h
                proj = Matrix.identity(len(positions))
                for t in svals:
                    if t == s:
                        continue
                    # (W - i t) / (i s - i t)
                    factor = sub - Matrix.identity(len(positions)).scale(Scalar(Fraction(0), Fraction(t)))
                    proj = proj @ factor.scale(ONE / Scalar(Fraction(0), Fraction(s - t)))
                key = (p, h - p, v)
                full = _scatter(ngen, k, positions, proj)
                if key in out:
                    out[key] = _merge_block(out[key], k, full)
                else:
                    blocks = [Matrix.zero(len(monomial_basis(ngen, t_)), len(monomial_basis(ngen, t_))) for t_ in range(ngen + 1)]
                    blocks[k] = full
                    out[key] = GradedOperator(ngen, 0, EVEN, tuple(blocks), f"Pi^{{{p},{h-p}}}[{v}]")
    return out


def _scatter(ngen, k, positions, sub: Matrix) -> Matrix:
    dim = len(monomial_basis(ngen, k))
    rows = [[ZERO] * dim for _ in range(dim)]
    for a, i in enumerate(positions):
        for b, j in enumerate(positions):
            rows[i][j] = sub.rows[a][b]
    return Matrix(rows, dim)


def _merge_block(op: GradedOperator, k: int, block: Matrix) -> GradedOperator:
    blocks = list(op.blocks)
    blocks[k] = blocks[k] + block
    return GradedOperator(op.ngen, op.shift, op.parity, tuple(blocks), op.label)
