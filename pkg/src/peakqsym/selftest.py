"""Built-in acceptance suite.

Eight criteria, each confirming a headline guarantee by at least two
independent routes.  `quick` keeps every criterion under a few seconds;
`full` runs the complete advertised bounds.  The reference routes that do
not live in the core modules (power-series expansion, the antipode
recursion, direct chain counting) are defined here and reused by the
pytest suite.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product as iproduct

from .combinat import (
    Composition,
    Subset,
    cd_words,
    compositions_of,
    fibonacci,
    reverse_word,
    subsets,
    word_d_count,
    word_degree,
)
from .linalg import independent
from .peak import (
    CdPolynomial,
    cd_index,
    cd_index_via_ab,
    eulerian_projection,
    is_in_peak_algebra,
    peak_combination,
    peak_expansion,
    peak_function,
)
from .poset import (
    GradedPoset,
    boolean,
    chain,
    cube_faces,
    polygon,
    product,
    qsym_of_poset,
    simplex_faces,
)
from .qsym import (
    QSym,
    antipode,
    coproduct,
    from_f_coeffs,
    from_k_coeffs,
    from_m_coeffs,
    m_array,
)
from .toricg import Polynomial, fg_poly_poset, g_on_qsym, g_theta
from .transfer import (
    peak_distribution_enumerate,
    peak_distribution_power,
    peak_transfer,
    transfer_eigenvalue,
    transfer_eigenvector,
    transfer_matrix,
    transfer_matrix_brute,
    transfer_spectrum,
    zonotope_check,
)


# -- reference routes (oracles) ---------------------------------------


def expand_in_variables(element: QSym, nvars: int) -> dict[tuple[int, ...], Fraction]:
    """The honest power-series expansion in x_1..x_nvars, as a map from
    exponent vectors to coefficients.  Faithful for degrees <= nvars."""
    out: dict[tuple[int, ...], Fraction] = {}
    for comp, c in element.terms.items():
        k = len(comp)
        if k > nvars:
            continue
        for positions in combinations(range(nvars), k):
            exp = [0] * nvars
            for pos, part in zip(positions, comp):
                exp[pos] = part
            key = tuple(exp)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def product_by_expansion(a: QSym, b: QSym, nvars: int) -> dict[tuple[int, ...], Fraction]:
    """Multiply two elements as actual polynomials in nvars variables."""
    pa = expand_in_variables(a, nvars)
    pb = expand_in_variables(b, nvars)
    out: dict[tuple[int, ...], Fraction] = {}
    for e1, c1 in pa.items():
        for e2, c2 in pb.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(key, 0) + c1 * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


@lru_cache(maxsize=None)
def _antipode_monomial(comp: Composition) -> QSym:
    if not comp:
        return QSym.one()
    out = -QSym.monomial(comp)
    for i in range(1, len(comp)):
        out = out - _antipode_monomial(comp[:i]) * QSym.monomial(comp[i:])
    return out


def antipode_by_recursion(element: QSym) -> QSym:
    """The antipode computed from the defining counit recursion instead of
    the closed reflect-and-complement form."""
    out = QSym.zero()
    for comp, c in element.terms.items():
        out = out + c * _antipode_monomial(comp)
    return out


def chain_count_brute(p: GradedPoset, ranks) -> int:
    """Count the chains through the given rank set by direct enumeration."""
    levels = [p.elements_of_rank(r) for r in ranks]
    count = 0
    for combo in iproduct(*levels):
        if all(p.leq(x, y) for x, y in zip(combo, combo[1:])):
            count += 1
    return count


# -- suite plumbing ---------------------------------------------------


@dataclass(frozen=True)
class Bounds:
    independence_max: int
    eta_max: int
    boolean_max: int
    polygon_max: int
    faces_max: int
    product_rank_max: int
    omega_max: int
    dist_size_max: int
    hopf_degree_max: int
    shuffle_degree_max: int
    transfer_mult_max: int
    g_polygon_max: int
    zonotope_max: int
    fiber_degree_max: int


QUICK = Bounds(
    independence_max=6,
    eta_max=6,
    boolean_max=5,
    polygon_max=8,
    faces_max=3,
    product_rank_max=4,
    omega_max=5,
    dist_size_max=6,
    hopf_degree_max=4,
    shuffle_degree_max=5,
    transfer_mult_max=4,
    g_polygon_max=8,
    zonotope_max=3,
    fiber_degree_max=5,
)

FULL = Bounds(
    independence_max=10,
    eta_max=9,
    boolean_max=6,
    polygon_max=12,
    faces_max=4,
    product_rank_max=6,
    omega_max=8,
    dist_size_max=8,
    hopf_degree_max=5,
    shuffle_degree_max=6,
    transfer_mult_max=5,
    g_polygon_max=12,
    zonotope_max=4,
    fiber_degree_max=6,
)


@dataclass(frozen=True)
class Result:
    name: str
    ok: bool
    detail: str


def ensure(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


def _eulerian_test_posets(rank_bound: int) -> list[tuple[str, GradedPoset]]:
    base = [
        ("chain:1", chain(1)),
        ("boolean:2", boolean(2)),
        ("boolean:3", boolean(3)),
        ("polygon:4", polygon(4)),
        ("polygon:5", polygon(5)),
    ]
    out = []
    for (na, pa), (nb, pb) in combinations_with_replacement(base, 2):
        if pa.top_rank + pb.top_rank <= rank_bound:
            out.append((f"{na} x {nb}", pa, pb))
    return out


# -- the criteria -----------------------------------------------------


def check_dimensions(b: Bounds) -> str:
    for n in range(1, 21):
        ensure(
            len(cd_words(n)) == fibonacci(n + 1),
            f"degree-{n} cd-word count {len(cd_words(n))} != a_{n + 1} = {fibonacci(n + 1)}",
        )
    top = b.independence_max
    for n in range(1, top + 1):
        vectors = [m_array(peak_function(w), n + 1) for w in cd_words(n)]
        ensure(
            independent(vectors),
            f"peak functions of degree {n + 1} are linearly dependent",
        )
    return (
        "cd-word counts match the Fibonacci sequence through degree 20; "
        f"the {len(cd_words(top))} peak functions of degree {top + 1} are independent "
        f"inside dimension {2 ** top}"
    )


def check_transfer_matrix(b: Bounds) -> str:
    for n in range(0, b.eta_max + 1):
        tm = transfer_matrix(n)
        ensure(tm == transfer_matrix_brute(n), f"closed form != enumeration at degree {n}")
        want = 1 << (n + 1)
        sums = tm.scaled_column_sums()
        ensure(
            all(s == want for s in sums),
            f"degree-{n} scaled column sums {sums} != {want}",
        )
    frozen = ((4, 1, 1), (2, 2, 1), (2, 1, 2))
    ensure(
        transfer_matrix(3).counts == frozen,
        f"degree-3 matrix {transfer_matrix(3).counts} != {frozen}",
    )
    return (
        f"both matrix routes agree for degrees <= {b.eta_max}, scaled columns sum to "
        "2^(n+1), and the degree-3 rows are (4,1,1),(2,2,1),(2,1,2)"
    )


def check_cd_peak_expansion(b: Bounds) -> str:
    cases: list[tuple[str, QSym]] = []
    for k in range(1, b.boolean_max + 1):
        cases.append((f"boolean:{k}", qsym_of_poset(boolean(k))))
    for m in range(3, b.polygon_max + 1):
        cases.append((f"polygon:{m}", qsym_of_poset(polygon(m))))
    for d in range(1, b.faces_max + 1):
        cases.append((f"simplex_faces:{d}", qsym_of_poset(simplex_faces(d))))
        cases.append((f"cube_faces:{d}", qsym_of_poset(cube_faces(d))))
    for name, pa, pb in _eulerian_test_posets(b.product_rank_max):
        direct = qsym_of_poset(product(pa, pb))
        ensure(
            direct == qsym_of_poset(pa) * qsym_of_poset(pb),
            f"{name}: flag element of the product != product of flag elements",
        )
        cases.append((name, direct))

    for name, element in cases:
        psi = cd_index(element)
        ensure(
            psi == cd_index_via_ab(element),
            f"{name}: solver cd-index and ab-rewriting disagree",
        )
        ensure(
            peak_combination(peak_expansion(element)) == element,
            f"{name}: flag element != its weighted peak expansion",
        )

    ensure(
        cd_index(qsym_of_poset(boolean(4))) == CdPolynomial({"ccc": 1, "cd": 2, "dc": 2}),
        "cd-index of boolean:4 is not ccc + 2cd + 2dc",
    )
    for m in range(3, b.polygon_max + 1):
        ensure(
            cd_index(qsym_of_poset(polygon(m))) == CdPolynomial({"cc": 1, "d": m - 2}),
            f"cd-index of polygon:{m} is not cc + {m - 2}d",
        )
    return (
        f"{len(cases)} posets (boolean/polygon/simplex/cube/products): cd-index agrees "
        "between the sparse solve and the ab rewrite, and F = sum of half-scaled peak "
        "functions holds exactly"
    )


def check_spectral(b: Bounds) -> str:
    for n in range(0, b.omega_max + 1):
        tm = transfer_matrix(n)
        perron = "c" * n
        columns = []
        for value, w, vec in transfer_spectrum(n):
            ensure(
                tm.apply_theta(vec) == vec * value,
                f"matrix route: eigenvector for {w or '1'} fails at eigenvalue {value}",
            )
            el = transfer_eigenvector(w)
            ensure(
                peak_transfer(el) == transfer_eigenvalue(w) * el,
                f"direct route: transfer of the {w or '1'} eigenvector is off",
            )
            if w != perron:
                ensure(
                    sum(vec.coeffs.values()) == 0,
                    f"non-Perron eigenvector {w} has nonzero coordinate sum",
                )
            columns.append([vec.coeff(u) for u in cd_words(n)])
        ensure(independent(columns), f"degree-{n} eigenvectors do not form a basis")
        have = Counter(v for v, _, _ in transfer_spectrum(n))
        want = Counter(1 << (n + 1 - 2 * word_d_count(w)) for w in cd_words(n))
        ensure(have == want, f"degree-{n} spectrum {dict(have)} != {dict(want)}")

    for size in range(1, b.dist_size_max + 1):
        by_enum = peak_distribution_enumerate(size)
        by_power = peak_distribution_power(size)
        ensure(
            by_enum == by_power,
            f"size-{size} peak tallies: enumeration and power route disagree",
        )
        el = by_power.element()
        ensure(
            peak_transfer(el) == (1 << size) * el,
            f"size-{size} peak distribution is not fixed up to 2^{size}",
        )
    return (
        f"eigenvector identities hold by matrix and direct routes for word degrees <= "
        f"{b.omega_max} with the advertised two-power spectrum; permutation peak "
        f"tallies match the power construction for sizes <= {b.dist_size_max}"
    )


def _coassociativity_holds(element: QSym) -> bool:
    left: dict[tuple, Fraction] = {}
    right: dict[tuple, Fraction] = {}
    for (a, c2), v in coproduct(element).items():
        for i in range(len(a) + 1):
            key = (a[:i], a[i:], c2)
            left[key] = left.get(key, 0) + v
        for i in range(len(c2) + 1):
            key = (a, c2[:i], c2[i:])
            right[key] = right.get(key, 0) + v
    left = {k: v for k, v in left.items() if v}
    right = {k: v for k, v in right.items() if v}
    return left == right


def _coproduct_of_product_matches(a_el: QSym, b_el: QSym) -> bool:
    lhs = {k: v for k, v in coproduct(a_el * b_el).items() if v}
    rhs: dict[tuple, Fraction] = {}
    ca = coproduct(a_el)
    cb = coproduct(b_el)
    for (a1, b1), c1 in ca.items():
        for (a2, b2), c2 in cb.items():
            left = QSym.monomial(a1) * QSym.monomial(a2)
            right = QSym.monomial(b1) * QSym.monomial(b2)
            for la, va in left.terms.items():
                for rb, vb in right.terms.items():
                    key = (la, rb)
                    v = rhs.get(key, 0) + c1 * c2 * va * vb
                    if v:
                        rhs[key] = v
                    else:
                        rhs.pop(key, None)
    return lhs == rhs


def _antipode_axiom_defect(element: QSym) -> QSym:
    total = QSym.zero()
    for (left, right), c in coproduct(element).items():
        total = total + c * (antipode(QSym.monomial(left)) * QSym.monomial(right))
    return total - element.counit() * QSym.one()


def check_hopf(b: Bounds) -> str:
    thetas = [
        (w, peak_function(w))
        for n in range(0, b.hopf_degree_max)
        for w in cd_words(n)
    ]
    for w, el in thetas:
        ensure(_coassociativity_holds(el), f"coassociativity fails on the {w or '1'} element")
        ensure(
            not _antipode_axiom_defect(el),
            f"antipode axiom fails on the {w or '1'} element",
        )
        sign = (-1) ** (word_degree(w) + 1)
        ensure(
            antipode(el) == sign * peak_function(reverse_word(w)),
            f"antipode of the {w or '1'} element is not the signed reversal",
        )
        ensure(
            antipode(el) == antipode_by_recursion(el),
            f"closed-form antipode disagrees with the recursion on {w or '1'}",
        )
    for (u, a_el), (v, b_el) in combinations_with_replacement(thetas, 2):
        if word_degree(u) + word_degree(v) + 2 <= b.hopf_degree_max:
            ensure(
                _coproduct_of_product_matches(a_el, b_el),
                f"coproduct is not multiplicative on {u or '1'}, {v or '1'}",
            )

    checked_pairs = 0
    for da in range(1, b.shuffle_degree_max):
        for db in range(1, b.shuffle_degree_max - da + 1):
            for alpha in compositions_of(da):
                for beta in compositions_of(db):
                    a_el = QSym.monomial(alpha)
                    b_el = QSym.monomial(beta)
                    ensure(
                        expand_in_variables(a_el * b_el, da + db)
                        == product_by_expansion(a_el, b_el, da + db),
                        f"quasi-shuffle of {alpha} and {beta} fails the power-series oracle",
                    )
                    checked_pairs += 1

    transfer_pairs = 0
    for da in range(1, b.transfer_mult_max):
        for db in range(1, b.transfer_mult_max - da + 1):
            for sa in subsets(da - 1):
                for sb in subsets(db - 1):
                    a_el = from_f_coeffs(da, {sa: Fraction(1)})
                    b_el = from_f_coeffs(db, {sb: Fraction(1)})
                    ensure(
                        peak_transfer(a_el * b_el) == peak_transfer(a_el) * peak_transfer(b_el),
                        f"transfer map is not multiplicative on F pairs "
                        f"({da}, {sa.members}) and ({db}, {sb.members})",
                    )
                    transfer_pairs += 1
    return (
        f"coassociativity, coproduct multiplicativity, and both antipode routes hold on "
        f"peak functions of degree <= {b.hopf_degree_max}; {checked_pairs} quasi-shuffle "
        f"products match the power-series oracle; the transfer map is multiplicative on "
        f"{transfer_pairs} fundamental pairs"
    )


def check_toric_g(b: Bounds) -> str:
    for m in range(3, b.g_polygon_max + 1):
        expected = Polynomial((1, m - 3))
        route_poset = fg_poly_poset(polygon(m))[1]
        element = qsym_of_poset(polygon(m))
        route_linear = g_on_qsym(element)
        route_theta = Polynomial(())
        for w, c in peak_expansion(element).items():
            route_theta = route_theta + g_theta(w) * c
        ensure(route_poset == expected, f"polygon:{m} recursion g != 1 + {m - 3}x")
        ensure(route_linear == expected, f"polygon:{m} linear-extension g != 1 + {m - 3}x")
        ensure(route_theta == expected, f"polygon:{m} peak-expansion g != 1 + {m - 3}x")

    for name, pa, pb in _eulerian_test_posets(b.product_rank_max):
        ga = fg_poly_poset(pa)[1]
        gb = fg_poly_poset(pb)[1]
        ensure(
            fg_poly_poset(product(pa, pb))[1] == ga * gb,
            f"{name}: poset g is not multiplicative",
        )
        ensure(
            g_on_qsym(qsym_of_poset(pa) * qsym_of_poset(pb)) == ga * gb,
            f"{name}: quasisymmetric g is not multiplicative",
        )

    ensure(g_theta("cd") == Polynomial(()), "g of the cd peak function is not 0")
    ensure(g_theta("cc") == Polynomial((2, -2)), "g of the cc peak function is not 2 - 2x")
    ensure(g_theta("d") == Polynomial((0, 4)), "g of the d peak function is not 4x")
    ensure(g_theta("dc") == Polynomial((0, 4)), "g of the dc peak function is not 4x")
    unit_direct = g_theta("")
    unit_linear = g_on_qsym(peak_function(""))
    ensure(
        unit_direct == Polynomial((2,)) and unit_linear == Polynomial((2,)),
        f"g of the degree-1 peak function: closed form {unit_direct}, linear route "
        f"{unit_linear}; expected the constant 2 from both",
    )
    return (
        f"polygon g = 1 + (m-3)x by three routes for m <= {b.g_polygon_max}; g is "
        "multiplicative on products by both routes; cd/cc/d/dc values check out; the "
        "degree-1 peak function evaluates to the constant 2 under both routes"
    )


def check_zonotope(b: Bounds) -> str:
    for k in range(1, b.zonotope_max + 1):
        ensure(zonotope_check(k), f"zonotope identity fails for the {k}-cube")
        poly = peak_expansion(2 * qsym_of_poset(cube_faces(k)))
        ensure(
            all(c.denominator == 1 for _, c in poly.items()),
            f"doubled cube flag element has non-integer peak coordinates at k={k}",
        )
    return (
        f"transfer of the augmented boolean lattice equals twice the cube face "
        f"lattice for k <= {b.zonotope_max}, with integer peak coordinates"
    )


def check_projection(b: Bounds) -> str:
    witness = from_m_coeffs(
        3,
        {
            Subset(2, 0): Fraction(1),
            Subset.from_members(2, [1]): Fraction(3),
            Subset.from_members(2, [2]): Fraction(3),
            Subset.from_members(2, [1, 2]): Fraction(6),
        },
    )
    ensure(is_in_peak_algebra(witness), "the (1,3,3,6) flag vector fails membership")
    ensure(not chain(2).is_eulerian(), "the length-2 chain should not be Eulerian")

    rng = random.Random(20250822)

    def random_m(degree: int) -> QSym:
        coeffs = {
            s: Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for s in subsets(degree - 1)
        }
        return from_m_coeffs(degree, coeffs)

    for _ in range(5):
        x0, x1, x2, x12 = (Fraction(rng.randint(-9, 9)) for _ in range(4))
        element = from_m_coeffs(
            3,
            {
                Subset(2, 0): x0,
                Subset.from_members(2, [1]): x1,
                Subset.from_members(2, [2]): x2,
                Subset.from_members(2, [1, 2]): x12,
            },
        )
        expected = QSym.monomial((3,), x0) + x1 * (
            QSym.monomial((1, 2)) + QSym.monomial((2, 1)) + QSym.monomial((1, 1, 1), 2)
        )
        ensure(
            eulerian_projection(element) == expected,
            "degree-3 projection does not reduce to f0*M0 + f1*(M1 + M2 + 2*M12)",
        )

    for degree in range(1, b.fiber_degree_max + 1):
        for _ in range(3):
            element = random_m(degree)
            projected = eulerian_projection(element)
            ensure(
                cd_index(projected) == cd_index(element),
                f"projection changes the degree-{degree} cd-index",
            )
            ensure(
                eulerian_projection(projected) == projected,
                f"projection is not idempotent at degree {degree}",
            )
            bump = {
                s: Fraction(rng.randint(-5, 5))
                for s in subsets(degree - 1)
                if not s.is_right_sparse()
            }
            if bump:
                delta = from_k_coeffs(degree, bump)
                ensure(
                    cd_index(element + delta) == cd_index(element),
                    f"a non-sparse perturbation moves the degree-{degree} cd-index",
                )
                ensure(
                    eulerian_projection(element + delta) == projected,
                    f"a non-sparse perturbation moves the degree-{degree} projection",
                )
            other = random_m(degree)
            kernel = other - eulerian_projection(other)
            ensure(
                cd_index(element + kernel) == cd_index(element),
                f"a kernel perturbation moves the degree-{degree} cd-index",
            )
    return (
        "the (1,3,3,6) witness is a member while the length-2 chain is not Eulerian; "
        "the degree-3 projection formula holds on random inputs; cd-indexes are "
        f"constant along projection fibers through degree {b.fiber_degree_max}"
    )


CRITERIA: tuple[tuple[str, object], ...] = (
    ("dimensions", check_dimensions),
    ("transfer-matrix", check_transfer_matrix),
    ("cd-peak-expansion", check_cd_peak_expansion),
    ("spectral", check_spectral),
    ("hopf", check_hopf),
    ("toric-g", check_toric_g),
    ("zonotope", check_zonotope),
    ("projection", check_projection),
)


def run(depth: str = "quick") -> list[Result]:
    if depth not in ("quick", "full"):
        raise ValueError("depth must be 'quick' or 'full'")
    bounds = FULL if depth == "full" else QUICK
    results = []
    for name, func in CRITERIA:
        try:
            detail = func(bounds)
            results.append(Result(name, True, detail))
        except AssertionError as exc:
            results.append(Result(name, False, str(exc)))
        except Exception as exc:  # pragma: no cover - defensive
            results.append(Result(name, False, f"{type(exc).__name__}: {exc}"))
    return results
