"""Exit criteria. Each test prints one PASS/FAIL line; run with ``pytest -s`` to see them,
or ``python tests/test_acceptance.py`` for the summary alone."""

from fractions import Fraction

from sidon_designs import bounds
from sidon_designs.bh_design import (
    bodmann_haas,
    potential_tolerance,
    verify_direct,
    verify_frame_potential,
)
from sidon_designs.finite_field import is_prime_power
from sidon_designs.sidon import (
    FAMILIES,
    bose,
    custom_set,
    is_sidon,
    m_exact,
    m_known_choice,
    singer,
)

EXPECTED_PARAMS = {
    "ErdosTuran": lambda q: (q * q, q),
    "Singer": lambda q: (q * q + q + 1, q + 1),
    "Bose": lambda q: (q * q - 1, q),
    "Spence": lambda q: (q * (q - 1), q - 1),
    "Hughes": lambda q: ((q - 1) ** 2, q - 2),
}
LARGE_FIELD_CAP = 2**22


def report(n, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


def _valid(fam, q):
    return is_prime_power(q) and fam.valid(q)


def small_design_cases():
    for fam in FAMILIES:
        for q in range(2, 30):
            if _valid(fam, q) and 1 <= fam.size(q) <= 25:
                yield fam.build(q)


LARGE_CASES = [("Singer", 101), ("Singer", 127), ("Singer", 149), ("Bose", 101), ("Bose", 128), ("Bose", 149)]


def test_criterion_1_construction_correctness():
    bad, count = [], 0
    for fam in FAMILIES:
        for q in range(2, 65):
            if not _valid(fam, q):
                continue
            S = fam.build(q)
            count += 1
            if not is_sidon(S) or S.params != EXPECTED_PARAMS[fam.tag](q):
                bad.append(S.label)
    report(1, not bad, f"{count} constructions Sidon with exact (|G|, |S|); failures: {bad}")


def test_criterion_2_design_certification():
    bad, worst, count = [], 0.0, 0
    for S in small_design_cases():
        D = bodmann_haas(S)
        r = verify_direct(D)
        worst = max(worst, r / D.dim)
        count += 1
        if r > 1e-9 * D.dim:
            bad.append((S.label, r))
    large = []
    for tag, q in LARGE_CASES:
        S = singer(q, cap=LARGE_FIELD_CAP) if tag == "Singer" else bose(q, cap=LARGE_FIELD_CAP)
        D = bodmann_haas(S, cap=LARGE_FIELD_CAP)
        rep = verify_frame_potential(D)
        target, tol = D.target_trace, 1e-8 * D.dim**2
        ok = abs(rep.trace - target) <= tol and abs(rep.potential - target) <= tol
        large.append((S.label, D.dim, rep.potential - target))
        if not ok:
            bad.append((S.label, rep))
    report(
        2,
        not bad,
        f"direct: {count} designs with d <= 25, max residual/d = {worst:.2e}; "
        f"potential: {[(lbl, d, f'{gap:.1e}') for lbl, d, gap in large]}; failures: {bad}",
    )


def test_criterion_3_soundness():
    controls = [custom_set([9], [0, 1, 2])] + [bose(q, literal=True) for q in (4, 5, 7, 8, 9, 11, 13, 16)]
    bad, gaps = [], []
    for S in controls:
        D = bodmann_haas(S)
        residual = verify_direct(D)
        rep = verify_frame_potential(D)
        gap = rep.potential - D.target_trace
        gaps.append(min(residual, gap))
        if residual <= 0.1 or gap <= 0.1 or rep.certified or residual <= 1e-9 * D.dim:
            bad.append(S.params)
    report(3, not bad, f"{len(controls)} non-Sidon controls rejected by both methods, min gap {min(gaps):.3f}; failures: {bad}")


def test_criterion_4_weight_sum_identity():
    designs = [bodmann_haas(S) for S in small_design_cases()]
    designs += [bodmann_haas(custom_set([9], [0, 1, 2])), bodmann_haas(bose(149))]
    bad = [D.dim for D in designs if D.exact_weight_sum() != Fraction(D.dim * (D.dim + 1), 2)]
    report(4, not bad, f"{len(designs)} designs with sum of weights = d(d+1)/2 exactly; failures: {bad}")


def test_criterion_5_oracle_equivalence():
    exact = {d: m_exact(d) for d in range(1, 6)}
    known = {d: m_known_choice(d).order for d in range(1, 6)}
    bad = [d for d in exact if exact[d] != known[d]]
    for d in range(1, 501):
        m = m_known_choice(d).order
        p = bounds.smallest_prime_geq(d)
        if m < d * d - d + 1 or m > p * p:
            bad.append(d)
    report(5, not bad, f"m_exact = m_known for d <= 5 {exact}; d^2-d+1 <= m_known(d) <= p(d)^2 for d <= 500; failures: {bad}")


def test_criterion_6_table_reconstruction():
    data = bounds.load_sic_data()
    rows = bounds.table(150, data)
    problems = []
    verdicts = {"sic": 0, "tie": 0, "sidon": 0}
    for r in rows:
        v = r.verdict
        if v not in verdicts:
            problems.append((r.d, "previous bound strictly better"))
            continue
        verdicts[v] += 1
        if v == "sidon" and r.witness.family != "Hughes":
            problems.append((r.d, "improvement without a Hughes witness"))
        if r.best_source == "e" or r.e < r.best:
            problems.append((r.d, "column (e) wins"))
    for d in range(2, 501):
        if m_known_choice(d).family == "ErdosTuran":
            problems.append((d, "Erdos-Turan achieves m_known"))
    ties = 0
    for q in range(2, 151):
        if not is_prime_power(q):
            continue
        for fam, d in (("Singer", q + 1), ("Bose", q), ("Spence", q - 1)):
            if not 2 <= d <= 150:
                continue
            f = next(x for x in FAMILIES if x.tag == fam)
            total = f.order(q) + f.size(q)
            if fam == "Spence" and bounds.bound_b_k(d) != 1:
                problems.append((d, "k = 1 does not apply to (b)"))
            expected = {"Singer": bounds.bound_c(d), "Bose": bounds.bound_d(d), "Spence": bounds.bound_b(d)}[fam]
            if total != expected:
                problems.append((d, f"{fam} tie identity"))
            ties += 1
    report(6, not problems, f"verdicts over 2 <= d <= 150: {verdicts}; {ties} tie identities checked; problems: {problems}")


def test_criterion_7_asymptotic_sanity():
    rep = bounds.asymptotic_check(2000)
    ok = rep.max_ratio < 10 and rep.below_prime_square
    report(7, ok, f"max (m(d)+d-d^2)/d^1.525 over d <= 2000 = {rep.max_ratio:.4f} at d = {rep.argmax} (< 10)")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
