//! Acceptance run: one line per criterion, exact integer comparisons only,
//! each with its wall-clock budget. Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use isotypic::cayley::{self, CayleyMatrix, DeterminantAlgorithm, Variant};
use isotypic::groups::{abelian_groups_of_order, abelian_groups_up_to};
use isotypic::molien::{self, GroupSource, Identity};
use isotypic::permanent::PermanentAlgorithm;
use isotypic::{BigInt, FiniteAbelianGroup, IntPolynomial, OrderProfile, Report};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(r: &Report) -> Result<(), String> {
    ensure(r.passed(), || {
        format!("{} {}: {} failures, first {}", r.check, r.parameters, r.failures.len(), r.failures[0])
    })
}

fn g(s: &str) -> FiniteAbelianGroup {
    s.parse().expect("valid group")
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Drop `*`, `_` and spaces so `3*x0*x1` and `3x_0x_1` compare equal.
fn normalise(s: &str) -> String {
    s.chars().filter(|c| !matches!(c, '*' | '_' | ' ')).collect()
}

fn golden_values() -> Outcome {
    let checks = [
        ("a_0(C3,3)", molien::a_coeff(3, 3, 0).map_err(e)?, big(4)),
        ("a_0(C4,4)", molien::a_coeff(4, 4, 0).map_err(e)?, big(10)),
        ("a_0(C6,6)", molien::a_coeff(6, 6, 0).map_err(e)?, big(80)),
        ("p(C2xC2)", cayley::p_count(&g("C2xC2")).map_err(e)?, big(11)),
        ("d(C6)", cayley::d_count(&g("C6")).map_err(e)?, big(68)),
        ("d(C4)", cayley::d_count(&g("C4")).map_err(e)?, big(10)),
    ];
    for (name, got, want) in &checks {
        ensure(got == want, || format!("{name} = {got}, expected {want}"))?;
    }
    Ok(checks.iter().map(|(n, v, _)| format!("{n}={v}")).collect::<Vec<_>>().join(" "))
}

fn example_permanents() -> Outcome {
    let c3 = g("C3");
    let plain = cayley::permanent(&CayleyMatrix::build(&c3, Variant::Plain, None).map_err(e)?, PermanentAlgorithm::Ryser)
        .map_err(e)?;
    let printed = "x_0^3+x_1^3+x_2^3+3x_0x_1x_2";
    let terms = |s: &str| -> BTreeSet<String> { normalise(s).split('+').map(str::to_string).collect() };
    ensure(terms(&plain.to_string()) == terms(printed), || format!("per(M_C3) = {plain}"))?;
    ensure(plain == IntPolynomial::parse(printed, 3).map_err(e)?, || "parsed form differs".into())?;

    let ext = cayley::permanent(&CayleyMatrix::build(&c3, Variant::Extended, None).map_err(e)?, PermanentAlgorithm::Ryser)
        .map_err(e)?;
    let printed = "2x_0^4+10x_0^2x_1x_2+4x_0x_1^3+4x_0x_2^3+4x_1^2x_2^2";
    ensure(normalise(&ext.to_string()) == normalise(printed), || format!("per of extended table = {ext}"))?;
    Ok(format!("{plain} | {ext}"))
}

fn s3_exterior_series() -> Outcome {
    let profile = OrderProfile::from_json(r#"{"1":1,"2":3,"3":2}"#).map_err(e)?;
    let s = molien::ext_series(GroupSource::Profile(&profile), 0, 6).map_err(e)?;
    let want: Vec<BigInt> = [1, 1, 1, 4, 4, 1, 0].into_iter().map(big).collect();
    ensure(s.integer_coeffs().as_ref() == Some(&want), || format!("got {s}"))?;
    Ok(s.to_string())
}

fn formula_oracle_sweeps() -> Outcome {
    let mut cases = 0u64;
    for n in 1..=8u64 {
        for m in 0..=8 {
            for i in 0..n as i64 {
                let (a, b) = (molien::a_coeff(n, m, i).map_err(e)?, molien::a_bruteforce(n, m, i).map_err(e)?);
                ensure(a == b, || format!("a_coeff({n},{m},{i}) = {a}, brute force {b}"))?;
                cases += 1;
            }
        }
    }
    for n in 1..=6u64 {
        for p in 0..=6 {
            for m in 0..=n {
                for i in 0..n as i64 {
                    let (a, b) = (molien::dim_sym_wedge(n, p, m, i).map_err(e)?, molien::dim_bruteforce(n, p, m, i).map_err(e)?);
                    ensure(a == b, || format!("dim_sym_wedge({n},{p},{m},{i}) = {a}, brute force {b}"))?;
                    cases += 1;
                }
            }
        }
    }
    for n in 1..=12u64 {
        for m in 0..=n {
            for i in 0..n as i64 {
                let (a, b) = (molien::b_coeff(n, m, i).map_err(e)?, molien::b_subsets(n, Some(m), i).map_err(e)?);
                ensure(a == b, || format!("b_coeff({n},{m},{i}) = {a}, subsets {b}"))?;
                cases += 1;
            }
        }
    }
    for grp in abelian_groups_up_to(16) {
        let closed = molien::n_g(&grp).map_err(e)?;
        let dp = grp.subset_sum_zero_count().map_err(e)?;
        let literal = BigInt::from(grp.subset_sum_zero_count_enumerated().map_err(e)?);
        ensure(closed == dp && dp == literal, || format!("N_G({grp}): formula {closed}, dp {dp}, enumeration {literal}"))?;
        cases += 1;
    }
    ensure(molien::n_g(&g("C2xC2")).map_err(e)? == big(4), || "N_G(C2xC2) != 4".into())?;
    Ok(format!("{cases} comparisons; N_G(C2xC2) = 4 by enumeration"))
}

fn reciprocity() -> Outcome {
    let r = molien::check_reciprocity(10, 10).map_err(e)?;
    passed(&r)?;
    let f = molien::check_fredman(16, 16).map_err(e)?;
    passed(&f)?;
    Ok(format!("{} bigraded cases, {} one-variable cases", r.cases, f.cases))
}

fn identity_suite() -> Outcome {
    let mut total = 0;
    let mut notes = Vec::new();
    for (which, order) in [(Identity::A, 20), (Identity::B, 20), (Identity::Log2Var, 20), (Identity::Log3Var, 8)] {
        let r = molien::check_identity(which, order).map_err(e)?;
        passed(&r)?;
        ensure(r.parameters["max_discrepancy"] == "0", || format!("{} discrepancy", r.check))?;
        total += r.cases;
        notes.extend(r.notes.into_iter().filter(|n| !n.starts_with("max discrepancy")));
    }
    Ok(format!("{total} coefficients exact; {}", notes.join("; ")))
}

fn hall_equivalence() -> Outcome {
    let mut checked = 0;
    for grp in abelian_groups_up_to(6) {
        let n = grp.order();
        let mut tables = vec![(Variant::Plain, n)];
        if n <= 5 {
            tables.push((Variant::Extended, n + 1));
        }
        for (variant, degree) in tables {
            let t = CayleyMatrix::build(&grp, variant, None).map_err(e)?;
            let per = cayley::permanent(&t, PermanentAlgorithm::Ryser).map_err(e)?;
            let hall = cayley::hall_support(&grp, degree).map_err(e)?;
            ensure(per.support() == hall, || format!("{grp} {variant}: support differs"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} tables"))
}

fn determinants_and_invariance() -> Outcome {
    for grp in abelian_groups_up_to(6) {
        passed(&cayley::check_determinant_factorization(&grp).map_err(e)?)?;
        let ext = CayleyMatrix::build(&grp, Variant::Extended, None).map_err(e)?;
        ensure(cayley::determinant(&ext, &grp, DeterminantAlgorithm::Leibniz).map_err(e)?.is_zero(), || {
            format!("det of extended table of {grp} is nonzero")
        })?;
    }
    let mut semi = Vec::new();
    for grp in abelian_groups_up_to(8) {
        let r = cayley::check_invariance(&grp).map_err(e)?;
        passed(&r)?;
        if r.notes.iter().any(|n| n.contains("nontrivial")) {
            semi.push(grp.to_string());
        }
    }
    // psi is nontrivial exactly when there is a unique element of order 2
    let expected: Vec<String> = abelian_groups_up_to(8)
        .into_iter()
        .filter(|grp| grp.order_profile().count(2) == 1)
        .map(|grp| grp.to_string())
        .collect();
    ensure(semi == expected, || format!("nontrivial weight on {semi:?}, expected {expected:?}"))?;
    Ok(format!("det weight nontrivial on {}", semi.join(",")))
}

fn action_identities() -> Outcome {
    let mut summary = Vec::new();
    for s in ["C3", "C4", "C2xC2"] {
        let r = cayley::check_action_identities(&g(s), 0, 0).map_err(e)?;
        passed(&r)?;
        ensure(r.parameters["exhaustive"] == true, || format!("{s} not exhaustive"))?;
        summary.push(format!("{s}:{}", r.parameters["permutations"]));
    }
    for grp in abelian_groups_of_order(6) {
        let r = cayley::check_action_identities(&grp, 500, 1).map_err(e)?;
        passed(&r)?;
        let count = r.parameters["permutations"].as_u64().unwrap_or(0);
        ensure(count >= 500, || format!("{grp}: only {count} permutations"))?;
        summary.push(format!("{grp}:{count}"));
    }
    Ok(summary.join(" "))
}

fn lehmer() -> Outcome {
    let mut cases = 0;
    for p in [3, 5, 7] {
        let r = cayley::lehmer_check(p).map_err(e)?;
        passed(&r)?;
        cases += r.cases;
    }
    Ok(format!("{cases} coefficients divisible"))
}

fn toeplitz_conjecture() -> Outcome {
    let pairs = (2..=9).map(|l| (2u64, l)).chain((3..=8).map(|l| (3, l))).chain((4..=7).map(|l| (4, l)));
    let mut done = 0;
    for (n, l) in pairs {
        let r = cayley::check_conjecture(n, l).map_err(e)?;
        if !r.passed() {
            let witnesses: Vec<String> = r.failures.iter().map(|w| w.to_string()).collect();
            return Err(format!("halted at (n, l) = ({n}, {l}) after {done} passing pairs: {}", witnesses.join(" ")));
        }
        done += 1;
    }
    Ok(format!("{done} pairs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("golden values", 1, golden_values),
        ("example permanents", 1, example_permanents),
        ("exterior series from an order profile", 1, s3_exterior_series),
        ("formula-vs-oracle sweeps", 60, formula_oracle_sweeps),
        ("reciprocity", 30, reciprocity),
        ("generating-function identities", 30, identity_suite),
        ("Hall support equivalence", 300, hall_equivalence),
        ("determinant factorization and invariance", 300, determinants_and_invariance),
        ("action identities", 60, action_identities),
        ("Lehmer congruence", 120, lehmer),
        ("Toeplitz permanent support conjecture", 600, toeplitz_conjecture),
    ];
    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= Duration::from_secs(*budget) {
                Ok(detail)
            } else {
                Err(format!("took {:.2}s, budget {budget}s", elapsed.as_secs_f64()))
            }
        });
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {status} {name} ({:.3}s / {budget}s): {detail}", k + 1, elapsed.as_secs_f64());
        failures += outcome.is_err() as usize;
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
