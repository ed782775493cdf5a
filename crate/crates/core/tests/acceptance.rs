//! Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use germinv_core::invariants::{
    chern_index, chern_number, cusps_count, eta_collections, identity_report, milnor_restricted,
    suspension_check, LinearReference,
};
use germinv_core::{
    colength, depth, krull_dimension, minimal_free_resolution, parse_polynomial,
    schreyer_resolution, standard_basis, syzygy_module, Budget, Error, Monomial, MonomialOrdering,
    Polynomial, Scalar, Submodule, TermVector, Value,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{germ, ring};

const L: MonomialOrdering = MonomialOrdering::local();
const G: MonomialOrdering = MonomialOrdering::global();

type Outcome = Result<String, String>;

fn expect(what: &str, got: Value, want: i64) -> Result<(), String> {
    if got == Value::Finite(want) {
        Ok(())
    } else {
        Err(format!("{what}: expected {want}, got {got}"))
    }
}

fn surface_values() -> Outcome {
    let b = Budget::unlimited();
    let (r, x, f) = common::surface();
    let e = |e: Error| e.to_string();
    expect("c(f|X)", cusps_count(&x, &f, &b).map_err(e)?, 9)?;
    expect("μ(f1|X)", milnor_restricted(&x, &f.components()[0], &b).map_err(e)?, 13)?;
    expect("μ(f2|X)", milnor_restricted(&x, &f.components()[1], &b).map_err(e)?, 18)?;
    let l = common::reference_linear(&r);
    expect("ind{l}", chern_index(&x, &l, &b).map_err(e)?, 13)?;
    let reference = LinearReference::Explicit { collection: l, seed: 0 };
    let (eta1, eta2) = eta_collections(&x, &f).map_err(e)?;
    expect("Ch{η1}", chern_number(&x, &eta1, &reference, &b).map_err(e)?, 9)?;
    expect("Ch{η2}", chern_number(&x, &eta2, &reference, &b).map_err(e)?, 14)?;
    Ok("c = 9, μ(f1|X) = 13, μ(f2|X) = 18, ind{l} = 13, Ch{η1} = 9, Ch{η2} = 14".into())
}

fn first_log_example() -> Outcome {
    common::check_log_example(&common::cusp_cylinder_section())
}

fn second_and_third_log_examples() -> Outcome {
    let a = common::check_log_example(&common::isolated_determinantal())?;
    let b = common::check_log_example(&common::determinantal_non_isolated())?;
    Ok(format!("{a}; {b}"))
}

const CORPUS_CHECKS: [&str; 3] = [
    "chern_df1_equals_bruce_roberts_difference",
    "chern_difference_equals_milnor_difference",
    "chern_eta1_from_cusps",
];

fn identity_corpus() -> Outcome {
    let b = Budget::unlimited();
    let corpus = common::identity_corpus();
    let mut nonzero = 0;
    for (i, (x, f)) in corpus.iter().enumerate() {
        let checks = identity_report(x, f, &LinearReference::seeded(11), &b).map_err(|e| e.to_string())?;
        for name in CORPUS_CHECKS {
            let c = checks.iter().find(|c| c.name == name).ok_or(format!("{name} missing"))?;
            if !c.holds {
                return Err(format!("instance {i} ({:?}): {name}: {:?} vs {:?} {:?}", f.components(), c.left, c.right, c.error));
            }
            if c.left != Some(0) {
                nonzero += 1;
            }
        }
    }
    Ok(format!("{} instances × 3 identities hold, {nonzero} with nonzero sides", corpus.len()))
}

fn suspension() -> Outcome {
    let b = Budget::unlimited();
    let t = ring(&["w"]);
    let w = |s: &str| parse_polynomial(s, &t).unwrap();
    let r2 = ring(&["x", "y"]);
    let cross = germ(&r2, &["x*y"]);
    let f = parse_polynomial("x + y", &r2).unwrap();
    let r3 = ring(&["x", "y", "z"]);
    let a1 = germ(&r3, &["x^2 + y^2 + z^2"]);
    let g = parse_polynomial("x", &r3).unwrap();
    let cases = [
        (&cross, &f, "w^2", 1),
        (&cross, &f, "w^3", 2),
        (&cross, &f, "w^4", 3),
        (&a1, &g, "w^3", 2),
    ];
    let mut seen = Vec::new();
    for (x, f, h, want) in cases {
        let c = suspension_check(x, f, Some(&w(h)), &b);
        if !c.holds || c.right != Some(want) {
            return Err(format!("h = {h}: {:?} vs {:?}, expected {want} {:?}", c.left, c.right, c.error));
        }
        seen.push(want.to_string());
    }
    Ok(format!("μ⁻_BR(F) = μ(h)·μ⁻_BR(f) = {}", seen.join(", ")))
}

/// Monomials in `n` variables of degree below `d`.
fn monomials_below(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for e in 0..d {
        for mut rest in monomials_below(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Rank of the rows, by Gaussian elimination into a pivot table.
fn rank(rows: Vec<Vec<Scalar>>) -> usize {
    let mut pivots: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for mut row in rows {
        for (p, prow) in &pivots {
            if !row[*p].is_zero() {
                let c = row[*p].clone();
                for (a, b) in row.iter_mut().zip(prow) {
                    *a -= &(&c * b);
                }
            }
        }
        if let Some(p) = row.iter().position(|c| !c.is_zero()) {
            let inv = row[p].inv().unwrap();
            for a in row.iter_mut() {
                *a *= &inv;
            }
            pivots.push((p, row));
        }
    }
    pivots.len()
}

/// `dim R/(I + m^N)` by the Macaulay matrix of all multiples `m·g` of degree
/// below `N`, for growing `N`. Once two consecutive values agree,
/// `m^(N−1) ⊆ I + m^N`, so `m^(N−1) ⊆ I` and the value is the colength.
fn macaulay_colength(gens: &[Polynomial], n: usize) -> i64 {
    let mut prev = None;
    for d in 1..64u32 {
        let cols = monomials_below(n, d);
        let index = |e: &[u32]| cols.iter().position(|c| c == e);
        let mut rows = Vec::new();
        for g in gens {
            for m in &cols {
                let mut row = vec![Scalar::zero(); cols.len()];
                let mut any = false;
                for (mon, c) in g.terms() {
                    let e: Vec<u32> = mon.exponents().iter().zip(m).map(|(a, b)| a + b).collect();
                    if let Some(j) = index(&e) {
                        row[j] = c.clone();
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
        let value = (cols.len() - rank(rows)) as i64;
        if prev == Some(value) {
            return value;
        }
        prev = Some(value);
    }
    panic!("Macaulay matrices did not stabilize");
}

fn random_poly(rng: &mut ChaCha8Rng, r: &germinv_core::Ring, with_constant: bool, min_degree: u32) -> Polynomial {
    let n = r.nvars();
    let mut terms = Vec::new();
    if with_constant {
        terms.push((Monomial::one(n), Scalar::from_i64(rng.gen_range(1..=3))));
    }
    for _ in 0..rng.gen_range(1..=3) {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        if e.iter().sum::<u32>() < min_degree {
            continue;
        }
        let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        terms.push((Monomial::new(&e), Scalar::from_i64(c)));
    }
    Polynomial::from_terms(r, terms).unwrap()
}

fn syzygies_vanish(gens: &[Polynomial], b: &Budget<'_>) -> Result<usize, Error> {
    let cols: Vec<TermVector> = gens.iter().cloned().map(TermVector::from_poly).collect();
    let syz = syzygy_module(&cols, G, b)?;
    for s in syz.generators() {
        let sum = s.components().iter().zip(gens).fold(Polynomial::zero(gens[0].ring()), |acc, (a, g)| &acc + &(a * g));
        if !sum.is_zero() {
            return Ok(usize::MAX);
        }
    }
    Ok(syz.generators().len())
}

fn resolutions_compose(m: &Submodule, b: &Budget<'_>) -> Result<bool, Error> {
    let frame = schreyer_resolution(m, b)?;
    let min = match minimal_free_resolution(m, L, b) {
        Err(Error::ZeroModule) => return Ok(frame.composes_to_zero()),
        other => other?,
    };
    Ok(frame.composes_to_zero() && min.composes_to_zero() && !min.has_unit_entries())
}

fn engine_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let names = ["x", "y", "z"];
    let (mut ideals, mut depth_checks, mut skipped) = (0, 0, 0);
    for i in 0..120 {
        let n = 1 + i % 3;
        let r = ring(&names[..n]);
        let max_power = [30, 5, 3][n - 1];
        let mut gens: Vec<Polynomial> = (0..n)
            .map(|v| Polynomial::var(&r, v).unwrap().pow(rng.gen_range(1..=max_power)))
            .collect();
        let extra: Vec<Polynomial> =
            (0..rng.gen_range(1..=2)).map(|_| random_poly(&mut rng, &r, i % 17 == 0, 1 + (i % 2) as u32)).collect();
        gens.extend(extra.iter().filter(|p| !p.is_zero()).cloned());
        let m = Submodule::ideal(&r, gens.clone()).unwrap();
        let b = Budget::with_steps(2_000_000);
        let fail = |what: &str| format!("ideal {i} {gens:?}: {what}");
        let e = |e: Error| fail(&e.to_string());

        for ord in [L, G] {
            let sb = standard_basis(&m, ord, &b).map_err(e)?;
            if !sb.is_buchberger_complete(&b).map_err(e)? {
                return Err(fail("basis fails Buchberger's criterion"));
            }
        }
        let want = macaulay_colength(&gens, n);
        if want > 30 {
            return Err(fail("generator produced colength above 30"));
        }
        let got = colength(&m, L, &b).map_err(e)?;
        if got != Value::Finite(want) {
            return Err(fail(&format!("colength {got}, Macaulay matrix gives {want}")));
        }
        if syzygies_vanish(&gens, &b).map_err(e)? == usize::MAX {
            return Err(fail("a syzygy does not vanish"));
        }
        if !resolutions_compose(&m, &b).map_err(e)? {
            return Err(fail("resolution does not compose to zero or is not minimal"));
        }
        ideals += 1;

        // without the pure powers the quotient is usually positive-dimensional
        let open = Submodule::ideal(&r, extra.clone()).unwrap();
        let b = Budget::with_steps(2_000_000);
        match (krull_dimension(&open, L, &b), depth(&open, L, &b)) {
            (Ok(dim), Ok(d)) => {
                if d > dim {
                    return Err(fail(&format!("depth {d} exceeds dimension {dim}")));
                }
                if !resolutions_compose(&open, &b).map_err(e)? {
                    return Err(fail("resolution of the open ideal does not compose to zero"));
                }
                depth_checks += 1;
            }
            (Err(Error::ZeroModule), _) | (_, Err(Error::ZeroModule)) => {}
            (Err(Error::BudgetExhausted { .. }), _) | (_, Err(Error::BudgetExhausted { .. })) => skipped += 1,
            (Err(x), _) | (_, Err(x)) => return Err(e(x)),
        }
    }
    if skipped > 0 {
        return Err(format!("{skipped} depth checks ran out of budget"));
    }
    Ok(format!(
        "{ideals} zero-dimensional ideals (Buchberger, Macaulay colength, syzygies, resolutions), {depth_checks} depth ≤ dim checks"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("surface example values", surface_values),
        ("cusp cylinder section: Θ and Cohen–Macaulay", first_log_example),
        ("determinantal sections: Θ and Cohen–Macaulay", second_and_third_log_examples),
        ("identity corpus", identity_corpus),
        ("suspension multiplicativity", suspension),
        ("engine properties", engine_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
