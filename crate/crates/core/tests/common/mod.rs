//! Worked examples and the identity corpus, shared by the test targets.
#![allow(dead_code)]

use germinv_core::diff::{MapGerm, OneFormCollection};
use germinv_core::logarithmic::{
    cohen_macaulay_report, lcv_minus_ideal, tangent_module, VarietyGerm,
};
use germinv_core::{
    module_equality, parse_polynomial, Budget, MonomialOrdering, Ring, RingContext, Submodule,
    TermVector,
};

const LOCAL: MonomialOrdering = MonomialOrdering::local();

pub fn ring(names: &[&str]) -> Ring {
    RingContext::new(names.iter().copied()).unwrap()
}

pub fn germ(r: &Ring, gens: &[&str]) -> VarietyGerm {
    if gens.is_empty() {
        return VarietyGerm::smooth(r);
    }
    VarietyGerm::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
}

pub fn map(r: &Ring, comps: &[&str]) -> MapGerm {
    MapGerm::new(r, comps.iter().map(|c| parse_polynomial(c, r).unwrap()).collect()).unwrap()
}

/// The surface x³ + x²y² + y⁷ + z² with the map (y + z², x² + xy + y²).
pub fn surface() -> (Ring, VarietyGerm, MapGerm) {
    let r = ring(&["x", "y", "z"]);
    let x = germ(&r, &["x^3 + x^2*y^2 + y^7 + z^2"]);
    let f = map(&r, &["y + z^2", "x^2 + x*y + y^2"]);
    (r, x, f)
}

/// The explicit linear reference collection used with the surface.
pub fn reference_linear(r: &Ring) -> OneFormCollection {
    let p = |s: &str| parse_polynomial(s, r).unwrap();
    OneFormCollection::of_differentials(
        r,
        2,
        &[vec![p("x + y"), p("x - y + 3*z")], vec![p("x + y - z"), p("x - y + 5*z")]],
    )
    .unwrap()
}

/// Columns of a matrix given row by row.
fn columns(r: &Ring, rows: &[&[&str]]) -> Vec<TermVector> {
    (0..rows[0].len())
        .map(|j| {
            TermVector::new(rows.iter().map(|row| parse_polynomial(row[j], r).unwrap()).collect())
                .unwrap()
        })
        .collect()
}

/// `I_X` times every coordinate field.
fn ideal_times_fields(r: &Ring, gens: &[&str]) -> Vec<TermVector> {
    let gens: Vec<_> = gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect();
    Submodule::ideal_times_free(r, &gens, r.nvars()).unwrap().generators().to_vec()
}

/// A variety in ℂ⁴ with its expected tangent fields and, when known
/// reliably, its cotangent ideal in `x, y, z, w, p1, …, p4`.
pub struct LogExample {
    pub name: &'static str,
    pub x: VarietyGerm,
    pub theta: Vec<TermVector>,
    pub ideal: Option<Vec<&'static str>>,
}

pub fn cusp_cylinder_section() -> LogExample {
    let r = ring(&["x", "y", "z", "w"]);
    let (phi, f2) = ("x^2 - z^3", "y^2 + w");
    let theta = columns(
        &r,
        &[
            &["0", "0", "0", "3*x", "3*z^2", f2, "0"],
            &["1", "0", "0", "0", "0", "0", "0"],
            &["0", "0", "0", "2*z", "2*x", "0", f2],
            &["-2*y", phi, f2, "0", "0", "0", "0"],
        ],
    );
    let ideal = vec![
        "p2 - 2*y*p4",
        "(x^2 - z^3)*p4",
        "(y^2 + w)*p4",
        "3*x*p1 + 2*z*p3",
        "3*z^2*p1 + 2*x*p3",
        "(y^2 + w)*p1",
        "(y^2 + w)*p3",
        "x^2 - z^3",
        "y^2 + w",
    ];
    LogExample { name: "cusp cylinder section", x: germ(&r, &[phi, f2]), theta, ideal: Some(ideal) }
}

pub fn isolated_determinantal() -> LogExample {
    let r = ring(&["x", "y", "z", "w"]);
    let gens = ["x*z - y^2", "x*w - y*z", "y*w - z^2"];
    let mut theta = columns(
        &r,
        &[
            &["0", "3*x", "0", "3*y", "0", "-3*x*w"],
            &["x", "y", "y", "2*z", "3*x*w", "2*z^2 - 3*y*w"],
            &["2*y", "-z", "2*z", "w", "2*z^2 + 4*y*w", "z*w"],
            &["3*z", "-3*w", "3*w", "0", "9*z*w", "3*w^2"],
        ],
    );
    theta.extend(ideal_times_fields(&r, &gens));
    // Only the fields are compared; the cotangent ideal is covered by the depth check.
    LogExample { name: "isolated determinantal", x: germ(&r, &gens), theta, ideal: None }
}

pub fn determinantal_non_isolated() -> LogExample {
    let r = ring(&["x", "y", "z", "w"]);
    let gens = ["x*z", "x*w", "z*y"];
    let theta = columns(
        &r,
        &[
            &["0", "x", "0", "0", "0", "0", "y*z", "0"],
            &["x", "y", "y", "0", "0", "0", "0", "0"],
            &["0", "-z", "0", "0", "z", "0", "0", "x*w"],
            &["0", "-w", "0", "z", "0", "w", "0", "0"],
        ],
    );
    let ideal = vec![
        "x*p2",
        "x*p1 + y*p2 - z*p3 - w*p4",
        "y*p2",
        "z*p4",
        "z*p3",
        "w*p4",
        "y*z*p1",
        "x*w*p3",
        "x*z",
        "x*w",
        "z*y",
    ];
    LogExample { name: "non-isolated determinantal", x: germ(&r, &gens), theta, ideal: Some(ideal) }
}

/// Computes Θ, compares it (and the cotangent ideal when known) by
/// mutual containment and certifies dim = depth = 4.
pub fn check_log_example(ex: &LogExample) -> Result<String, String> {
    let b = Budget::unlimited();
    let err = |e: germinv_core::Error| format!("{}: {e}", ex.name);
    let theta = tangent_module(&ex.x, &b).map_err(err)?;
    let expected = Submodule::new(ex.x.ring(), ex.x.ring().nvars(), ex.theta.clone()).map_err(err)?;
    if !module_equality(theta.module(), &expected, LOCAL, &b).map_err(err)? {
        return Err(format!("{}: tangent fields differ from the expected ones", ex.name));
    }
    let l = lcv_minus_ideal(&ex.x, &theta).map_err(err)?;
    if let Some(gens) = &ex.ideal {
        let cr = &l.cotangent_ring;
        let expected_ideal = Submodule::ideal(cr, gens.iter().map(|g| parse_polynomial(g, cr).unwrap()).collect())
            .map_err(err)?;
        if !module_equality(&l.ideal(), &expected_ideal, LOCAL, &b).map_err(err)? {
            return Err(format!("{}: cotangent ideal differs from the expected one", ex.name));
        }
    }
    let rep = cohen_macaulay_report(&l, &b).map_err(err)?;
    if (rep.dim, rep.depth, rep.is_cm) != (4, 4, true) {
        return Err(format!("{}: dim {} depth {} cm {}", ex.name, rep.dim, rep.depth, rep.is_cm));
    }
    Ok(format!("{}: Θ matches, dim = depth = 4", ex.name))
}

/// Surface germs with 𝒜-finite maps to the plane on which every term of the
/// identities is finite: the smooth plane, surfaces in ℂ³ and a complete
/// intersection surface in ℂ⁴.
pub fn identity_corpus() -> Vec<(VarietyGerm, MapGerm)> {
    let plane = ["x", "y"];
    let space = ["x", "y", "z"];
    let four = ["x", "y", "z", "w"];
    let cases: [(&[&str], &[&str], [&str; 2]); 12] = [
        (&plane, &[], ["x", "y^3 + x*y"]),
        (&plane, &[], ["x", "y^4 + x*y"]),
        (&plane, &[], ["x", "y^3 + x^2*y"]),
        (&plane, &[], ["x + y^2", "x*y + y^3 + x^2"]),
        (&plane, &[], ["x^2 + y", "x*y + y^2 + x^3"]),
        (&plane, &[], ["x + y^2", "y^3 + x*y^2 + x^2"]),
        (&space, &["x^2 + y^2 + z^2"], ["x", "y"]),
        (&space, &["x^2 + y^2 + z^2"], ["x + y^2", "y + z^2"]),
        (&space, &["x^2 + y^3 + z^3"], ["x + z", "y + x*z"]),
        (&space, &["x*y + z^2"], ["x + y", "z + x^2"]),
        (&space, &["x^3 + x^2*y^2 + y^7 + z^2"], ["y + z^2", "x^2 + x*y + y^2"]),
        (&four, &["x^2 + y^2 + z^2 + w^2", "x^2 + 2*y^2 + 3*z^2 + 4*w^2"], ["x + w^2", "y + z^2"]),
    ];
    cases
        .iter()
        .map(|(vars, gens, f)| {
            let r = ring(vars);
            (germ(&r, gens), map(&r, f))
        })
        .collect()
}
