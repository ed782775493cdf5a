//! Dispatching a command on a loaded problem and assembling the JSON report.

use std::time::{Duration, Instant};

use clap::ValueEnum;
use serde::Serialize;

use germinv_core::diff::{MapGerm, OneFormCollection};
use germinv_core::invariants::{
    br_minus_via_formula, bruce_roberts, chern_index, chern_number, cusps_count, describe_inputs,
    eta_collections, euler_obstruction_function, identity_report, inputs_digest, linear_index,
    milnor_hypersurface, milnor_icis, milnor_restricted, suspension_check, tjurina_icis,
    IdentityCheck, InvariantReport, LinearReference,
};
use germinv_core::logarithmic::{cohen_macaulay_report, lcv_minus_ideal, tangent_module, CmReport};
use germinv_core::{Budget, Error, Polynomial, Result, Value};

use crate::problem::ProblemFile;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// μ(X) of the variety and μ of each map component
    Milnor,
    /// μ(f_i|X) for each map component
    MilnorRestricted,
    /// τ(X)
    Tjurina,
    /// Bruce–Roberts number of each map component
    Br,
    /// Relative Bruce–Roberts number of each component, directly and by formula
    BrRel,
    /// Indices of η1, η2 and of the linear reference collection
    ChernIndex,
    /// Chern numbers of η1, η2 and the Euler obstruction of f
    Chern,
    /// Cusp count of a map to the plane
    Cusps,
    /// Dimension and depth of the relative logarithmic characteristic variety
    LcvCm,
    /// All identity checks for a surface map to the plane
    Identities,
    /// Suspension multiplicativity of the relative Bruce–Roberts number
    SuspensionCheck,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub step_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub timings: bool,
}

/// How a run ended, most severe last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    IdentityFailed,
    PreconditionFailed,
    CertificationFailed,
    BudgetExhausted,
    Interrupted,
}

impl Status {
    fn of(e: &Error) -> Status {
        match e {
            Error::BudgetExhausted { .. } => Status::BudgetExhausted,
            Error::Interrupted => Status::Interrupted,
            Error::CertificationFailed(_) => Status::CertificationFailed,
            _ => Status::PreconditionFailed,
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::IdentityFailed => 1,
            Status::PreconditionFailed => 2,
            Status::BudgetExhausted | Status::Interrupted => 3,
            Status::CertificationFailed => 4,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ProblemSummary {
    pub ring: Vec<String>,
    pub variety: Vec<String>,
    pub map: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suspension: Option<SuspensionSummary>,
    pub digest: String,
}

#[derive(Debug, Serialize)]
pub struct SuspensionSummary {
    pub variables: Vec<String>,
    pub h: String,
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

impl ProblemSummary {
    fn of(p: &ProblemFile) -> Self {
        let mut inputs = describe_inputs(&p.variety, &p.map);
        let linear = p.linear.as_ref().map(|l| l.iter().map(|s| strings(s)).collect::<Vec<_>>());
        if let Some(l) = &linear {
            inputs.extend(l.iter().map(|s| format!("linear {}", s.join(","))));
        }
        let suspension = p.suspension.as_ref().map(|s| SuspensionSummary {
            variables: s.ring.names().to_vec(),
            h: s.h.to_string(),
        });
        if let Some(s) = &suspension {
            inputs.push(format!("suspension {} ; {}", s.variables.join(","), s.h));
        }
        ProblemSummary {
            ring: p.ring.names().to_vec(),
            variety: strings(p.variety.generators()),
            map: strings(&p.map),
            linear,
            suspension,
            digest: inputs_digest(&inputs),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub problem: ProblemSummary,
    pub seed: u64,
    pub step_budget: Option<u64>,
    pub status: Status,
    /// Reduction steps spent, a deterministic measure of work.
    pub steps: u64,
    /// The single result's value, when the command has exactly one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<InvariantReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<IdentityCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohen_macaulay: Option<CmReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock time, only with `--timings` since it breaks byte-identical output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// What every command produces before the report is assembled.
#[derive(Default)]
struct Findings {
    results: Vec<InvariantReport>,
    identities: Option<Vec<IdentityCheck>>,
    cohen_macaulay: Option<CmReport>,
    /// A failure that prevented the command from producing any finding.
    failure: Option<Error>,
}

struct Ctx<'p, 'b> {
    p: &'p ProblemFile,
    seed: u64,
    budget: &'p Budget<'b>,
    inputs: Vec<String>,
}

impl Ctx<'_, '_> {
    fn report(&self, name: &str, route: &str, assumptions: &[&str], result: Result<Value>) -> InvariantReport {
        let assumptions = assumptions.iter().map(|s| s.to_string()).collect();
        InvariantReport::new(name, route, &self.inputs, assumptions, result)
    }

    fn map(&self) -> Result<MapGerm> {
        MapGerm::new(&self.p.ring, self.p.map.clone())
    }

    fn plane_map(&self) -> Result<MapGerm> {
        match self.p.map.len() {
            2 => self.map(),
            n => Err(Error::Shape(format!("this command needs a map with two components, the problem has {n}"))),
        }
    }

    fn first_component(&self) -> Result<&Polynomial> {
        self.p.map.first().ok_or_else(|| Error::Shape("this command needs a `map:` line".into()))
    }

    fn reference(&self) -> Result<LinearReference> {
        match &self.p.linear {
            None => Ok(LinearReference::seeded(self.seed)),
            Some(l) => Ok(LinearReference::Explicit {
                collection: OneFormCollection::of_differentials(&self.p.ring, self.p.variety.dim(), l)?,
                seed: self.seed,
            }),
        }
    }

    fn linear_assumption(&self) -> &'static str {
        if self.p.linear.is_some() {
            "linear reference: the problem's explicit collection, genericity assumed"
        } else {
            "linear reference: a seeded generic collection, certified by agreement of several draws"
        }
    }

    fn component_label(i: usize) -> String {
        format!("f{}", i + 1)
    }

    fn run(&self, command: Command) -> Result<Findings> {
        let x = &self.p.variety;
        let b = self.budget;
        let mut f = Findings::default();
        match command {
            Command::Milnor => {
                f.results.push(self.report(
                    "milnor_variety",
                    "alternating sum of Lê–Greuel colengths along the defining equations",
                    &["each partial intersection X_j is an ICIS (not verified)"],
                    milnor_icis(x, b),
                ));
                for (i, g) in self.p.map.iter().enumerate() {
                    f.results.push(self.report(
                        &format!("milnor_{}", Self::component_label(i)),
                        "colength of the Jacobian ideal",
                        &[],
                        milnor_hypersurface(g, b),
                    ));
                }
            }
            Command::MilnorRestricted => {
                self.first_component()?;
                for (i, g) in self.p.map.iter().enumerate() {
                    f.results.push(self.report(
                        &format!("milnor_restricted_{}", Self::component_label(i)),
                        "colength of I_X plus the maximal minors of d(φ, f)",
                        &["X is an ICIS (not verified)"],
                        milnor_restricted(x, g, b),
                    ));
                }
            }
            Command::Tjurina => {
                f.results.push(self.report(
                    "tjurina_variety",
                    "colength of the Jacobian module plus I_X times the free module",
                    &["X is an ICIS (not verified)"],
                    tjurina_icis(x, b),
                ));
            }
            Command::Br | Command::BrRel => {
                self.first_component()?;
                let relative = command == Command::BrRel;
                let (stem, route) = if relative {
                    ("br_relative", "colength of df(Θ_X) + I_X")
                } else {
                    ("br", "colength of df(Θ_X)")
                };
                for (i, g) in self.p.map.iter().enumerate() {
                    let label = Self::component_label(i);
                    f.results.push(self.report(
                        &format!("{stem}_{label}"),
                        route,
                        &[],
                        bruce_roberts(g, x, relative, b),
                    ));
                    if relative {
                        f.results.push(self.report(
                            &format!("{stem}_{label}_formula"),
                            "μ(X) + μ(X ∩ f⁻¹(0)) − τ(X)",
                            &["X and X ∩ f⁻¹(0) are ICIS (not verified)"],
                            br_minus_via_formula(x, g, b),
                        ));
                    }
                }
            }
            Command::ChernIndex => {
                let (eta1, eta2) = eta_collections(x, &self.plane_map()?)?;
                let route = "colength of I_X plus the minors of each stacked subcollection";
                f.results.push(self.report("index_eta1", route, &[], chern_index(x, &eta1, b)));
                f.results.push(self.report("index_eta2", route, &[], chern_index(x, &eta2, b)));
                let reference = self.reference()?;
                f.results.push(self.report(
                    "index_linear",
                    route,
                    &[self.linear_assumption()],
                    linear_index(x, eta1.shape(), &reference, b).map(Value::Finite),
                ));
            }
            Command::Chern => {
                let map = self.plane_map()?;
                let (eta1, eta2) = eta_collections(x, &map)?;
                let reference = self.reference()?;
                let route = "index of the collection minus the index of a linear collection";
                let assumptions = [self.linear_assumption()];
                f.results.push(self.report("chern_eta1", route, &assumptions, chern_number(x, &eta1, &reference, b)));
                f.results.push(self.report("chern_eta2", route, &assumptions, chern_number(x, &eta2, &reference, b)));
                let [f1, f2] = [&self.p.map[0], &self.p.map[1]];
                f.results.push(euler_obstruction_function(x, f1, f2, &reference, b));
            }
            Command::Cusps => {
                f.results.push(self.report(
                    "cusps",
                    "colength of I_X plus the β generators",
                    &["f|X is 𝒜-finite (not verified)"],
                    cusps_count(x, &self.plane_map()?, b),
                ));
            }
            Command::LcvCm => {
                let theta = tangent_module(x, b)?;
                let l = lcv_minus_ideal(x, &theta)?;
                f.cohen_macaulay = Some(cohen_macaulay_report(&l, b)?);
            }
            Command::Identities => {
                f.identities = Some(identity_report(x, &self.plane_map()?, &self.reference()?, b)?);
            }
            Command::SuspensionCheck => {
                let g = self.first_component()?;
                let h = self.p.suspension.as_ref().map(|s| &s.h);
                f.identities = Some(vec![suspension_check(x, g, h, b)]);
            }
        }
        Ok(f)
    }
}

pub fn run(command: Command, problem: &ProblemFile, cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let deadline = cfg.time_budget.map(|t| start + t);
    let past_deadline = move || deadline.is_some_and(|d| Instant::now() >= d);
    let mut budget = match cfg.step_budget {
        Some(n) => Budget::with_steps(n),
        None => Budget::unlimited(),
    };
    if deadline.is_some() {
        budget = budget.with_interrupt(&past_deadline);
    }
    let ctx = Ctx {
        p: problem,
        seed: cfg.seed,
        budget: &budget,
        inputs: describe_inputs(&problem.variety, &problem.map),
    };
    log::info!("running {command:?} with seed {}", cfg.seed);
    let findings = ctx.run(command).unwrap_or_else(|e| Findings { failure: Some(e), ..Findings::default() });

    let causes = findings.failure.iter().chain(findings.results.iter().filter_map(|r| r.cause.as_ref()));
    let identity_statuses = findings.identities.iter().flatten().map(|c| match &c.cause {
        Some(e) => Status::of(e),
        None if !c.holds => Status::IdentityFailed,
        None => Status::Ok,
    });
    let status = causes.map(Status::of).chain(identity_statuses).max().unwrap_or(Status::Ok);

    let value = match findings.results.as_slice() {
        [only] => only.value,
        _ => None,
    };
    Report {
        schema_version: SCHEMA_VERSION,
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command,
        problem: ProblemSummary::of(problem),
        seed: cfg.seed,
        step_budget: cfg.step_budget,
        status,
        steps: budget.used(),
        value,
        results: findings.results,
        identities: findings.identities,
        cohen_macaulay: findings.cohen_macaulay,
        error: findings.failure.as_ref().map(ToString::to_string),
        elapsed_ms: cfg.timings.then(|| start.elapsed().as_millis() as u64),
    }
}
