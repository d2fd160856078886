use std::fs;
use std::path::Path;

use bsato_core::bfun::{self, BfunError, ExponentTuple, TupleF};
use bsato_core::capelli::{self, UeaMatrix};
use bsato_core::exact::FactoredJson;
use bsato_core::genmat::{self, Partition};
use bsato_core::zeta::{self, ResolutionData};
use bsato_core::{FactoredPolynomial, Report, Space, VarId};
use clap::ValueEnum;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use crate::report::Outcome;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(msg.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Maximal minors of a generic m × n matrix.
    Minors,
    /// Sub-maximal Pfaffians of a generic (2n+1) × (2n+1) skew matrix.
    Pfaffian,
}

pub fn space_of(kind: Kind, m: Option<usize>, n: Option<usize>) -> Result<Space, CliError> {
    match kind {
        Kind::Minors => {
            let n = n.ok_or_else(|| usage("minors needs --n"))?;
            Space::matrix(m.unwrap_or(n), n).map_err(usage)
        }
        Kind::Pfaffian => {
            if m.is_some() {
                return Err(usage("pfaffian takes --n only"));
            }
            Space::skew(n.ok_or_else(|| usage("pfaffian needs --n"))?).map_err(usage)
        }
    }
}

fn roots_text(b: &FactoredPolynomial) -> String {
    let roots: Vec<String> = b.roots().iter().map(ToString::to_string).collect();
    format!("[{}]", roots.join(","))
}

pub fn bfun(space: Space, verify: bool, renormalize: bool) -> Outcome {
    let mut out = Outcome::new(Some(space));
    let b = bfun::catalog_bfunction(space);
    out.line(format!("b(s) = {b}"));
    out.line(format!("roots {}", roots_text(&b)));
    let mut result = json!({ "bfunction": b.to_json() });
    if renormalize {
        let bz = bfun::shift_to_bz(&b, space);
        out.line(format!("b_Z(s) = {bz}"));
        result["b_z"] = json!(bz.to_json());
    }
    if verify {
        let t = TupleF::new(space);
        match bfun::recover_pf(&t, &bfun::default_samples(&t)) {
            Ok(rec) => {
                out.line(format!("recovered P_f(s) = {}", rec.polynomial));
                result["recovered"] = json!(rec.polynomial.to_json());
                result["samples"] = json!(rec.samples.len());
                out.report.check("recover", rec.polynomial == b, || {
                    format!("recovered {}, catalog {b}", rec.polynomial)
                });
            }
            Err(e) => out.report.fail("recover", e.to_string()),
        }
    }
    out.result = result;
    out
}

/// The named verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cayley,
    Capelli,
    CapelliDdual,
    Fourier,
    LemmaFsr,
    EigenHwv,
    Plucker,
    Localization,
    SeveralVariables,
    Blowup,
    Cauchy,
    Recover,
    All,
}

impl Suite {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Params {
    pub r: Option<usize>,
    pub max_power: Option<u32>,
    pub max_size: Option<u32>,
    pub print_operator: bool,
}

fn need_matrix(suite: Suite, space: Space) -> Result<(usize, usize), CliError> {
    match space {
        Space::Matrix { m, n } => Ok((m, n)),
        Space::Skew { .. } => Err(usage(format!("{} needs --kind minors", suite.name()))),
    }
}

/// Runs one suite on one space. `space` is `None` only for suites that do
/// not take one.
pub fn verify(suite: Suite, space: Option<Space>, p: &Params) -> Result<Outcome, CliError> {
    let needs_space = || space.ok_or_else(|| usage(format!("{} needs a space", suite.name())));
    let mut out = Outcome::new(space);
    match suite {
        Suite::Cayley => {
            let space = needs_space()?;
            let t = TupleF::new(space);
            let b = bfun::cayley_polynomial(space);
            out.line(format!("cayley scalar: {b}"));
            out.result = json!({ "cayley": b.to_json() });
            for l in 0..t.len() {
                out.report
                    .absorb(&t.labels[l], bfun::verify_cayley(&t, l, p.max_power.unwrap_or(4)));
            }
        }
        Suite::Capelli => {
            let space = match space {
                Some(s) => s,
                None => {
                    let r = p.r.unwrap_or(2);
                    Space::matrix(r, r).map_err(usage)?
                }
            };
            out.space = Some(space);
            let tau = UeaMatrix::polarization(space);
            let abs = capelli::capelli_c(tau.r);
            let real = capelli::capelli_realized(&tau);
            let mut shown = serde_json::Map::new();
            for (a, c) in abs.coeffs.iter().enumerate() {
                out.line(format!("C{a} = {c}"));
                shown.insert(format!("C{a}"), json!(c.to_string()));
            }
            if p.print_operator {
                for (a, c) in real.coeffs.iter().enumerate() {
                    out.line(format!("tau(C{a}) = {c}"));
                    shown.insert(format!("tau(C{a})"), json!(c.to_string()));
                }
            }
            out.result = json!({ "capelli": shown });
            if tau.r == 2 {
                out.report
                    .absorb("display", capelli::verify_capelli_display(&tau));
            }
            out.report
                .absorb("routes", capelli::verify_realization_routes(&tau));
            out.report
                .absorb("centrality", capelli::verify_centrality(&tau, &real));
        }
        Suite::CapelliDdual => {
            let space = needs_space()?;
            need_matrix(suite, space)?;
            if p.print_operator {
                let t = TupleF::new(space);
                let dp = bfun::build_ddual(&t).to_string();
                let dd = bfun::build_dd(&t).to_string();
                out.line(format!("D_partial = {dp}"));
                out.line(format!("D_d = {dd}"));
                out.result = json!({ "D_partial": dp, "D_d": dd });
            }
            out.report
                .absorb("capelli", bfun::verify_capelli_equals_ddual(space));
            out.report
                .absorb("determinantal", bfun::verify_determinantal_dd(space));
        }
        Suite::Fourier => {
            let space = needs_space()?;
            let tau = UeaMatrix::polarization(space);
            out.line(format!("u = {}", capelli::fourier_parameter(space)));
            if p.print_operator {
                let dd = bfun::build_dd(&TupleF::new(space)).to_string();
                out.line(format!("D_d = {dd}"));
                out.result = json!({ "D_d": dd });
            }
            out.report
                .absorb("generators", capelli::verify_fourier_square(&tau, tau.r.min(3)));
            out.report.absorb("dd", bfun::verify_fourier_dd(space));
        }
        Suite::LemmaFsr => {
            let u = capelli::symbolic_u();
            for r in 1..=p.r.unwrap_or(6) {
                out.report
                    .absorb(&format!("r{r}/Fsr"), capelli::verify_lemma_fsr(r, &u));
                out.report
                    .absorb(&format!("r{r}/Fsr1"), capelli::verify_lemma_fsr1(r));
            }
        }
        Suite::EigenHwv => {
            let space = needs_space()?;
            let caps = capelli::capelli_realized(&UeaMatrix::polarization(space));
            for lambda in Partition::up_to(p.max_size.unwrap_or(3), space.n()) {
                let hw = genmat::verify_highest_weight(space, &lambda).map_err(usage)?;
                out.report.absorb("highest-weight", hw);
                let ev = capelli::verify_eigenvalue_on_hwv(space, &lambda, &caps).map_err(usage)?;
                out.report.absorb("eigenvalue", ev);
            }
        }
        Suite::Plucker => {
            let space = needs_space()?;
            let (m, n) = need_matrix(suite, space)?;
            for k in genmat::index_subsets(m, n) {
                out.report.absorb(
                    "relation",
                    genmat::verify_plucker_relation(space, &k).map_err(usage)?,
                );
            }
        }
        Suite::Localization => {
            let space = needs_space()?;
            let rep = match space {
                Space::Matrix { m, n } => genmat::verify_localization_matrix(m, n),
                Space::Skew { n } => genmat::verify_localization_skew(n),
            };
            out.report.absorb("chart", rep);
        }
        Suite::SeveralVariables => {
            let space = needs_space()?;
            let t = TupleF::new(space);
            for total in 0..=p.max_size.unwrap_or(3) {
                for a in ExponentTuple::all_of_total(t.len(), total) {
                    for i in 0..t.len() {
                        let rep = bfun::verify_several_variables(&t, i, &a).map_err(|e| match e {
                            BfunError::UnsupportedSpace(_) => usage(format!(
                                "several-variables needs matrix(n+1,n) or a skew space, got {space}"
                            )),
                            other => usage(other),
                        })?;
                        out.report.absorb("formula", rep);
                    }
                }
            }
        }
        Suite::Blowup => {
            let space = needs_space()?;
            let Space::Skew { n } = space else {
                return Err(usage("blowup needs --kind pfaffian"));
            };
            out.report.absorb("chart", zeta::verify_pfaffian_blowup(n));
        }
        Suite::Cauchy => {
            let space = needs_space()?;
            for d in 0..=p.max_size.unwrap_or(4) {
                out.report
                    .absorb(&format!("d{d}"), genmat::cauchy_check(space, d));
            }
        }
        Suite::Recover => {
            let space = needs_space()?;
            let b = bfun::catalog_bfunction(space);
            let t = TupleF::new(space);
            match bfun::recover_pf(&t, &bfun::default_samples(&t)) {
                Ok(rec) => {
                    out.line(format!("recovered P_f(s) = {}", rec.polynomial));
                    for (a, c) in &rec.samples {
                        out.line(format!("  D_d f^{a} = {c} f^{a}"));
                    }
                    out.result = json!({ "recovered": rec.polynomial.to_json() });
                    out.report.check("catalog", rec.polynomial == b, || {
                        format!("recovered {}, catalog {b}", rec.polynomial)
                    });
                }
                Err(e) => out.report.fail("catalog", e.to_string()),
            }
        }
        Suite::All => return verify_all(p),
    }
    Ok(out)
}

/// Every suite on every space up to `--max-size` (default 3), run in
/// parallel and merged in name order.
fn verify_all(p: &Params) -> Result<Outcome, CliError> {
    let size = p.max_size.unwrap_or(3) as usize;
    if size == 0 {
        return Err(usage("--max-size must be at least 1"));
    }
    let mut jobs: Vec<(Suite, Option<Space>, Params)> = vec![(Suite::LemmaFsr, None, Params::default())];
    let small = |max_size: u32| Params {
        max_size: Some(max_size),
        max_power: Some(3),
        ..Params::default()
    };
    let mut spaces: Vec<Space> = (1..=size)
        .flat_map(|m| (1..=m).map(move |n| Space::Matrix { m, n }))
        .collect();
    spaces.extend((1..=size.saturating_sub(1).max(1)).map(|n| Space::Skew { n }));
    for &space in &spaces {
        let mut suites = vec![
            (Suite::Cayley, small(0)),
            (Suite::Recover, small(0)),
            (Suite::Fourier, small(0)),
            (Suite::Localization, small(0)),
            (Suite::Cauchy, small(size as u32)),
            (Suite::EigenHwv, small(2)),
        ];
        match space {
            Space::Matrix { m, n } => {
                suites.push((Suite::CapelliDdual, small(0)));
                suites.push((Suite::Plucker, small(0)));
                if m == n + 1 {
                    suites.push((Suite::SeveralVariables, small(2)));
                }
            }
            Space::Skew { .. } => suites.push((Suite::SeveralVariables, small(2))),
        }
        jobs.extend(suites.into_iter().map(|(s, q)| (s, Some(space), q)));
    }
    if size >= 2 {
        jobs.push((Suite::Capelli, Space::matrix(2, 2).ok(), Params::default()));
        jobs.push((
            Suite::Blowup,
            Space::skew(size.min(3) - 1).ok(),
            Params::default(),
        ));
    }
    let reports: Vec<(String, Report)> = jobs
        .par_iter()
        .map(|(suite, space, q)| {
            let prefix = match space {
                Some(s) => format!("{}/{s}", suite.name()),
                None => suite.name(),
            };
            verify(*suite, *space, q).map(|o| (prefix, o.report))
        })
        .collect::<Result<_, _>>()?;
    let mut out = Outcome::new(None);
    out.line(format!("{} suites", reports.len()));
    for (prefix, rep) in reports {
        out.report.absorb(&prefix, rep);
    }
    Ok(out)
}

/// A resolution file: `ResolutionData` plus an optional `bfunction` to check
/// against instead of the catalog.
#[derive(Deserialize)]
struct ResolutionFile {
    #[serde(flatten)]
    data: ResolutionData,
    #[serde(default)]
    bfunction: Option<FactoredJson>,
}

pub fn zeta(space: Option<Space>, resolution: Option<&Path>, check_smc: bool) -> Result<Outcome, CliError> {
    let (data, custom_b) = match resolution {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let file: ResolutionFile =
                serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let b = file
                .bfunction
                .map(|j| j.parse(VarId::S))
                .transpose()
                .map_err(|e| usage(format!("{}: bfunction: {e}", path.display())))?;
            (file.data, b)
        }
        None => {
            let space = space.ok_or_else(|| usage("zeta needs a kind with dimensions, or --resolution"))?;
            (zeta::resolution_for(space), None)
        }
    };
    data.validate().map_err(usage)?;
    let z = zeta::zeta_of(&data).map_err(usage)?;
    let poles = zeta::pole_set(&data);
    let mut out = Outcome::new(space);
    let pole_text: Vec<String> = poles.iter().map(ToString::to_string).collect();
    out.line(format!("Z(s) = {z}"));
    out.line(format!("poles [{}]", pole_text.join(",")));
    let mut result = json!({
        "zeta": { "numerator": z.value.numerator().to_string(), "denominator": z.value.denominator().to_string() },
        "poles": pole_text,
    });
    if check_smc {
        let b = match (custom_b, space) {
            (Some(b), _) => b,
            (None, Some(s)) => bfun::catalog_bfunction(s),
            (None, None) => {
                return Err(usage(
                    "--check-smc needs a kind or a bfunction in the resolution file",
                ))
            }
        };
        out.line(format!("b(s) = {b}"));
        result["bfunction"] = json!(b.to_json());
        let rep = zeta::smc_check(&b, &data).map_err(usage)?;
        out.line(format!("SMC: {}", rep.status()));
        out.report.absorb("smc", rep);
    }
    out.result = result;
    Ok(out)
}
