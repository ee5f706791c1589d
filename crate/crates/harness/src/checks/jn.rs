//! Exponential-moment budgets for oscillating grids. The tail-decay chain
//! is proved by two monotonicity facts and must hold with zero violations:
//! the level set of height t pays at least phi_p(alpha t / B) per unit mass,
//! and phi_p(x) exp(-x) is nondecreasing, so levels above B decay like
//! exp(-alpha t / B) against the measured budget.

use crate::corpus::Corpus;
use crate::report::CheckReport;
use crate::special::{ln_gamma, phi_lower};
use crate::tol::{SLACK_EXPLICIT, TOL_SERIES, SERIES_TERM_CAP, SERIES_TERM_CUTOFF, VACUITY_RELATIVE};
use spaces::{
    bmo_norm, family_norm_cached, family_profiles, rearrange, CubeFamily, Error, Exponent,
    GridFunction, LorentzMethod, MorreyFlavor, MorreyIndices, CUBE_FAMILY_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JnSetting {
    Global,
    Morrey,
}

const TAIL_LEVELS: [f64; 4] = [1.2, 2.0, 4.0, 8.0];

fn integer_order(p: f64) -> Result<u32, Error> {
    if !(p.is_finite() && p >= 1.0 && p.fract() == 0.0 && p <= 64.0) {
        return Err(Error::InvalidIndices(format!(
            "the moment series starts at an integer power, so p must be a positive integer (got {p})"
        )));
    }
    Ok(p as u32)
}

/// Sum of phi_p(alpha |f| / scale) over the grid cells, as a measure integral.
fn phi_budget(grid: &GridFunction, order: u32, alpha_over_scale: f64) -> f64 {
    let cv = grid.cell_volume();
    grid.cells()
        .iter()
        .map(|&c| phi_lower(order, alpha_over_scale * c.abs()) * cv)
        .sum()
}

fn oscillation_scale(grid: &GridFunction) -> Result<Option<f64>, Error> {
    let sup = grid.sup_norm();
    if sup == 0.0 {
        return Ok(None);
    }
    let family = CubeFamily::all_cubes_capped(grid, CUBE_FAMILY_CAP);
    let osc = bmo_norm(grid, &family)?;
    if osc <= VACUITY_RELATIVE * sup {
        Ok(None)
    } else {
        Ok(Some(osc))
    }
}

pub fn check_john_nirenberg(
    corpus: &Corpus,
    p: f64,
    alphas: &[f64],
    kappa: f64,
    setting: JnSetting,
) -> Result<Vec<CheckReport>, Error> {
    let order = integer_order(p)?;
    if alphas.is_empty() || alphas.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(Error::InvalidArgument(
            "the exponential rate grid must list positive finite values".into(),
        ));
    }
    match setting {
        JnSetting::Global => global_reports(corpus, order, p, alphas),
        JnSetting::Morrey => morrey_reports(corpus, order, p, alphas, kappa),
    }
}

fn global_reports(
    corpus: &Corpus,
    order: u32,
    p: f64,
    alphas: &[f64],
) -> Result<Vec<CheckReport>, Error> {
    let alpha_label = alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
    let mut integral = CheckReport::new("exp-integral-global")
        .param("p", p)
        .param("alpha", &alpha_label);
    let mut tail = CheckReport::new("exp-tail-decay")
        .param("p", p)
        .param("alpha", &alpha_label);
    let mut series = CheckReport::new("series-vs-moments").param("p", p);

    let mut sup_per_alpha = vec![0.0f64; alphas.len()];
    let mut best = (0.0f64, 0.0f64, String::new());
    let series_alpha = alphas[alphas.len() / 2];

    for entry in &corpus.grids {
        let grid = &entry.grid;
        let scale = match oscillation_scale(grid)? {
            Some(s) => s,
            None => {
                for _ in alphas {
                    integral.record_vacuous();
                    tail.record_vacuous();
                }
                series.record_vacuous();
                continue;
            }
        };
        let rp = rearrange(&grid.global_profile());
        let moment = (rp.lp_norm(Exponent::Finite(p))? / scale).powf(p);

        for (ai, &alpha) in alphas.iter().enumerate() {
            let budget = phi_budget(grid, order, alpha / scale);
            if !budget.is_finite() {
                integral.record_vacuous();
                integral.note(&format!(
                    "{}: budget overflows at alpha = {alpha}; rate too aggressive for this range",
                    entry.id
                ));
                for _ in TAIL_LEVELS {
                    tail.record_vacuous();
                }
                continue;
            }
            let ratio = budget / moment;
            integral.cases += 1;
            if ratio > integral.worst_ratio {
                integral.worst_ratio = ratio;
            }
            if ratio > sup_per_alpha[ai] {
                sup_per_alpha[ai] = ratio;
            }
            if ratio > best.0 {
                best = (ratio, alpha, entry.id.clone());
            }

            // decay chain: d(t) <= budget / phi_p(alpha t / B)
            //            <= budget * e^alpha / phi_p(alpha) * e^(-alpha t / B)
            let gate = phi_lower(order, alpha);
            for &level in &TAIL_LEVELS {
                let t = level * scale;
                let lhs = rp.distribution(t)?;
                let rhs = budget * (alpha - alpha * level).exp() / gate;
                if rhs == 0.0 {
                    // unreachable while sup > 0 keeps the budget positive
                    tail.record_vacuous();
                    continue;
                }
                tail.record(
                    &format!("{}(alpha={alpha},t={level}B)", entry.id),
                    lhs,
                    rhs,
                    SLACK_EXPLICIT,
                );
            }
        }

        // regroup the cell-wise series by power and compare
        let direct = phi_budget(grid, order, series_alpha / scale);
        if !direct.is_finite() {
            series.record_vacuous();
            continue;
        }
        let cv = grid.cell_volume();
        let mut total = 0.0f64;
        let mut j = order;
        loop {
            let lg = ln_gamma(f64::from(j) + 1.0);
            let term: f64 = grid
                .cells()
                .iter()
                .filter(|c| c.abs() > 0.0)
                .map(|&c| (f64::from(j) * (series_alpha * c.abs() / scale).ln() - lg).exp() * cv)
                .sum();
            total += term;
            if term < SERIES_TERM_CUTOFF * total || j >= order + SERIES_TERM_CAP as u32 {
                break;
            }
            j += 1;
        }
        series.record_agreement(&format!("{}(alpha={series_alpha})", entry.id), direct, total, TOL_SERIES);
    }

    finish_estimate(&mut integral, alphas, &sup_per_alpha, best);
    integral.note("moment side uses secondary exponent equal to the primary");
    series.note(&format!("rate fixed at alpha = {series_alpha} for the regrouping check"));

    let mut probe = CheckReport::new("series-radius-probe");
    let mut prev = 0.0f64;
    let mut monotone = true;
    let mut shown = Vec::new();
    for &j in &[10.0f64, 100.0, 1000.0, 10000.0] {
        let ratio = (1.0 + 1.0 / j).powf(j);
        if ratio < prev {
            monotone = false;
        }
        prev = ratio;
        shown.push(format!("j={j}: {ratio:.9}"));
    }
    let limit = (1.0f64 + 1e-4).powf(1e4);
    probe.record(
        "coefficient-ratio:j=1e4",
        (limit - std::f64::consts::E).abs().max(1e-12),
        1e-3 * std::f64::consts::E,
        0.0,
    );
    if !monotone {
        probe.record("coefficient-ratio:monotone", 1.0, 0.5, 0.0);
    } else {
        probe.note("ratio increases toward e, so the majorant series converges only below 1/e");
    }
    probe.note(&shown.join("; "));

    Ok(vec![integral, tail, series, probe])
}

fn morrey_reports(
    corpus: &Corpus,
    order: u32,
    p: f64,
    alphas: &[f64],
    kappa: f64,
) -> Result<Vec<CheckReport>, Error> {
    let idx = MorreyIndices::new(p, kappa, Some(Exponent::Finite(p)))?;
    let alpha_label = alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
    let mut report = CheckReport::new("exp-integral-morrey")
        .param("p", p)
        .param("kappa", kappa)
        .param("beta", &alpha_label);

    let mut sup_per_alpha = vec![0.0f64; alphas.len()];
    let mut best = (0.0f64, 0.0f64, String::new());

    for entry in &corpus.grids {
        let grid = &entry.grid;
        let scale = match oscillation_scale(grid)? {
            Some(s) => s,
            None => {
                for _ in alphas {
                    report.record_vacuous();
                }
                continue;
            }
        };
        let family = CubeFamily::all_cubes(grid);
        let profiles = family_profiles(grid, &family)?;
        let lm = family_norm_cached(&profiles, &idx, MorreyFlavor::LorentzMorrey, LorentzMethod::ClosedForm)?;
        if lm == 0.0 {
            for _ in alphas {
                report.record_vacuous();
            }
            continue;
        }
        let moment = (lm / scale).powf(p);
        let stride = (family.len() / 48).max(1);
        for (ai, &alpha) in alphas.iter().enumerate() {
            let mut overflow = false;
            for (ci, cube) in family.cubes().iter().enumerate().step_by(stride) {
                let local = grid.restrict_profile(cube)?;
                let budget: f64 = local
                    .atoms()
                    .iter()
                    .map(|a| phi_lower(order, alpha * a.value / scale) * a.mass)
                    .sum();
                if !budget.is_finite() {
                    overflow = true;
                    continue;
                }
                let mass = profiles.masses[ci];
                let ratio = budget / (mass.powf(kappa) * moment);
                report.cases += 1;
                if ratio > report.worst_ratio {
                    report.worst_ratio = ratio;
                }
                if ratio > sup_per_alpha[ai] {
                    sup_per_alpha[ai] = ratio;
                }
                if ratio > best.0 {
                    best = (ratio, alpha, format!("{}#{ci}", entry.id));
                }
            }
            if overflow {
                report.record_vacuous();
                report.note(&format!(
                    "{}: some cubes overflow at beta = {alpha}",
                    entry.id
                ));
            }
        }
    }

    finish_estimate(&mut report, alphas, &sup_per_alpha, best);
    report.note("cube mass enters with the same power that scales the cube-family norm");
    Ok(vec![report])
}

fn finish_estimate(report: &mut CheckReport, alphas: &[f64], sup_per_alpha: &[f64], best: (f64, f64, String)) {
    if best.2.is_empty() {
        report.pass_hint = Some(report.vacuous == report.cases);
        report.note("no case produced a usable ratio");
        return;
    }
    report.constant_estimate = Some(best.0);
    report.pass_hint = Some(best.0.is_finite());
    report.note(&format!(
        "sup ratio {:.6e} attained at rate {} by {}",
        best.0, best.1, best.2
    ));
    let table = alphas
        .iter()
        .zip(sup_per_alpha)
        .map(|(a, s)| format!("{a}:{s:.4e}"))
        .collect::<Vec<_>>()
        .join(" ");
    report.note(&format!("per-rate suprema {table}"));
}
