//! The same interpolation program per cube family: sup-norm branches with
//! explicit constants, oscillation growth with an estimated constant, and
//! the per-cube ingredients (average domination, local decay, the cutoff
//! doubling claim, and the logarithmic gap estimate).

use crate::corpus::Corpus;
use crate::report::CheckReport;
use crate::special::{pow_ld, weak_sup_factor};
use crate::tol::{SLACK_EXPLICIT, VACUITY_RELATIVE};
use spaces::{
    bmo_norm, family_norm_cached, family_profiles, CubeFamily, Error, Exponent, LorentzIndices,
    LorentzMethod, MorreyFlavor, MorreyIndices,
};

use super::lorentz::finish_growth_report;

const LOCAL_S_FRACTIONS: [f64; 3] = [0.25, 0.6, 0.9];
const LOCAL_TAIL_FACTORS: [f64; 2] = [2.0, 10.0];

pub fn check_morrey_interpolation(
    corpus: &Corpus,
    p: f64,
    r: Exponent,
    kappa: f64,
    qs: &[f64],
) -> Result<Vec<CheckReport>, Error> {
    let lm_idx = MorreyIndices::new(p, kappa, Some(r))?;
    let weak_idx = MorreyIndices::new(p, kappa, None)?;
    let pair_idx = LorentzIndices::new(p, r)?;
    if let Exponent::Finite(rv) = r {
        if rv <= p {
            return Err(Error::InvalidIndices(format!(
                "the finite-secondary sup bound needs p < r < q, got p = {p}, r = {rv}"
            )));
        }
    }
    let decay_constant = if p > 1.0 {
        Some(pair_idx.hardy_decay_constant()?)
    } else {
        None
    };

    let q_label = qs
        .iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let with_params = |id: &str| -> CheckReport {
        CheckReport::new(id)
            .param("p", p)
            .param("r", r)
            .param("kappa", kappa)
            .param("q", &q_label)
    };
    let mut sup_bound = with_params("morrey-sup-bound");
    let mut weak_bound = with_params("weak-morrey-sup-bound");
    let mut growth = with_params("morrey-bmo-growth");
    let mut local_bounds = with_params("local-average-bounds");
    let mut doubling = with_params("cutoff-bmo-doubling");
    let mut log_gap = with_params("local-log-gap");

    let mut growth_sup_per_q: Vec<f64> = vec![0.0; qs.len()];
    let mut growth_best = (0.0f64, 0.0f64, String::new());
    let mut gap_best = (0.0f64, String::new());

    for entry in &corpus.grids {
        let family = CubeFamily::all_cubes(&entry.grid);
        let profiles = family_profiles(&entry.grid, &family)?;
        let sup = entry.grid.sup_norm();
        if sup == 0.0 {
            sup_bound.record_vacuous();
            weak_bound.record_vacuous();
            growth.record_vacuous();
            local_bounds.record_vacuous();
            doubling.record_vacuous();
            log_gap.record_vacuous();
            continue;
        }
        let osc = bmo_norm(&entry.grid, &family)?;
        let degenerate = osc <= VACUITY_RELATIVE * sup;

        let lm = family_norm_cached(&profiles, &lm_idx, MorreyFlavor::LorentzMorrey, LorentzMethod::ClosedForm)?;
        let weak = family_norm_cached(&profiles, &weak_idx, MorreyFlavor::WeakMorrey, LorentzMethod::ClosedForm)?;

        for (qi, &q) in qs.iter().enumerate() {
            let plain_q = MorreyIndices::new(q, kappa, None)?;
            let lhs = family_norm_cached(&profiles, &plain_q, MorreyFlavor::Morrey, LorentzMethod::ClosedForm)?;

            if let Exponent::Finite(rv) = r {
                if q > rv {
                    let rhs = 2.0 * pow_ld(lm, p / q) * pow_ld(sup, 1.0 - p / q);
                    sup_bound.record(&format!("{}:q={q}", entry.id), lhs, rhs, SLACK_EXPLICIT);
                }
            }
            if q > p {
                let rhs = weak_sup_factor(p, q) * pow_ld(weak, p / q) * pow_ld(sup, 1.0 - p / q);
                weak_bound.record(&format!("{}:q={q}", entry.id), lhs, rhs, SLACK_EXPLICIT);
            }

            let lower = match r {
                Exponent::Finite(rv) => rv,
                Exponent::Infinite => p,
            };
            if q > lower {
                if degenerate {
                    growth.record_vacuous();
                } else {
                    let rhs = q * pow_ld(lm, p / q) * pow_ld(osc, 1.0 - p / q);
                    let ratio = lhs / rhs;
                    growth.cases += 1;
                    if ratio > growth.worst_ratio {
                        growth.worst_ratio = ratio;
                    }
                    if ratio > growth_sup_per_q[qi] {
                        growth_sup_per_q[qi] = ratio;
                    }
                    if ratio > growth_best.0 {
                        growth_best = (ratio, q, entry.id.clone());
                    }
                }
            }
        }

        // per-cube ingredients on a bounded deterministic sample
        let stride = (family.len() / 48).max(1);
        for (ci, _cube) in family.cubes().iter().enumerate().step_by(stride) {
            let rp = &profiles.rearrangements[ci];
            let mass = profiles.masses[ci];
            if rp.is_zero() {
                local_bounds.record_vacuous();
                continue;
            }
            let local_lorentz = rp.lorentz_norm(&pair_idx, LorentzMethod::ClosedForm)?;
            for (si, frac) in LOCAL_S_FRACTIONS.iter().enumerate() {
                let s = mass * frac;
                let star = rp.evaluate_star(s)?;
                let avg = rp.hardy_average(s)?;
                if star > 0.0 {
                    local_bounds.record(
                        &format!("{}:cube{ci}:dominates:s{si}", entry.id),
                        star,
                        avg,
                        SLACK_EXPLICIT,
                    );
                }
                if let Some(c1) = decay_constant {
                    local_bounds.record(
                        &format!("{}:cube{ci}:decay:s{si}", entry.id),
                        avg,
                        c1 * pow_ld(s, -1.0 / p) * local_lorentz,
                        SLACK_EXPLICIT,
                    );
                }
            }
            if let Some(c1) = decay_constant {
                for (ti, factor) in LOCAL_TAIL_FACTORS.iter().enumerate() {
                    let s = mass * factor;
                    let avg = rp.hardy_average(s)?;
                    local_bounds.record(
                        &format!("{}:cube{ci}:decay:tail{ti}", entry.id),
                        avg,
                        c1 * pow_ld(s, -1.0 / p) * local_lorentz,
                        SLACK_EXPLICIT,
                    );
                }
            }

            // logarithmic gap estimate, folded into the growth constant
            if !degenerate {
                for (lo_i, lo) in [0.1, 0.3].iter().enumerate() {
                    for (hi_i, hi) in [0.6, 1.0].iter().enumerate() {
                        let s = mass * lo;
                        let t = mass * hi;
                        let gap = rp.hardy_average(s)? - rp.hardy_average(t)?;
                        let denom = osc * (t / s).ln();
                        let ratio = (gap / denom).max(0.0);
                        log_gap.cases += 1;
                        if ratio > log_gap.worst_ratio {
                            log_gap.worst_ratio = ratio;
                        }
                        if ratio > gap_best.0 {
                            gap_best = (ratio, format!("{}:cube{ci}:s{lo_i}t{hi_i}", entry.id));
                        }
                    }
                }
            }
        }

        // cutoff doubling: restricting to a cube at most doubles the
        // oscillation norm, claimed with constant exactly 2
        if degenerate {
            doubling.record_vacuous();
        } else {
            let rhs = 2.0 * osc;
            for (ci, cube) in family.cubes().iter().enumerate() {
                let cut = entry.grid.cutoff(cube)?;
                let lhs = bmo_norm(&cut, &family)?;
                doubling.record(&format!("{}:cube{ci}", entry.id), lhs, rhs, SLACK_EXPLICIT);
            }
        }
    }

    finish_growth_report(&mut growth, qs, &growth_sup_per_q, growth_best);

    log_gap.constant_estimate = Some(gap_best.0);
    log_gap.pass_hint = Some(gap_best.0.is_finite());
    if !gap_best.1.is_empty() {
        log_gap.note(format!(
            "largest average-drop to oscillation-by-log ratio {:.6} at {}",
            gap_best.0, gap_best.1
        ));
    }
    log_gap.note("no explicit constant is claimed here; the factor feeds the growth estimate");

    if !doubling.violations.is_empty() {
        doubling.note(format!(
            "{} cubes exceed the doubling claim; a spike cut out of a slowly varying tail keeps \
             its full oscillation while the original profile spreads it below the factor-2 line",
            doubling.violations.len()
        ));
    }

    Ok(vec![
        sup_bound,
        weak_bound,
        growth,
        local_bounds,
        doubling,
        log_gap,
    ])
}
