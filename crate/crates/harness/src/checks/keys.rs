//! Pointwise running-average bounds: domination of the decreasing
//! rearrangement, decay through the L^p and Lorentz norms, and the
//! logarithmic modulus of continuity with constant exactly 1.

use crate::corpus::Corpus;
use crate::report::CheckReport;
use crate::special::pow_ld;
use crate::tol::{SLACK_EXPLICIT, SLACK_QUADRATURE};
use spaces::{rearrange, Error, Exponent, LorentzIndices, LorentzMethod};

const T_GRID_POINTS: usize = 12;
const KEY2_FRACTIONS: [f64; 2] = [0.1, 0.5];

pub fn check_pointwise_keys(corpus: &Corpus, p: f64, r: Exponent) -> Result<Vec<CheckReport>, Error> {
    let idx = LorentzIndices::new(p, r)?;
    let decay = idx.hardy_decay_constant()?;

    let mut rep = CheckReport::new("pointwise-keys").param("p", p).param("r", r);
    let mut fd_cases = 0usize;
    let mut fd_worst = 0.0f64;

    for entry in &corpus.profiles {
        if entry.profile.is_zero() {
            rep.record_vacuous();
            continue;
        }
        let rp = rearrange(&entry.profile);
        let total = entry.profile.total_mass();
        let lp = rp.lp_norm(Exponent::Finite(p))?;
        let lorentz = rp.lorentz_norm(&idx, LorentzMethod::ClosedForm)?;
        let gap_sup = rp.w_functional();

        for j in 0..T_GRID_POINTS {
            let t = total * 10f64.powf(-3.0 + 6.0 * j as f64 / (T_GRID_POINTS - 1) as f64);
            let star = rp.evaluate_star(t)?;
            let avg = rp.hardy_average(t)?;

            if star > 0.0 {
                rep.record(&format!("{}:dominates:t{j}", entry.id), star, avg, SLACK_EXPLICIT);
            }
            rep.record(
                &format!("{}:lp-decay:t{j}", entry.id),
                avg,
                pow_ld(t, -1.0 / p) * lp,
                SLACK_EXPLICIT,
            );
            rep.record(
                &format!("{}:lorentz-decay:t{j}", entry.id),
                avg,
                decay * pow_ld(t, -1.0 / p) * lorentz,
                SLACK_EXPLICIT,
            );
            for frac in KEY2_FRACTIONS {
                let s = t * frac;
                let smaller = rp.hardy_average(s)?;
                let bound = avg + gap_sup * (t / s).ln();
                rep.record(
                    &format!("{}:log-modulus:t{j},f={frac}", entry.id),
                    smaller,
                    bound,
                    SLACK_EXPLICIT,
                );
            }
        }

        // the derivative identity, against a central finite difference taken
        // well inside one piece
        let cuts = rp.cuts();
        let mut probes: Vec<(f64, f64)> = Vec::new();
        let mut prev = 0.0;
        for &c in cuts.iter().take(3) {
            if c > prev {
                probes.push(((prev + c) / 2.0, (c - prev) / 2.0));
            }
            prev = c;
        }
        probes.push((total * 1.5, total * 0.5));
        for (k, (t, room)) in probes.into_iter().enumerate() {
            let exact = rp.hardy_derivative(t)?;
            let h = (1e-4 * t).min(0.4 * room);
            let fd = (rp.hardy_average(t + h)? - rp.hardy_average(t - h)?) / (2.0 * h);
            let scale = rp.hardy_average(t)? / t;
            if exact.abs() < 1e-9 * scale {
                // plateau: the identity side must be flat too
                if fd.abs() > 1e-6 * scale {
                    rep.record(&format!("{}:derivative:t{k}", entry.id), fd.abs(), 1e-6 * scale, 0.0);
                } else {
                    rep.cases += 1;
                }
            } else {
                rep.record_agreement(
                    &format!("{}:derivative:t{k}", entry.id),
                    -exact,
                    (-fd).max(0.0),
                    SLACK_QUADRATURE,
                );
                fd_cases += 1;
                let spread = ((-exact) / (-fd) - 1.0).abs();
                if spread > fd_worst {
                    fd_worst = spread;
                }
            }
        }
    }

    rep.note(format!(
        "finite-difference probes of the derivative identity: {fd_cases} cases, worst relative spread {:.3e}",
        fd_worst
    ));
    Ok(vec![rep])
}
