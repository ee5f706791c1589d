//! Embedding bounds: the weak-primary family norm controls the finer
//! secondary-exponent family norm at a lower primary index, with an
//! explicit constant; plus the two constant-1 sup-norm warm-ups.
//!
//! Preconditions here are the ones the layer-cake argument actually uses:
//! 1 <= q < p and any finite secondary exponent r >= 1. The secondary
//! exponent may sit below q; nothing in the argument needs q <= r.

use crate::corpus::Corpus;
use crate::report::CheckReport;
use crate::special::pow_ld;
use crate::tol::SLACK_EXPLICIT;
use spaces::{
    family_norm_cached, family_profiles, rearrange, CubeFamily, Error, Exponent, LorentzMethod,
    MorreyFlavor, MorreyIndices,
};

pub const DEFAULT_TRIPLES: [(f64, f64, f64); 3] = [(2.0, 1.0, 1.0), (3.0, 2.0, 2.0), (4.0, 2.0, 1.0)];

pub fn embedding_constant(p: f64, q: f64, r: f64) -> f64 {
    pow_ld(p * q / (r * (p - q)), 1.0 / r)
}

pub fn check_embeddings(
    corpus: &Corpus,
    triples: &[(f64, f64, f64)],
    kappa_star: f64,
) -> Result<Vec<CheckReport>, Error> {
    if !(0.0 < kappa_star && kappa_star < 1.0) {
        return Err(Error::InvalidIndices(format!(
            "kappa* must sit inside (0,1), got {kappa_star}"
        )));
    }

    let mut main = CheckReport::new("lorentz-morrey-embedding").param("kappa*", kappa_star);
    for &(p, q, r) in triples {
        if !(1.0 <= q && q < p) || !(1.0 <= r && r.is_finite()) {
            return Err(Error::InvalidIndices(format!(
                "embedding triple needs 1 <= q < p and finite r >= 1, got (p,q,r) = ({p},{q},{r})"
            )));
        }
        // matched decay: (1-kappa)p = (1-kappa*)q
        let kappa = 1.0 - (1.0 - kappa_star) * q / p;
        if !(0.0 < kappa && kappa < 1.0) {
            return Err(Error::InvalidIndices(format!(
                "derived kappa = {kappa} leaves (0,1) for (p,q) = ({p},{q})"
            )));
        }
        let constant = embedding_constant(p, q, r);
        let fine_idx = MorreyIndices::new(q, kappa, Some(Exponent::Finite(r)))?;
        let weak_idx = MorreyIndices::new(p, kappa_star, Some(Exponent::Infinite))?;
        main = main.param(
            &format!("triple:p={p},q={q},r={r}"),
            format!("constant {constant}, kappa {kappa}"),
        );

        for entry in &corpus.grids {
            let family = CubeFamily::all_cubes(&entry.grid);
            let profiles = family_profiles(&entry.grid, &family)?;
            let lhs = family_norm_cached(
                &profiles,
                &fine_idx,
                MorreyFlavor::LorentzMorrey,
                LorentzMethod::ClosedForm,
            )?;
            let rhs = family_norm_cached(
                &profiles,
                &weak_idx,
                MorreyFlavor::LorentzMorrey,
                LorentzMethod::ClosedForm,
            )?;
            if rhs == 0.0 {
                main.record_vacuous();
            } else {
                main.record(
                    &format!("{}:p={p},q={q},r={r}", entry.id),
                    lhs,
                    constant * rhs,
                    SLACK_EXPLICIT,
                );
            }
        }
    }
    main.note("secondary exponents below q are accepted: the level decay only needs r >= 1");

    let mut lebesgue = CheckReport::new("lebesgue-sup-embedding").param("pq", "(2,4),(2,8)");
    for entry in &corpus.profiles {
        if entry.profile.is_zero() {
            lebesgue.record_vacuous();
            continue;
        }
        let rp = rearrange(&entry.profile);
        let sup = rp.max_value();
        for (p, q) in [(2.0, 4.0), (2.0, 8.0)] {
            let lhs = rp.lp_norm(Exponent::Finite(q))?;
            let base = rp.lp_norm(Exponent::Finite(p))?;
            let rhs = pow_ld(base, p / q) * pow_ld(sup, 1.0 - p / q);
            lebesgue.record(&format!("{}:p={p},q={q}", entry.id), lhs, rhs, SLACK_EXPLICIT);
        }
    }

    let mut morrey = CheckReport::new("morrey-sup-embedding").param("pq", "(2,4)").param("kappa", 0.5);
    for entry in &corpus.grids {
        if entry.grid.sup_norm() == 0.0 {
            morrey.record_vacuous();
            continue;
        }
        let family = CubeFamily::all_cubes(&entry.grid);
        let profiles = family_profiles(&entry.grid, &family)?;
        let base_idx = MorreyIndices::new(2.0, 0.5, None)?;
        let fine_idx = MorreyIndices::new(4.0, 0.5, None)?;
        let base = family_norm_cached(&profiles, &base_idx, MorreyFlavor::Morrey, LorentzMethod::ClosedForm)?;
        let lhs = family_norm_cached(&profiles, &fine_idx, MorreyFlavor::Morrey, LorentzMethod::ClosedForm)?;
        let sup = entry.grid.sup_norm();
        let rhs = pow_ld(base, 0.5) * pow_ld(sup, 0.5);
        morrey.record(&format!("{}:p=2,q=4", entry.id), lhs, rhs, SLACK_EXPLICIT);
    }

    Ok(vec![main, lebesgue, morrey])
}
