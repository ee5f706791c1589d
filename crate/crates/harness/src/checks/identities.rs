//! Two-route identity checks: every norm that has both a closed form and a
//! layer-cake or level-set route must produce the same number through both.

use crate::corpus::Corpus;
use crate::report::CheckReport;
use crate::tol::TOL_IDENTITY;
use spaces::{
    family_norm_cached, family_profiles, rearrange, CubeFamily, Error, Exponent, LorentzIndices,
    LorentzMethod, MorreyFlavor, MorreyIndices,
};

const WEAK_PS: [f64; 3] = [1.0, 2.0, 4.0];
const LP_PS: [f64; 3] = [1.0, 2.0, 3.0];
const LORENTZ_PR: [(f64, f64); 3] = [(1.5, 1.0), (2.0, 3.0), (4.0, 2.0)];

pub fn check_identities(corpus: &Corpus) -> Result<Vec<CheckReport>, Error> {
    let mut r = CheckReport::new("identities")
        .param("weak-p", "1,2,4")
        .param("lp-p", "1,2,3")
        .param("lorentz-pr", "(1.5,1),(2,3),(4,2)");

    for entry in &corpus.profiles {
        if entry.profile.is_zero() {
            r.record_vacuous();
            continue;
        }
        let rp = rearrange(&entry.profile);

        // level-set route and rearrangement route of the weak norm, and the
        // distribution function before and after rearranging: all bitwise
        for &p in &WEAK_PS {
            let star_side = rp.weak_lp_norm(p)?;
            let level_side = entry.profile.weak_norm_level_side(p)?;
            r.record_agreement(&format!("{}:weak:p={p}", entry.id), star_side, level_side, 0.0);
        }
        for (k, atom) in entry.profile.atoms().iter().enumerate().take(6) {
            if atom.value == 0.0 {
                continue;
            }
            let before = entry.profile.distribution(atom.value)?;
            let after = rp.distribution(atom.value)?;
            r.record_agreement(
                &format!("{}:distribution:level{k}", entry.id),
                before,
                after,
                0.0,
            );
        }

        for &p in &LP_PS {
            let closed = rp.lp_norm(Exponent::Finite(p))?;
            let cake = rp.lp_norm_layer_cake(p)?;
            r.record_agreement(&format!("{}:lp:p={p}", entry.id), closed, cake, TOL_IDENTITY);
        }

        for &(p, rr) in &LORENTZ_PR {
            let idx = LorentzIndices::new(p, Exponent::Finite(rr))?;
            let a = rp.lorentz_norm(&idx, LorentzMethod::ClosedForm)?;
            let b = rp.lorentz_norm(&idx, LorentzMethod::LayerCake)?;
            r.record_agreement(
                &format!("{}:lorentz:p={p},r={rr}", entry.id),
                a,
                b,
                TOL_IDENTITY,
            );
        }
    }

    let lm = MorreyIndices::new(2.0, 0.5, Some(Exponent::Finite(3.0)))?;
    for entry in &corpus.grids {
        let family = CubeFamily::all_cubes(&entry.grid);

        // per-cube weak-norm routes, on a bounded sample of cubes
        let stride = (family.len() / 48).max(1);
        for (ci, cube) in family.cubes().iter().enumerate().step_by(stride) {
            let local = entry.grid.restrict_profile(cube)?;
            if local.is_zero() {
                r.record_vacuous();
                continue;
            }
            let rp = rearrange(&local);
            let star_side = rp.weak_lp_norm(2.0)?;
            let level_side = local.weak_norm_level_side(2.0)?;
            r.record_agreement(
                &format!("{}:cube{ci}:weak:p=2", entry.id),
                star_side,
                level_side,
                0.0,
            );
        }

        // family norm through both local-norm routes
        let profiles = family_profiles(&entry.grid, &family)?;
        let closed = family_norm_cached(&profiles, &lm, MorreyFlavor::LorentzMorrey, LorentzMethod::ClosedForm)?;
        let cake = family_norm_cached(&profiles, &lm, MorreyFlavor::LorentzMorrey, LorentzMethod::LayerCake)?;
        if closed == 0.0 && cake == 0.0 {
            r.record_vacuous();
        } else {
            r.record_agreement(
                &format!("{}:family-lorentz:p=2,r=3,k=0.5", entry.id),
                closed,
                cake,
                TOL_IDENTITY,
            );
        }
    }

    Ok(vec![r])
}
