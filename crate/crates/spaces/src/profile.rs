use crate::error::Error;

/// One flat level of a step function: it takes `value` on a set of measure
/// `mass`. Where the set sits does not matter for anything computed here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub value: f64,
    pub mass: f64,
}

/// A nonnegative step function recorded as value/mass pairs.
///
/// Construction normalizes: zero-mass atoms are dropped, atoms are sorted by
/// strictly decreasing value, and equal values are coalesced by adding their
/// masses. Total mass is preserved by normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct StepProfile {
    atoms: Vec<Atom>,
    total_mass: f64,
}

impl StepProfile {
    pub fn new(raw: &[(f64, f64)]) -> Result<Self, Error> {
        for (index, &(value, mass)) in raw.iter().enumerate() {
            if !value.is_finite() || !mass.is_finite() {
                return Err(Error::InvalidAtom {
                    index,
                    reason: format!("non-finite entry (value {value}, mass {mass})"),
                });
            }
            if value < 0.0 {
                return Err(Error::InvalidAtom {
                    index,
                    reason: format!("negative value {value}"),
                });
            }
            if mass < 0.0 {
                return Err(Error::InvalidAtom {
                    index,
                    reason: format!("negative mass {mass}"),
                });
            }
        }

        let mut atoms: Vec<Atom> = raw
            .iter()
            .filter(|&&(_, mass)| mass > 0.0)
            .map(|&(value, mass)| Atom { value, mass })
            .collect();
        // total_cmp: values are finite, so this is the usual order
        atoms.sort_by(|a, b| b.value.total_cmp(&a.value));

        let mut coalesced: Vec<Atom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            match coalesced.last_mut() {
                Some(last) if last.value == atom.value => last.mass += atom.mass,
                _ => coalesced.push(atom),
            }
        }

        let total_mass = coalesced.iter().map(|a| a.mass).sum();
        Ok(StepProfile {
            atoms: coalesced,
            total_mass,
        })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// True when the profile carries no positive value on positive mass.
    pub fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.value == 0.0)
    }

    /// Pointwise scaling |c|*f, keeping masses fixed.
    pub fn scale(&self, c: f64) -> Result<Self, Error> {
        if !c.is_finite() {
            return Err(Error::InvalidArgument(format!("scale factor {c}")));
        }
        let c = c.abs();
        let raw: Vec<(f64, f64)> = self.atoms.iter().map(|a| (a.value * c, a.mass)).collect();
        StepProfile::new(&raw)
    }

    /// Measure of {f > lambda}, for lambda > 0. Strict inequality, so the
    /// result is right-continuous and ignores mass sitting exactly at lambda.
    ///
    /// The running sum walks atoms in decreasing-value order, which makes the
    /// returned partial sums bitwise identical to the cumulative breakpoints
    /// of the rearrangement built from the same profile.
    pub fn distribution(&self, lambda: f64) -> Result<f64, Error> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "distribution level must be positive, got {lambda}"
            )));
        }
        let mut sum = 0.0;
        for atom in &self.atoms {
            if atom.value > lambda {
                sum += atom.mass;
            } else {
                break;
            }
        }
        Ok(sum)
    }

    /// Left limit of the distribution function at lambda: measure of
    /// {f >= lambda}.
    pub fn distribution_left_limit(&self, lambda: f64) -> Result<f64, Error> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "distribution level must be positive, got {lambda}"
            )));
        }
        let mut sum = 0.0;
        for atom in &self.atoms {
            if atom.value >= lambda {
                sum += atom.mass;
            } else {
                break;
            }
        }
        Ok(sum)
    }

    /// sup over lambda of lambda * d(lambda)^(1/p), evaluated on the level
    /// side. On each value plateau the supremum is approached as lambda
    /// increases to an atom value, where the distribution's left limit is the
    /// cumulative mass at or above that value.
    pub fn weak_norm_level_side(&self, p: f64) -> Result<f64, Error> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidIndices(format!(
                "weak norm needs finite p >= 1, got {p}"
            )));
        }
        let mut best = 0.0f64;
        let mut cum = 0.0f64;
        for atom in &self.atoms {
            cum += atom.mass;
            if atom.value > 0.0 {
                best = best.max(atom.value * cum.powf(1.0 / p));
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_coalesces_equal_values() {
        let p = StepProfile::new(&[(1.0, 0.5), (1.0, 0.5)]).unwrap();
        assert_eq!(p.atoms().len(), 1);
        assert_eq!(p.atoms()[0].value, 1.0);
        assert_eq!(p.atoms()[0].mass, 1.0);
        assert_eq!(p.total_mass(), 1.0);
    }

    #[test]
    fn normalize_sorts_and_keeps_zero_values() {
        let p = StepProfile::new(&[(2.0, 1.0), (0.0, 3.0), (1.0, 1.0)]).unwrap();
        let atoms: Vec<(f64, f64)> = p.atoms().iter().map(|a| (a.value, a.mass)).collect();
        assert_eq!(atoms, vec![(2.0, 1.0), (1.0, 1.0), (0.0, 3.0)]);
        assert_eq!(p.total_mass(), 5.0);
    }

    #[test]
    fn normalize_drops_zero_mass() {
        let p = StepProfile::new(&[(2.0, 0.0), (1.0, 1.0)]).unwrap();
        assert_eq!(p.atoms().len(), 1);
        assert_eq!(p.atoms()[0].value, 1.0);
    }

    #[test]
    fn rejects_bad_atoms() {
        assert!(StepProfile::new(&[(f64::NAN, 1.0)]).is_err());
        assert!(StepProfile::new(&[(1.0, f64::INFINITY)]).is_err());
        assert!(StepProfile::new(&[(-1.0, 1.0)]).is_err());
        assert!(StepProfile::new(&[(1.0, -0.5)]).is_err());
    }

    #[test]
    fn distribution_is_strict() {
        let p = StepProfile::new(&[(2.0, 1.0), (1.0, 1.0)]).unwrap();
        assert_eq!(p.distribution(1.5).unwrap(), 1.0);
        assert_eq!(p.distribution(0.5).unwrap(), 2.0);
        assert_eq!(p.distribution(1.0).unwrap(), 1.0);
        assert_eq!(p.distribution(2.0).unwrap(), 0.0);
        assert!(p.distribution(0.0).is_err());
        assert!(p.distribution(-1.0).is_err());
    }

    #[test]
    fn distribution_left_limit_is_inclusive() {
        let p = StepProfile::new(&[(2.0, 1.0), (1.0, 1.0)]).unwrap();
        assert_eq!(p.distribution_left_limit(1.0).unwrap(), 2.0);
        assert_eq!(p.distribution_left_limit(2.0).unwrap(), 1.0);
    }

    #[test]
    fn zero_profile() {
        let p = StepProfile::new(&[]).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.distribution(1.0).unwrap(), 0.0);
        let q = StepProfile::new(&[(0.0, 4.0)]).unwrap();
        assert!(q.is_zero());
        assert_eq!(q.total_mass(), 4.0);
    }
}
