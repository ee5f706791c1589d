//! Fits the exponent dependence of the integrability-vs-oscillation ratio
//! on canonical families. Unbounded log-shaped grids should show the ratio
//! climbing with the exponent; bounded grids must show none.

use crate::corpus::{sign_split_grid, trunc_log_grid_1d};
use crate::fit::log_log_slope;
use crate::report::CheckReport;
use crate::tol::{CONTRAST_SLOPE_LIMIT, GROWTH_SLOPE_HI, GROWTH_SLOPE_LO, VACUITY_RELATIVE};
use spaces::{bmo_norm, rearrange, CubeFamily, Error, Exponent, GridFunction, CUBE_FAMILY_CAP};

#[derive(Clone, Debug, PartialEq)]
pub enum GrowthFamily {
    TruncLog { cap: f64, n: usize },
    Indicator { n: usize },
}

impl GrowthFamily {
    pub fn label(&self) -> String {
        match self {
            GrowthFamily::TruncLog { cap, n } => format!("trunc-log(cap={cap},n={n})"),
            GrowthFamily::Indicator { n } => format!("indicator(n={n})"),
        }
    }

    pub fn build(&self) -> Result<GridFunction, Error> {
        match *self {
            GrowthFamily::TruncLog { cap, n } => {
                if !(cap.is_finite() && cap > 0.0) || n < 2 {
                    return Err(Error::InvalidArgument(format!(
                        "truncated-log family needs a positive cap and at least two cells, got cap {cap}, n {n}"
                    )));
                }
                Ok(trunc_log_grid_1d(cap, n))
            }
            GrowthFamily::Indicator { n } => {
                if n < 2 || n % 2 != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "sign-split family needs an even cell count of at least two, got {n}"
                    )));
                }
                Ok(sign_split_grid(1.0, n))
            }
        }
    }
}

/// Ratio curve q -> ||f||_q / (||f||_p^(p/q) B^(1-p/q)) and its log-log slope.
pub fn growth_fit(
    family: &GrowthFamily,
    p: f64,
    qs: &[f64],
) -> Result<(CheckReport, Vec<(f64, f64)>), Error> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidIndices(format!(
            "primary exponent must be at least one, got {p}"
        )));
    }
    if qs.len() < 2 {
        return Err(Error::InvalidArgument(
            "the fit needs at least two exponents".into(),
        ));
    }
    for &q in qs {
        if !(q.is_finite() && q >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "exponent grid entries must be finite and at least one, got {q}"
            )));
        }
    }

    let grid = family.build()?;
    let cubes = CubeFamily::all_cubes_capped(&grid, CUBE_FAMILY_CAP);
    let osc = bmo_norm(&grid, &cubes)?;
    if osc <= VACUITY_RELATIVE * grid.sup_norm() || grid.sup_norm() == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "family {} has no oscillation to normalize by",
            family.label()
        )));
    }

    let rp = rearrange(&grid.global_profile());
    let base = rp.lp_norm(Exponent::Finite(p))?;
    let mut curve = Vec::with_capacity(qs.len());
    for &q in qs {
        let lhs = rp.lp_norm(Exponent::Finite(q))?;
        let ratio = lhs / (base.powf(p / q) * osc.powf(1.0 - p / q));
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "ratio degenerate at q = {q} for family {}",
                family.label()
            )));
        }
        curve.push((q, ratio));
    }

    let slope = log_log_slope(
        &curve.iter().map(|c| c.0).collect::<Vec<_>>(),
        &curve.iter().map(|c| c.1).collect::<Vec<_>>(),
    );

    let mut report = CheckReport::new("growth-fit")
        .param("family", family.label())
        .param("p", p)
        .param("q", qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","));
    report.cases = qs.len();
    report.worst_ratio = curve.iter().fold(0.0f64, |m, c| m.max(c.1));
    report.constant_estimate = Some(slope);
    report.pass_hint = Some(match family {
        GrowthFamily::TruncLog { .. } => (GROWTH_SLOPE_LO..=GROWTH_SLOPE_HI).contains(&slope),
        GrowthFamily::Indicator { .. } => slope.abs() <= CONTRAST_SLOPE_LIMIT,
    });
    report.note(&format!("log-log slope {slope:.6} over the requested exponents"));
    report.note(&format!(
        "curve {}",
        curve
            .iter()
            .map(|(q, r)| format!("{q}:{r:.6e}"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    match family {
        GrowthFamily::TruncLog { .. } => {
            report.note("linear growth expected while the exponent stays below the saturation point of the bounded tail");
        }
        GrowthFamily::Indicator { .. } => {
            report.note("bounded two-level grids give a flat curve; any visible slope is a bug");
        }
    }
    Ok((report, curve))
}
