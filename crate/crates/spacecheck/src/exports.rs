use harness::report::fmt_num;
use spaces::{
    bmo_norm, family_norm_cached, family_profiles, family_terms, rearrange, CubeFamily, Exponent,
    GridFunction, InputFunction, LorentzIndices, LorentzMethod, MorreyFlavor, MorreyIndices,
    RearrangementProfile, CUBE_FAMILY_CAP,
};

use crate::spaceid::SpaceId;
use crate::Failure;

struct ResolvedIndices {
    p: Option<f64>,
    r: Option<Exponent>,
    kappa: Option<f64>,
}

fn resolve_indices(
    space: SpaceId,
    p: Option<f64>,
    r: Option<Exponent>,
    kappa: Option<f64>,
) -> Result<ResolvedIndices, Failure> {
    if space.needs_p() && p.is_none() {
        return Err(Failure::usage(format!("space {} needs --p", space.label())));
    }
    if space.needs_r() && r.is_none() {
        return Err(Failure::usage(format!("space {} needs --r", space.label())));
    }
    if space.needs_kappa() && kappa.is_none() {
        return Err(Failure::usage(format!(
            "space {} needs --kappa",
            space.label()
        )));
    }
    Ok(ResolvedIndices { p, r, kappa })
}

fn morrey_parts(space: SpaceId, idx: &ResolvedIndices) -> Result<(MorreyIndices, MorreyFlavor), Failure> {
    let flavor = match space {
        SpaceId::Morrey => MorreyFlavor::Morrey,
        SpaceId::WeakMorrey => MorreyFlavor::WeakMorrey,
        SpaceId::Lm => MorreyFlavor::LorentzMorrey,
        SpaceId::LmStar => MorreyFlavor::LorentzMorreyStar,
        _ => unreachable!("only cube-family spaces have a flavor"),
    };
    let indices = MorreyIndices::new(idx.p.unwrap(), idx.kappa.unwrap(), idx.r)?;
    // surface index/flavor mismatches now, not at the first cube
    indices.secondary_for(flavor)?;
    Ok((indices, flavor))
}

fn profile_norm(rp: &RearrangementProfile, space: SpaceId, idx: &ResolvedIndices) -> Result<f64, Failure> {
    let value = match space {
        SpaceId::Lp => rp.lp_norm(Exponent::Finite(idx.p.unwrap()))?,
        SpaceId::WeakLp => rp.weak_lp_norm(idx.p.unwrap())?,
        SpaceId::Lorentz => {
            let li = LorentzIndices::new(idx.p.unwrap(), idx.r.unwrap())?;
            rp.lorentz_norm(&li, LorentzMethod::ClosedForm)?
        }
        SpaceId::W => rp.w_functional(),
        _ => unreachable!("cube-family spaces are handled on the grid path"),
    };
    Ok(value)
}

pub fn norm_of(
    function: &InputFunction,
    space: SpaceId,
    p: Option<f64>,
    r: Option<Exponent>,
    kappa: Option<f64>,
) -> Result<f64, Failure> {
    let idx = resolve_indices(space, p, r, kappa)?;
    match function {
        InputFunction::Step(profile) => {
            if space.needs_family() {
                return Err(Failure::usage(format!(
                    "space {} needs a grid input with a cube family; step profiles carry no geometry",
                    space.label()
                )));
            }
            profile_norm(&rearrange(profile), space, &idx)
        }
        InputFunction::Grid(grid) => {
            if !space.needs_family() {
                return profile_norm(&rearrange(&grid.global_profile()), space, &idx);
            }
            let family = CubeFamily::all_cubes_capped(grid, CUBE_FAMILY_CAP);
            if space == SpaceId::Bmo {
                return Ok(bmo_norm(grid, &family)?);
            }
            let (indices, flavor) = morrey_parts(space, &idx)?;
            let profiles = family_profiles(grid, &family)?;
            Ok(family_norm_cached(
                &profiles,
                &indices,
                flavor,
                LorentzMethod::ClosedForm,
            )?)
        }
    }
}

/// One row per cube: the term the family supremum ranges over (or the plain
/// local norm for spaces without the mass scaling).
pub fn per_cube_csv(
    grid: &GridFunction,
    space: SpaceId,
    p: Option<f64>,
    r: Option<Exponent>,
    kappa: Option<f64>,
) -> Result<String, Failure> {
    let idx = resolve_indices(space, p, r, kappa)?;
    let family = CubeFamily::all_cubes_capped(grid, CUBE_FAMILY_CAP);

    let values: Vec<f64> = if space.needs_family() {
        if space == SpaceId::Bmo {
            family
                .cubes()
                .iter()
                .map(|cube| grid.mean_oscillation(cube))
                .collect::<Result<_, _>>()?
        } else {
            let (indices, flavor) = morrey_parts(space, &idx)?;
            let profiles = family_profiles(grid, &family)?;
            family_terms(&profiles, &indices, flavor, LorentzMethod::ClosedForm)?
        }
    } else {
        let mut out = Vec::with_capacity(family.len());
        for cube in family.cubes() {
            let rp = rearrange(&grid.restrict_profile(cube)?);
            out.push(profile_norm(&rp, space, &idx)?);
        }
        out
    };

    let mut csv = String::from("cube_id,start,extent,mass,value\n");
    for (i, (cube, value)) in family.cubes().iter().zip(&values).enumerate() {
        let start = if grid.dim() == 1 {
            cube.start[0].to_string()
        } else {
            format!("{}:{}", cube.start[0], cube.start[1])
        };
        csv.push_str(&format!(
            "{i},{start},{},{},{}\n",
            cube.extent,
            fmt_num(grid.cube_mass(cube)),
            fmt_num(*value)
        ));
    }
    Ok(csv)
}
