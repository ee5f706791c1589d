use crate::error::Error;
use crate::indices::{Exponent, LorentzIndices, LorentzMethod, MorreyFlavor, MorreyIndices};
use crate::profile::StepProfile;
use crate::rearrangement::{rearrange, RearrangementProfile};

/// Hard ceiling on enumerated cube families; larger grids get a
/// deterministically sampled family instead.
pub const CUBE_FAMILY_CAP: usize = 200_000;

/// A signed function sampled on a regular grid over a box, dimension 1 or 2.
/// Cells are row-major for dimension 2: index = iy * nx + ix.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    dim: u8,
    bounds: Vec<(f64, f64)>,
    resolution: Vec<usize>,
    cells: Vec<f64>,
    cell_volume: f64,
}

impl GridFunction {
    pub fn new_1d(bounds: (f64, f64), n: usize, cells: Vec<f64>) -> Result<Self, Error> {
        Self::build(1, vec![bounds], vec![n], cells)
    }

    pub fn new_2d(
        bounds_x: (f64, f64),
        bounds_y: (f64, f64),
        nx: usize,
        ny: usize,
        cells: Vec<f64>,
    ) -> Result<Self, Error> {
        Self::build(2, vec![bounds_x, bounds_y], vec![nx, ny], cells)
    }

    pub fn build(
        dim: u8,
        bounds: Vec<(f64, f64)>,
        resolution: Vec<usize>,
        cells: Vec<f64>,
    ) -> Result<Self, Error> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidGrid(format!("dimension must be 1 or 2, got {dim}")));
        }
        let d = dim as usize;
        if bounds.len() != d || resolution.len() != d {
            return Err(Error::InvalidGrid(format!(
                "expected {d} axis bounds and resolutions, got {} and {}",
                bounds.len(),
                resolution.len()
            )));
        }
        let mut cell_volume = 1.0;
        for (axis, ((a, b), n)) in bounds.iter().zip(&resolution).enumerate() {
            if !a.is_finite() || !b.is_finite() || !(b > a) {
                return Err(Error::InvalidGrid(format!(
                    "axis {axis} bounds must be finite with upper > lower, got ({a}, {b})"
                )));
            }
            if *n == 0 {
                return Err(Error::InvalidGrid(format!("axis {axis} has zero cells")));
            }
            cell_volume *= (b - a) / *n as f64;
        }
        let expected: usize = resolution.iter().product();
        if cells.len() != expected {
            return Err(Error::InvalidGrid(format!(
                "cell count {} does not match resolution product {expected}",
                cells.len()
            )));
        }
        for (i, v) in cells.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidGrid(format!("cell {i} is not finite: {v}")));
            }
        }
        Ok(GridFunction {
            dim,
            bounds,
            resolution,
            cells,
            cell_volume,
        })
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn cell_volume(&self) -> f64 {
        self.cell_volume
    }

    pub fn box_volume(&self) -> f64 {
        self.bounds.iter().map(|(a, b)| b - a).product()
    }

    pub fn sup_norm(&self) -> f64 {
        self.cells.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, c: f64) -> Result<Self, Error> {
        if !c.is_finite() {
            return Err(Error::InvalidArgument(format!("scale factor must be finite, got {c}")));
        }
        let mut out = self.clone();
        for v in &mut out.cells {
            *v *= c;
        }
        Ok(out)
    }

    fn same_layout(&self, other: &Self) -> Result<(), Error> {
        if self.dim != other.dim
            || self.bounds != other.bounds
            || self.resolution != other.resolution
        {
            return Err(Error::InvalidGrid(
                "pointwise operations need identical box and resolution".into(),
            ));
        }
        Ok(())
    }

    pub fn pointwise_product(&self, other: &Self) -> Result<Self, Error> {
        self.same_layout(other)?;
        let mut out = self.clone();
        for (v, w) in out.cells.iter_mut().zip(&other.cells) {
            *v *= w;
        }
        Ok(out)
    }

    pub fn pointwise_sum(&self, other: &Self) -> Result<Self, Error> {
        self.same_layout(other)?;
        let mut out = self.clone();
        for (v, w) in out.cells.iter_mut().zip(&other.cells) {
            *v += w;
        }
        Ok(out)
    }

    fn nx(&self) -> usize {
        self.resolution[0]
    }

    fn ny(&self) -> usize {
        if self.dim == 2 {
            self.resolution[1]
        } else {
            1
        }
    }

    fn check_cube(&self, cube: &Cube) -> Result<(), Error> {
        if cube.extent == 0 {
            return Err(Error::CubeOutOfBounds("cube extent must be positive".into()));
        }
        if cube.start[0] + cube.extent > self.nx() {
            return Err(Error::CubeOutOfBounds(format!(
                "cube x-range {}..{} exceeds {} cells",
                cube.start[0],
                cube.start[0] + cube.extent,
                self.nx()
            )));
        }
        let y_extent = if self.dim == 2 { cube.extent } else { 1 };
        if cube.start[1] + y_extent > self.ny() {
            return Err(Error::CubeOutOfBounds(format!(
                "cube y-range {}..{} exceeds {} cells",
                cube.start[1],
                cube.start[1] + y_extent,
                self.ny()
            )));
        }
        Ok(())
    }

    pub fn cube_mass(&self, cube: &Cube) -> f64 {
        let cells = if self.dim == 2 {
            cube.extent * cube.extent
        } else {
            cube.extent
        };
        cells as f64 * self.cell_volume
    }

    /// Visit the values covered by `cube` in row-major order.
    fn for_each_cube_cell<F: FnMut(f64)>(&self, cube: &Cube, mut f: F) {
        let nx = self.nx();
        let rows = if self.dim == 2 { cube.extent } else { 1 };
        for dy in 0..rows {
            let base = (cube.start[1] + dy) * nx + cube.start[0];
            for v in &self.cells[base..base + cube.extent] {
                f(*v);
            }
        }
    }

    pub fn ball_average(&self, cube: &Cube) -> Result<f64, Error> {
        self.check_cube(cube)?;
        let mut sum = 0.0;
        let mut count = 0usize;
        self.for_each_cube_cell(cube, |v| {
            sum += v;
            count += 1;
        });
        Ok(sum / count as f64)
    }

    /// Mean deviation from the cube average, the local BMO quantity.
    pub fn mean_oscillation(&self, cube: &Cube) -> Result<f64, Error> {
        let avg = self.ball_average(cube)?;
        let mut sum = 0.0;
        let mut count = 0usize;
        self.for_each_cube_cell(cube, |v| {
            sum += (v - avg).abs();
            count += 1;
        });
        Ok(sum / count as f64)
    }

    /// Step profile of |f| restricted to `cube`: one atom of mass cell_volume
    /// per covered cell. Zero values are kept so that total_mass equals the
    /// cube mass (a cube over an all-zero region yields the zero profile, not
    /// a profile of smaller mass).
    pub fn restrict_profile(&self, cube: &Cube) -> Result<StepProfile, Error> {
        self.check_cube(cube)?;
        let mut atoms = Vec::with_capacity(cube.extent * cube.extent);
        self.for_each_cube_cell(cube, |v| atoms.push((v.abs(), self.cell_volume)));
        StepProfile::new(&atoms)
    }

    /// Step profile of |f| over the whole box.
    pub fn global_profile(&self) -> StepProfile {
        let atoms: Vec<(f64, f64)> = self
            .cells
            .iter()
            .map(|v| (v.abs(), self.cell_volume))
            .collect();
        StepProfile::new(&atoms).expect("cells already validated finite")
    }

    /// f * indicator of the cube: cells outside are zeroed.
    pub fn cutoff(&self, cube: &Cube) -> Result<Self, Error> {
        self.check_cube(cube)?;
        let mut out = self.clone();
        let nx = self.nx();
        let rows = if self.dim == 2 { cube.extent } else { 1 };
        let row_range = cube.start[1]..cube.start[1] + rows;
        for iy in 0..self.ny() {
            for ix in 0..nx {
                let inside = row_range.contains(&iy)
                    && ix >= cube.start[0]
                    && ix < cube.start[0] + cube.extent;
                if !inside {
                    out.cells[iy * nx + ix] = 0.0;
                }
            }
        }
        Ok(out)
    }

    pub fn local_lorentz_norm(&self, cube: &Cube, idx: &LorentzIndices) -> Result<f64, Error> {
        let profile = self.restrict_profile(cube)?;
        rearrange(&profile).lorentz_norm(idx, LorentzMethod::ClosedForm)
    }
}

/// Axis-aligned cube of grid cells: an interval of cells in dimension 1, a
/// square block in dimension 2 (start per axis, one shared extent).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cube {
    pub start: [usize; 2],
    pub extent: usize,
}

impl Cube {
    pub fn interval(start: usize, extent: usize) -> Self {
        Cube {
            start: [start, 0],
            extent,
        }
    }

    pub fn square(sx: usize, sy: usize, extent: usize) -> Self {
        Cube {
            start: [sx, sy],
            extent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyCoverage {
    AllCubes,
    Sampled,
}

/// The cube family a Morrey-scale supremum ranges over.
#[derive(Debug, Clone)]
pub struct CubeFamily {
    cubes: Vec<Cube>,
    coverage: FamilyCoverage,
}

impl CubeFamily {
    /// Every axis-aligned cube of the grid, unless that exceeds the cap, in
    /// which case a deterministic stratified sample is taken: every extent is
    /// represented, starts are strided, and for each extent the first, last
    /// and centered positions are always included (suprema of the canonical
    /// families concentrate there).
    pub fn all_cubes(grid: &GridFunction) -> Self {
        Self::all_cubes_capped(grid, CUBE_FAMILY_CAP)
    }

    pub fn all_cubes_capped(grid: &GridFunction, cap: usize) -> Self {
        let nx = grid.resolution()[0];
        let ny = if grid.dim() == 2 {
            grid.resolution()[1]
        } else {
            1
        };
        if grid.dim() == 1 {
            let total = nx * (nx + 1) / 2;
            if total <= cap {
                let mut cubes = Vec::with_capacity(total);
                for extent in 1..=nx {
                    for start in 0..=(nx - extent) {
                        cubes.push(Cube::interval(start, extent));
                    }
                }
                return CubeFamily {
                    cubes,
                    coverage: FamilyCoverage::AllCubes,
                };
            }
            let budget = (cap / nx).max(1);
            let mut cubes = Vec::new();
            for extent in 1..=nx {
                for start in sample_starts(nx - extent + 1, budget) {
                    cubes.push(Cube::interval(start, extent));
                }
            }
            CubeFamily {
                cubes,
                coverage: FamilyCoverage::Sampled,
            }
        } else {
            let emax = nx.min(ny);
            let total: usize = (1..=emax).map(|e| (nx - e + 1) * (ny - e + 1)).sum();
            if total <= cap {
                let mut cubes = Vec::with_capacity(total);
                for extent in 1..=emax {
                    for sy in 0..=(ny - extent) {
                        for sx in 0..=(nx - extent) {
                            cubes.push(Cube::square(sx, sy, extent));
                        }
                    }
                }
                return CubeFamily {
                    cubes,
                    coverage: FamilyCoverage::AllCubes,
                };
            }
            let budget = (cap / emax).max(1);
            let axis_budget = (budget as f64).sqrt().floor() as usize;
            let axis_budget = axis_budget.max(1);
            let mut cubes = Vec::new();
            for extent in 1..=emax {
                let ys = sample_starts(ny - extent + 1, axis_budget);
                let xs = sample_starts(nx - extent + 1, axis_budget);
                for sy in &ys {
                    for sx in &xs {
                        cubes.push(Cube::square(*sx, *sy, extent));
                    }
                }
            }
            CubeFamily {
                cubes,
                coverage: FamilyCoverage::Sampled,
            }
        }
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn coverage(&self) -> FamilyCoverage {
        self.coverage
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }
}

/// At most `budget` start positions out of `count`, strided, always keeping
/// both ends and the center.
fn sample_starts(count: usize, budget: usize) -> Vec<usize> {
    if count <= budget {
        return (0..count).collect();
    }
    let body = budget.saturating_sub(3).max(1);
    let stride = count.div_ceil(body);
    let mut starts: Vec<usize> = (0..count).step_by(stride).collect();
    starts.push(count - 1);
    starts.push(count / 2);
    starts.sort_unstable();
    starts.dedup();
    starts
}

/// Supremum of the mean oscillation over the family.
pub fn bmo_norm(grid: &GridFunction, family: &CubeFamily) -> Result<f64, Error> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("empty cube family".into()));
    }
    let mut best = 0.0f64;
    for cube in family.cubes() {
        best = best.max(grid.mean_oscillation(cube)?);
    }
    Ok(best)
}

/// Per-cube rearrangements of a grid over a family, cached so that several
/// norms over the same family reuse the sorting work.
pub struct FamilyProfiles {
    pub masses: Vec<f64>,
    pub rearrangements: Vec<RearrangementProfile>,
}

pub fn family_profiles(grid: &GridFunction, family: &CubeFamily) -> Result<FamilyProfiles, Error> {
    let mut masses = Vec::with_capacity(family.len());
    let mut rearrangements = Vec::with_capacity(family.len());
    for cube in family.cubes() {
        masses.push(grid.cube_mass(cube));
        rearrangements.push(rearrange(&grid.restrict_profile(cube)?));
    }
    Ok(FamilyProfiles {
        masses,
        rearrangements,
    })
}

fn local_norm(
    rp: &RearrangementProfile,
    idx: &MorreyIndices,
    flavor: MorreyFlavor,
    method: LorentzMethod,
) -> Result<f64, Error> {
    let r = idx.secondary_for(flavor)?;
    match flavor {
        MorreyFlavor::Morrey => rp.lp_norm(Exponent::Finite(idx.p())),
        MorreyFlavor::WeakMorrey => rp.weak_lp_norm(idx.p()),
        MorreyFlavor::LorentzMorrey => {
            rp.lorentz_norm(&LorentzIndices::new(idx.p(), r)?, method)
        }
        MorreyFlavor::LorentzMorreyStar => rp.star_lorentz_norm(&LorentzIndices::new(idx.p(), r)?),
    }
}

/// The scaled per-cube terms mass^(-kappa/p) * local norm, in family order.
/// The family norm is their maximum.
pub fn family_terms(
    profiles: &FamilyProfiles,
    idx: &MorreyIndices,
    flavor: MorreyFlavor,
    method: LorentzMethod,
) -> Result<Vec<f64>, Error> {
    if profiles.masses.is_empty() {
        return Err(Error::InvalidArgument("empty cube family".into()));
    }
    let scale = -idx.kappa() / idx.p();
    let mut terms = Vec::with_capacity(profiles.masses.len());
    for (mass, rp) in profiles.masses.iter().zip(&profiles.rearrangements) {
        let local = local_norm(rp, idx, flavor, method)?;
        terms.push(mass.powf(scale) * local);
    }
    Ok(terms)
}

/// Family norm from precomputed per-cube rearrangements.
pub fn family_norm_cached(
    profiles: &FamilyProfiles,
    idx: &MorreyIndices,
    flavor: MorreyFlavor,
    method: LorentzMethod,
) -> Result<f64, Error> {
    Ok(family_terms(profiles, idx, flavor, method)?
        .into_iter()
        .fold(0.0f64, f64::max))
}

/// sup over the family of mass^(-kappa/p) * (local norm of the given flavor).
pub fn family_norm(
    grid: &GridFunction,
    family: &CubeFamily,
    idx: &MorreyIndices,
    flavor: MorreyFlavor,
) -> Result<f64, Error> {
    let profiles = family_profiles(grid, family)?;
    family_norm_cached(&profiles, idx, flavor, LorentzMethod::ClosedForm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sign_pair() -> GridFunction {
        GridFunction::new_1d((0.0, 2.0), 2, vec![1.0, -1.0]).unwrap()
    }

    fn step_pair() -> GridFunction {
        GridFunction::new_1d((0.0, 2.0), 2, vec![1.0, 0.0]).unwrap()
    }

    #[test]
    fn construction_validation() {
        assert!(GridFunction::new_1d((1.0, 1.0), 2, vec![0.0, 0.0]).is_err());
        assert!(GridFunction::new_1d((0.0, 1.0), 3, vec![0.0, 0.0]).is_err());
        let err = GridFunction::new_1d((0.0, 1.0), 2, vec![0.0, f64::NAN]).unwrap_err();
        assert!(err.to_string().contains("cell 1"));
        let g = GridFunction::new_2d((0.0, 1.0), (0.0, 2.0), 2, 4, vec![0.0; 8]).unwrap();
        assert_eq!(g.cell_volume(), 0.25);
        assert_eq!(g.box_volume(), 2.0);
    }

    #[test]
    fn averages_and_oscillation() {
        let full = Cube::interval(0, 2);
        assert_eq!(sign_pair().ball_average(&full).unwrap(), 0.0);
        assert_eq!(sign_pair().mean_oscillation(&full).unwrap(), 1.0);
        assert_eq!(step_pair().mean_oscillation(&full).unwrap(), 0.5);
        let single = Cube::interval(1, 1);
        assert_eq!(sign_pair().mean_oscillation(&single).unwrap(), 0.0);
        assert!(sign_pair().ball_average(&Cube::interval(1, 2)).is_err());
    }

    #[test]
    fn bmo_frozen_values() {
        let fam = CubeFamily::all_cubes(&sign_pair());
        assert_eq!(bmo_norm(&sign_pair(), &fam).unwrap(), 1.0);
        assert_eq!(bmo_norm(&step_pair(), &fam).unwrap(), 0.5);
    }

    #[test]
    fn restriction_keeps_cube_mass() {
        let g = GridFunction::new_1d((0.0, 4.0), 4, vec![3.0, 1.0, -2.0, 0.0]).unwrap();
        let p = g.restrict_profile(&Cube::interval(1, 2)).unwrap();
        let atoms: Vec<(f64, f64)> = p.atoms().iter().map(|a| (a.value, a.mass)).collect();
        assert_eq!(atoms, vec![(2.0, 1.0), (1.0, 1.0)]);
        assert_eq!(p.total_mass(), 2.0);

        let zero_region = g.restrict_profile(&Cube::interval(3, 1)).unwrap();
        assert!(zero_region.is_zero());
        assert_eq!(zero_region.total_mass(), 1.0);
    }

    #[test]
    fn cutoff_zeroes_outside() {
        let g = GridFunction::new_1d((0.0, 4.0), 4, vec![3.0, 1.0, -2.0, 5.0]).unwrap();
        let cut = g.cutoff(&Cube::interval(1, 2)).unwrap();
        assert_eq!(cut.cells(), &[0.0, 1.0, -2.0, 0.0]);
        let g2 = GridFunction::new_2d((0.0, 2.0), (0.0, 2.0), 2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let cut2 = g2.cutoff(&Cube::square(1, 1, 1)).unwrap();
        assert_eq!(cut2.cells(), &[0.0, 0.0, 0.0, 4.0]);
    }

    #[test]
    fn pointwise_ops_need_matching_layout() {
        let g = sign_pair();
        let other = GridFunction::new_1d((0.0, 1.0), 2, vec![1.0, 1.0]).unwrap();
        assert!(g.pointwise_product(&other).is_err());
        let prod = g.pointwise_product(&g).unwrap();
        assert_eq!(prod.cells(), &[1.0, 1.0]);
        let sum = g.pointwise_sum(&g).unwrap();
        assert_eq!(sum.cells(), &[2.0, -2.0]);
    }

    #[test]
    fn family_enumeration_counts() {
        let g = GridFunction::new_1d((0.0, 1.0), 4, vec![0.0; 4]).unwrap();
        let fam = CubeFamily::all_cubes(&g);
        assert_eq!(fam.len(), 10);
        assert_eq!(fam.coverage(), FamilyCoverage::AllCubes);

        let g2 = GridFunction::new_2d((0.0, 1.0), (0.0, 1.0), 2, 2, vec![0.0; 4]).unwrap();
        let fam2 = CubeFamily::all_cubes(&g2);
        assert_eq!(fam2.len(), 5);
    }

    #[test]
    fn capped_family_is_sampled_and_anchored() {
        let n = 100;
        let g = GridFunction::new_1d((0.0, 1.0), n, vec![0.0; n]).unwrap();
        let fam = CubeFamily::all_cubes_capped(&g, 300);
        assert_eq!(fam.coverage(), FamilyCoverage::Sampled);
        assert!(fam.len() <= 300 + 2 * n); // anchors may add a little slack
        // the full-box cube is always present
        assert!(fam
            .cubes()
            .iter()
            .any(|c| c.extent == n && c.start[0] == 0));
        // every extent is represented
        for extent in 1..=n {
            assert!(fam.cubes().iter().any(|c| c.extent == extent));
        }
    }

    #[test]
    fn morrey_norm_of_constant_grid_is_one() {
        let g = GridFunction::new_1d((0.0, 1.0), 4, vec![1.0; 4]).unwrap();
        let fam = CubeFamily::all_cubes(&g);
        let idx = MorreyIndices::new(1.0, 0.5, None).unwrap();
        let got = family_norm(&g, &fam, &idx, MorreyFlavor::Morrey).unwrap();
        assert!((got - 1.0).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn flavor_collapses_are_structural() {
        let g = GridFunction::new_1d((0.0, 4.0), 8, vec![3.0, 1.0, -2.0, 5.0, 0.5, 0.0, -1.0, 2.5])
            .unwrap();
        let fam = CubeFamily::all_cubes(&g);
        let plain = MorreyIndices::new(2.0, 0.5, None).unwrap();
        let with_p = MorreyIndices::new(2.0, 0.5, Some(Exponent::Finite(2.0))).unwrap();
        let with_inf = MorreyIndices::new(2.0, 0.5, Some(Exponent::Infinite)).unwrap();
        let morrey = family_norm(&g, &fam, &plain, MorreyFlavor::Morrey).unwrap();
        let lm_p = family_norm(&g, &fam, &with_p, MorreyFlavor::LorentzMorrey).unwrap();
        assert_eq!(morrey, lm_p);
        let weak = family_norm(&g, &fam, &plain, MorreyFlavor::WeakMorrey).unwrap();
        let lm_inf = family_norm(&g, &fam, &with_inf, MorreyFlavor::LorentzMorrey).unwrap();
        assert_eq!(weak, lm_inf);
    }

    #[test]
    fn star_flavor_dominates_plain() {
        let g = GridFunction::new_1d((0.0, 4.0), 8, vec![3.0, 1.0, -2.0, 5.0, 0.5, 0.0, -1.0, 2.5])
            .unwrap();
        let fam = CubeFamily::all_cubes(&g);
        let idx = MorreyIndices::new(2.0, 0.5, Some(Exponent::Finite(3.0))).unwrap();
        let lm = family_norm(&g, &fam, &idx, MorreyFlavor::LorentzMorrey).unwrap();
        let lm_star = family_norm(&g, &fam, &idx, MorreyFlavor::LorentzMorreyStar).unwrap();
        assert!(lm <= lm_star && lm_star <= 2.0 * lm + 1e-9, "{lm} vs {lm_star}");
    }

    #[test]
    fn global_profile_collects_all_cells() {
        let g = sign_pair();
        let p = g.global_profile();
        assert_eq!(p.total_mass(), 2.0);
        assert_eq!(p.atoms().len(), 1); // |f| is constant 1
        assert_eq!(p.atoms()[0].value, 1.0);
    }
}
