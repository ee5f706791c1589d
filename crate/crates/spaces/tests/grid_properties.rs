use proptest::prelude::*;
use spaces::{
    bmo_norm, family_norm, rearrange, Cube, CubeFamily, Exponent, GridFunction, LorentzIndices,
    LorentzMethod, MorreyFlavor, MorreyIndices,
};

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

fn grid_1d() -> impl Strategy<Value = GridFunction> {
    (4usize..24)
        .prop_flat_map(|n| prop::collection::vec(-10.0f64..10.0, n))
        .prop_map(|cells| {
            let n = cells.len();
            GridFunction::new_1d((0.0, n as f64 * 0.25), n, cells).unwrap()
        })
}

fn grid_2d() -> impl Strategy<Value = GridFunction> {
    (3usize..8, 3usize..8)
        .prop_flat_map(|(nx, ny)| {
            prop::collection::vec(-5.0f64..5.0, nx * ny).prop_map(move |cells| (nx, ny, cells))
        })
        .prop_map(|(nx, ny, cells)| {
            GridFunction::new_2d((0.0, 1.0), (-1.0, 1.0), nx, ny, cells).unwrap()
        })
}

proptest! {
    #[test]
    fn restricted_distribution_never_exceeds_global(g in grid_1d(), lambda in 1e-3f64..10.0) {
        let global = g.global_profile();
        let fam = CubeFamily::all_cubes(&g);
        for cube in fam.cubes().iter().step_by(7) {
            let local = g.restrict_profile(cube).unwrap();
            prop_assert!(
                local.distribution(lambda).unwrap() <= global.distribution(lambda).unwrap()
            );
        }
    }

    #[test]
    fn per_cube_weak_norm_sides_agree_bitwise(g in grid_1d()) {
        let fam = CubeFamily::all_cubes(&g);
        for cube in fam.cubes().iter().step_by(5) {
            let profile = g.restrict_profile(cube).unwrap();
            let rp = rearrange(&profile);
            for pe in [1.0, 2.0, 3.0] {
                prop_assert_eq!(
                    rp.weak_lp_norm(pe).unwrap(),
                    profile.weak_norm_level_side(pe).unwrap()
                );
            }
        }
    }

    #[test]
    fn family_suprema_grow_with_the_family(g in grid_1d()) {
        let fam = CubeFamily::all_cubes(&g);
        let half = CubeFamily::all_cubes_capped(&g, fam.len() / 2);
        let idx = MorreyIndices::new(2.0, 0.5, None).unwrap();
        for flavor in [MorreyFlavor::Morrey, MorreyFlavor::WeakMorrey] {
            let full = family_norm(&g, &fam, &idx, flavor).unwrap();
            let sub = family_norm(&g, &half, &idx, flavor).unwrap();
            prop_assert!(sub <= full * (1.0 + 1e-15), "{:?}: {} > {}", flavor, sub, full);
        }
        prop_assert!(bmo_norm(&g, &half).unwrap() <= bmo_norm(&g, &fam).unwrap() * (1.0 + 1e-15));
    }

    #[test]
    fn flavor_collapses_exactly(g in grid_1d()) {
        let fam = CubeFamily::all_cubes(&g);
        let plain = MorreyIndices::new(2.0, 0.5, None).unwrap();
        let with_p = MorreyIndices::new(2.0, 0.5, Some(Exponent::Finite(2.0))).unwrap();
        let with_inf = MorreyIndices::new(2.0, 0.5, Some(Exponent::Infinite)).unwrap();
        prop_assert_eq!(
            family_norm(&g, &fam, &plain, MorreyFlavor::Morrey).unwrap(),
            family_norm(&g, &fam, &with_p, MorreyFlavor::LorentzMorrey).unwrap()
        );
        prop_assert_eq!(
            family_norm(&g, &fam, &plain, MorreyFlavor::WeakMorrey).unwrap(),
            family_norm(&g, &fam, &with_inf, MorreyFlavor::LorentzMorrey).unwrap()
        );
    }

    #[test]
    fn cutoff_profile_matches_restriction(g in grid_1d(), pick in 0usize..1000) {
        let fam = CubeFamily::all_cubes(&g);
        let cube = fam.cubes()[pick % fam.len()];
        let cut = g.cutoff(&cube).unwrap();
        let via_cutoff = cut.global_profile();
        let via_restriction = g.restrict_profile(&cube).unwrap();
        // same positive part; the cutoff keeps extra zero mass
        for lambda in [1e-3, 0.1, 1.0, 5.0] {
            prop_assert_eq!(
                via_cutoff.distribution(lambda).unwrap(),
                via_restriction.distribution(lambda).unwrap()
            );
        }
        // cutting twice changes nothing
        let twice = cut.cutoff(&cube).unwrap();
        prop_assert_eq!(twice.cells(), cut.cells());
    }

    #[test]
    fn averaged_norm_triangle_on_grids(f in grid_1d()) {
        // the averaged Lorentz norm is an honest norm: subadditive under
        // pointwise sums (plain Lorentz is only quasi-subadditive)
        let n = f.resolution()[0];
        let reversed: Vec<f64> = f.cells().iter().rev().copied().collect();
        let g = GridFunction::new_1d((0.0, n as f64 * 0.25), n, reversed).unwrap();
        let sum = f.pointwise_sum(&g).unwrap();
        let idx = LorentzIndices::new(2.0, Exponent::Finite(2.0)).unwrap();
        let star = |h: &GridFunction| rearrange(&h.global_profile()).star_lorentz_norm(&idx).unwrap();
        prop_assert!(star(&sum) <= (star(&f) + star(&g)) * (1.0 + 1e-9));
        // and the plain norm obeys the conjugate-factor quasi-triangle bound
        let plain = |h: &GridFunction| {
            rearrange(&h.global_profile())
                .lorentz_norm(&idx, LorentzMethod::ClosedForm)
                .unwrap()
        };
        prop_assert!(plain(&sum) <= 2.0 * (plain(&f) + plain(&g)) * (1.0 + 1e-9));
    }

    #[test]
    fn bmo_vanishes_on_constants(c in -5.0f64..5.0, n in 2usize..16) {
        // not exactly zero: averaging c over a non-power-of-two cell count
        // rounds by an ulp, so vacuity detection must be a threshold test
        let g = GridFunction::new_1d((0.0, 1.0), n, vec![c; n]).unwrap();
        let fam = CubeFamily::all_cubes(&g);
        prop_assert!(bmo_norm(&g, &fam).unwrap() <= 1e-14 * c.abs());
    }

    #[test]
    fn bmo_is_one_homogeneous(g in grid_1d(), c_exp in -2.0f64..2.0) {
        let c = 10f64.powf(c_exp);
        let fam = CubeFamily::all_cubes(&g);
        let scaled = g.scale(c).unwrap();
        prop_assert!(rel_close(
            c * bmo_norm(&g, &fam).unwrap(),
            bmo_norm(&scaled, &fam).unwrap(),
            1e-12
        ));
    }

    #[test]
    fn two_dimensional_families_behave(g in grid_2d()) {
        let fam = CubeFamily::all_cubes(&g);
        // full-box square present when the box is square in cells
        let emax = g.resolution().iter().min().copied().unwrap();
        prop_assert!(fam.cubes().iter().any(|c| c.extent == emax));
        let idx = MorreyIndices::new(2.0, 0.5, None).unwrap();
        let morrey = family_norm(&g, &fam, &idx, MorreyFlavor::Morrey).unwrap();
        let weak = family_norm(&g, &fam, &idx, MorreyFlavor::WeakMorrey).unwrap();
        prop_assert!(weak <= morrey * (1.0 + 1e-12));
        // restriction to a cube preserves cube mass
        let cube = Cube::square(0, 0, emax.min(2));
        let p = g.restrict_profile(&cube).unwrap();
        prop_assert!(rel_close(p.total_mass(), g.cube_mass(&cube), 1e-12));
    }
}
