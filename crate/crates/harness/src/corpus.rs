//! Seeded test corpora: a few fixed exemplar functions first, then random
//! profiles and grids. Regeneration from the same (seed, config) is
//! bit-identical.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, StudentT};
use spaces::{Error, GridFunction, StepProfile};

#[derive(Debug, Clone)]
pub struct CorpusConfig {
    pub seed: u64,
    pub profiles: usize,
    pub grids_1d: usize,
    pub grids_2d: usize,
    pub grid_pairs: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 42,
            profiles: 500,
            grids_1d: 20,
            grids_2d: 6,
            grid_pairs: 50,
        }
    }
}

pub struct ProfileEntry {
    pub id: String,
    pub profile: StepProfile,
}

pub struct GridEntry {
    pub id: String,
    pub grid: GridFunction,
}

/// Two grids sharing a layout, so pointwise products are defined.
pub struct PairEntry {
    pub id: String,
    pub left: GridFunction,
    pub right: GridFunction,
}

pub struct Corpus {
    pub profiles: Vec<ProfileEntry>,
    pub grids: Vec<GridEntry>,
    pub pairs: Vec<PairEntry>,
}

/// Indicator of a set: one atom.
pub fn indicator_profile(value: f64, mass: f64) -> StepProfile {
    StepProfile::new(&[(value, mass)]).expect("valid atom")
}

/// The fixed two-level exemplar.
pub fn two_step_profile() -> StepProfile {
    StepProfile::new(&[(2.0, 1.0), (1.0, 1.0)]).expect("valid atoms")
}

/// Dyadic staircase: value j on mass 2^(-j). Discretizes an unbounded
/// logarithm, the shape that presses hardest on the exponential-class
/// bounds, while every finite-exponent norm stays finite.
pub fn log_staircase_profile(levels: usize) -> StepProfile {
    assert!(levels >= 1);
    let atoms: Vec<(f64, f64)> = (1..=levels)
        .map(|j| (j as f64, 0.5f64.powi(j as i32)))
        .collect();
    StepProfile::new(&atoms).expect("valid atoms")
}

fn far_distance(lo: f64, hi: f64) -> f64 {
    lo.abs().max(hi.abs())
}

/// Truncation of |x|^(-1/p) onto n cells over [-1,1], each cell carrying
/// the value at its far endpoint. Far-point sampling keeps the weak-norm
/// products value x mass^(1/p) flat across levels, so the discrete weak
/// norm lands on 2^(1/p) for every resolution instead of only in the limit.
pub fn power_grid_1d(p: f64, n: usize) -> GridFunction {
    assert!(p >= 1.0 && n >= 2);
    let h = 2.0 / n as f64;
    let cells: Vec<f64> = (0..n)
        .map(|i| {
            let lo = -1.0 + i as f64 * h;
            let far = far_distance(lo, lo + h);
            far.powf(-1.0 / p)
        })
        .collect();
    GridFunction::new_1d((-1.0, 1.0), n, cells).expect("valid grid")
}

/// Truncation of min(cap, log(1/|x|)) onto n cells over [-1,1], sampled at
/// the far endpoint of each cell so values stay finite and nonnegative.
pub fn trunc_log_grid_1d(cap: f64, n: usize) -> GridFunction {
    assert!(cap > 0.0 && n >= 2);
    let h = 2.0 / n as f64;
    let cells: Vec<f64> = (0..n)
        .map(|i| {
            let lo = -1.0 + i as f64 * h;
            let far = far_distance(lo, lo + h);
            cap.min((1.0 / far).ln())
        })
        .collect();
    GridFunction::new_1d((-1.0, 1.0), n, cells).expect("valid grid")
}

/// c on the left half, -c on the right half. |f| is constant, so the whole
/// oscillation lives in the sign.
pub fn sign_split_grid(c: f64, n: usize) -> GridFunction {
    assert!(n >= 2 && n % 2 == 0);
    let cells: Vec<f64> = (0..n).map(|i| if i < n / 2 { c } else { -c }).collect();
    GridFunction::new_1d((0.0, 2.0), n, cells).expect("valid grid")
}

/// The [1, 0] two-cell grid.
pub fn step_pair_grid() -> GridFunction {
    GridFunction::new_1d((0.0, 2.0), 2, vec![1.0, 0.0]).expect("valid grid")
}

fn random_profile(rng: &mut ChaCha8Rng) -> StepProfile {
    let count = rng.gen_range(2..=20usize);
    let atoms: Vec<(f64, f64)> = (0..count)
        .map(|_| {
            let v = 10f64.powf(rng.gen_range(-3.0..3.0));
            let m = 10f64.powf(rng.gen_range(-3.0..3.0));
            (v, m)
        })
        .collect();
    StepProfile::new(&atoms).expect("positive atoms")
}

fn random_cells(rng: &mut ChaCha8Rng, count: usize, heavy: bool) -> Vec<f64> {
    let amp = 10f64.powf(rng.gen_range(-1.0..1.0));
    if heavy {
        let dist = StudentT::new(3.0).expect("valid dof");
        (0..count).map(|_| amp * dist.sample(rng)).collect()
    } else {
        (0..count)
            .map(|_| amp * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng))
            .collect()
    }
}

fn random_grid_1d(rng: &mut ChaCha8Rng, max_res: usize, heavy: bool) -> GridFunction {
    let n = rng.gen_range(8..=max_res);
    let len = 10f64.powf(rng.gen_range(-1.0..1.0));
    let cells = random_cells(rng, n, heavy);
    GridFunction::new_1d((0.0, len), n, cells).expect("valid grid")
}

fn random_grid_2d(rng: &mut ChaCha8Rng, heavy: bool) -> GridFunction {
    let nx = rng.gen_range(8..=16usize);
    let ny = rng.gen_range(8..=16usize);
    let lx = 10f64.powf(rng.gen_range(-1.0..1.0));
    let ly = 10f64.powf(rng.gen_range(-1.0..1.0));
    let cells = random_cells(rng, nx * ny, heavy);
    GridFunction::new_2d((0.0, lx), (0.0, ly), nx, ny, cells).expect("valid grid")
}

/// Generate the corpus for a config. Zero counts mean genuinely empty
/// sections; otherwise the fixed exemplars come first and random entries
/// fill the remainder.
pub fn generate_corpus(cfg: &CorpusConfig) -> Result<Corpus, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut profiles = Vec::with_capacity(cfg.profiles);
    if cfg.profiles > 0 {
        let canon: [(&str, StepProfile); 3] = [
            ("canon:indicator", indicator_profile(1.0, 1.0)),
            ("canon:two-step", two_step_profile()),
            ("canon:log-staircase", log_staircase_profile(100)),
        ];
        for (id, profile) in canon {
            if profiles.len() < cfg.profiles {
                profiles.push(ProfileEntry {
                    id: id.to_string(),
                    profile,
                });
            }
        }
        while profiles.len() < cfg.profiles {
            let profile = random_profile(&mut rng);
            profiles.push(ProfileEntry {
                id: format!("rand:profile:{}", profiles.len()),
                profile,
            });
        }
    }

    let mut grids = Vec::with_capacity(cfg.grids_1d + cfg.grids_2d);
    if cfg.grids_1d > 0 {
        let canon: [(&str, GridFunction); 4] = [
            ("canon:power", power_grid_1d(2.0, 64)),
            ("canon:trunc-log", trunc_log_grid_1d(12.0, 64)),
            ("canon:sign-pair", sign_split_grid(1.0, 2)),
            ("canon:step-pair", step_pair_grid()),
        ];
        for (id, grid) in canon {
            if grids.len() < cfg.grids_1d {
                grids.push(GridEntry {
                    id: id.to_string(),
                    grid,
                });
            }
        }
        while grids.len() < cfg.grids_1d {
            let heavy = grids.len() % 2 == 1;
            let grid = random_grid_1d(&mut rng, 64, heavy);
            grids.push(GridEntry {
                id: format!("rand:grid1:{}", grids.len()),
                grid,
            });
        }
    }
    for i in 0..cfg.grids_2d {
        let grid = random_grid_2d(&mut rng, i % 2 == 1);
        grids.push(GridEntry {
            id: format!("rand:grid2:{i}"),
            grid,
        });
    }

    let mut pairs = Vec::with_capacity(cfg.grid_pairs);
    if cfg.grid_pairs > 0 {
        // aligned decaying exemplars: random noise pairs never press on the
        // product bounds, so these carry the suprema at every seed
        let canon: [(&str, GridFunction, GridFunction); 2] = [
            (
                "canon:pair:power",
                power_grid_1d(2.0, 32),
                power_grid_1d(2.0, 32),
            ),
            (
                "canon:pair:log",
                trunc_log_grid_1d(12.0, 32),
                trunc_log_grid_1d(12.0, 32),
            ),
        ];
        for (id, left, right) in canon {
            if pairs.len() < cfg.grid_pairs {
                pairs.push(PairEntry {
                    id: id.to_string(),
                    left,
                    right,
                });
            }
        }
    }
    while pairs.len() < cfg.grid_pairs {
        let i = pairs.len();
        let n = rng.gen_range(8..=32usize);
        let len = 10f64.powf(rng.gen_range(-1.0..1.0));
        let left = random_cells(&mut rng, n, i % 2 == 1);
        let right = random_cells(&mut rng, n, i % 3 == 1);
        pairs.push(PairEntry {
            id: format!("rand:pair:{i}"),
            left: GridFunction::new_1d((0.0, len), n, left)?,
            right: GridFunction::new_1d((0.0, len), n, right)?,
        });
    }

    Ok(Corpus {
        profiles,
        grids,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use spaces::{bmo_norm, rearrange, CubeFamily};

    #[test]
    fn power_family_weak_norm_is_exact() {
        for n in [64usize, 4096] {
            let grid = power_grid_1d(2.0, n);
            let rp = rearrange(&grid.global_profile());
            let weak = rp.weak_lp_norm(2.0).unwrap();
            let expected = 2f64.sqrt();
            assert!(
                (weak - expected).abs() / expected < 0.02,
                "n={n}: weak = {weak}"
            );
            assert!((weak - expected).abs() / expected < 1e-12);
        }
    }

    #[test]
    fn trunc_log_family_has_moderate_oscillation() {
        let grid = trunc_log_grid_1d(12.0, 64);
        let fam = CubeFamily::all_cubes(&grid);
        let bmo = bmo_norm(&grid, &fam).unwrap();
        assert!((0.1..10.0).contains(&bmo), "bmo = {bmo}");
    }

    #[test]
    fn trunc_log_cap_does_not_bind_at_desk_scale() {
        let grid = trunc_log_grid_1d(12.0, 8192);
        let sup = grid.sup_norm();
        assert!(sup < 12.0, "sup = {sup}");
        assert!(sup > 8.0);
    }

    #[test]
    fn generation_is_bit_identical() {
        let cfg = CorpusConfig {
            profiles: 30,
            grids_1d: 8,
            grids_2d: 3,
            grid_pairs: 4,
            seed: 7,
        };
        let a = generate_corpus(&cfg).unwrap();
        let b = generate_corpus(&cfg).unwrap();
        assert_eq!(a.profiles.len(), 30);
        for (x, y) in a.profiles.iter().zip(&b.profiles) {
            assert_eq!(x.id, y.id);
            let (xa, ya) = (x.profile.atoms(), y.profile.atoms());
            assert_eq!(xa.len(), ya.len());
            for (u, v) in xa.iter().zip(ya) {
                assert!(u.value == v.value && u.mass == v.mass);
            }
        }
        for (x, y) in a.grids.iter().zip(&b.grids) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.grid.cells(), y.grid.cells());
        }
        for (x, y) in a.pairs.iter().zip(&b.pairs) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.left.cells(), y.left.cells());
            assert_eq!(x.right.cells(), y.right.cells());
        }
    }

    #[test]
    fn empty_request_gives_empty_corpus() {
        let cfg = CorpusConfig {
            profiles: 0,
            grids_1d: 0,
            grids_2d: 0,
            grid_pairs: 0,
            seed: 42,
        };
        let corpus = generate_corpus(&cfg).unwrap();
        assert!(corpus.profiles.is_empty());
        assert!(corpus.grids.is_empty());
        assert!(corpus.pairs.is_empty());
    }

    #[test]
    fn default_counts_and_exemplars() {
        let corpus = generate_corpus(&CorpusConfig::default()).unwrap();
        assert_eq!(corpus.profiles.len(), 500);
        assert_eq!(corpus.grids.len(), 26);
        assert_eq!(corpus.pairs.len(), 50);
        assert_eq!(corpus.profiles[0].id, "canon:indicator");
        assert_eq!(corpus.profiles[2].id, "canon:log-staircase");
        assert_eq!(corpus.grids[1].id, "canon:trunc-log");
        assert_eq!(corpus.pairs[0].id, "canon:pair:power");
        assert_eq!(corpus.pairs[1].id, "canon:pair:log");
        for p in &corpus.pairs {
            assert_eq!(p.left.bounds(), p.right.bounds());
            assert_eq!(p.left.resolution(), p.right.resolution());
        }
        let dim2 = corpus.grids.iter().filter(|g| g.grid.dim() == 2).count();
        assert_eq!(dim2, 6);
        for g in &corpus.grids {
            if g.grid.dim() == 1 {
                assert!(g.grid.resolution()[0] <= 64);
            }
        }
    }
}
