//! Named bundles of checks sharing one deterministic corpus, plus the
//! report envelope the command line prints.

use crate::checks::{
    check_bilinear, check_embeddings, check_identities, check_john_nirenberg,
    check_lorentz_interpolation, check_morrey_interpolation, check_pointwise_keys,
    estimate_w_vs_bmo, special_function_checks, JnSetting, DEFAULT_TRIPLES,
};
use crate::corpus::{generate_corpus, Corpus, CorpusConfig};
use crate::report::{push_json_string, CheckReport};
use crate::tol::DEFAULT_Q_GRID;
use spaces::{Error, Exponent};

pub const JN_RATES: [f64; 3] = [0.1, 0.25, 0.5];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Keys,
    LorentzInterp,
    MorreyInterp,
    Embeddings,
    Bilinear,
    Jn,
    Special,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s.to_ascii_lowercase().as_str() {
            "identities" => Some(Suite::Identities),
            "keys" => Some(Suite::Keys),
            "lorentz-interp" | "lorentz_interp" => Some(Suite::LorentzInterp),
            "morrey-interp" | "morrey_interp" => Some(Suite::MorreyInterp),
            "embeddings" => Some(Suite::Embeddings),
            "bilinear" => Some(Suite::Bilinear),
            "jn" => Some(Suite::Jn),
            "special" => Some(Suite::Special),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Keys => "keys",
            Suite::LorentzInterp => "lorentz-interp",
            Suite::MorreyInterp => "morrey-interp",
            Suite::Embeddings => "embeddings",
            Suite::Bilinear => "bilinear",
            Suite::Jn => "jn",
            Suite::Special => "special",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Identities,
                Suite::Keys,
                Suite::LorentzInterp,
                Suite::MorreyInterp,
                Suite::Embeddings,
                Suite::Bilinear,
                Suite::Jn,
                Suite::Special,
            ],
            other => vec![other],
        }
    }

    fn needs_corpus(self) -> bool {
        !matches!(self, Suite::Special)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub p: Option<f64>,
    pub r: Option<Exponent>,
    pub kappa: Option<f64>,
    pub qs: Option<Vec<f64>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 42,
            p: None,
            r: None,
            kappa: None,
            qs: None,
        }
    }
}

impl SuiteOptions {
    fn p(&self) -> f64 {
        self.p.unwrap_or(2.0)
    }
    fn r(&self) -> Exponent {
        self.r.unwrap_or(Exponent::Finite(self.p() + 1.0))
    }
    fn kappa(&self) -> f64 {
        self.kappa.unwrap_or(0.5)
    }
    fn qs(&self) -> Vec<f64> {
        self.qs.clone().unwrap_or_else(|| DEFAULT_Q_GRID.to_vec())
    }
    /// Exponential-moment checks start their series at an integer power;
    /// they keep the classical base case unless the caller pins one.
    fn jn_p(&self) -> f64 {
        self.p.unwrap_or(1.0)
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<CheckReport>, Error> {
    let members = suite.members();
    let corpus: Option<Corpus> = if members.iter().any(|m| m.needs_corpus()) {
        Some(generate_corpus(&CorpusConfig {
            seed: opts.seed,
            ..CorpusConfig::default()
        })?)
    } else {
        None
    };

    let mut reports = Vec::new();
    for member in members {
        reports.extend(run_member(member, opts, corpus.as_ref())?);
    }
    Ok(reports)
}

fn run_member(
    suite: Suite,
    opts: &SuiteOptions,
    corpus: Option<&Corpus>,
) -> Result<Vec<CheckReport>, Error> {
    let corpus_for = |_: ()| corpus.expect("corpus prepared for corpus-backed suites");
    match suite {
        Suite::Identities => check_identities(corpus_for(())),
        Suite::Keys => check_pointwise_keys(corpus_for(()), opts.p(), opts.r()),
        Suite::LorentzInterp => {
            let mut reports =
                check_lorentz_interpolation(corpus_for(()), opts.p(), opts.r(), &opts.qs())?;
            reports.extend(estimate_w_vs_bmo(corpus_for(()))?);
            Ok(reports)
        }
        Suite::MorreyInterp => check_morrey_interpolation(
            corpus_for(()),
            opts.p(),
            opts.r(),
            opts.kappa(),
            &opts.qs(),
        ),
        Suite::Embeddings => check_embeddings(corpus_for(()), &DEFAULT_TRIPLES, opts.kappa()),
        Suite::Bilinear => check_bilinear(
            corpus_for(()),
            (opts.kappa(), opts.kappa()),
            3,
            &opts.qs(),
        ),
        Suite::Jn => {
            let mut reports = check_john_nirenberg(
                corpus_for(()),
                opts.jn_p(),
                &JN_RATES,
                opts.kappa(),
                JnSetting::Global,
            )?;
            reports.extend(check_john_nirenberg(
                corpus_for(()),
                opts.jn_p(),
                &JN_RATES,
                opts.kappa(),
                JnSetting::Morrey,
            )?);
            Ok(reports)
        }
        Suite::Special => Ok(special_function_checks()),
        Suite::All => unreachable!("members() flattens the umbrella suite"),
    }
}

pub fn suite_passes(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passes)
}

/// Envelope printed by the verification command. Byte-deterministic for a
/// fixed suite, seed and corpus.
pub fn render_suite_json(
    suite: &str,
    seed: u64,
    version: &str,
    reports: &[CheckReport],
) -> String {
    let mut out = String::new();
    out.push_str("{\"suite\":");
    push_json_string(&mut out, suite);
    out.push_str(&format!(",\"seed\":{seed},\"version\":"));
    push_json_string(&mut out, version);
    out.push_str(&format!(
        ",\"pass\":{},\"checks\":[\n",
        suite_passes(reports)
    ));
    for (i, report) in reports.iter().enumerate() {
        out.push_str(&report.to_json());
        if i + 1 < reports.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in [
            "identities",
            "keys",
            "lorentz-interp",
            "morrey-interp",
            "embeddings",
            "bilinear",
            "jn",
            "special",
            "all",
        ] {
            let suite = Suite::parse(name).unwrap();
            assert_eq!(suite.name(), name);
        }
        assert!(Suite::parse("spectral").is_none());
        assert_eq!(Suite::parse("LORENTZ_INTERP"), Some(Suite::LorentzInterp));
    }

    #[test]
    fn special_suite_runs_without_corpus_and_renders_deterministically() {
        let opts = SuiteOptions::default();
        let a = run_suite(Suite::Special, &opts).unwrap();
        let b = run_suite(Suite::Special, &opts).unwrap();
        let ja = render_suite_json("special", 42, "0.0.0", &a);
        let jb = render_suite_json("special", 42, "0.0.0", &b);
        assert_eq!(ja, jb);
        assert!(ja.starts_with("{\"suite\":\"special\",\"seed\":42,\"version\":\"0.0.0\",\"pass\":"));
        assert!(suite_passes(&a));
    }

    #[test]
    fn keys_suite_refuses_the_boundary_exponent() {
        let opts = SuiteOptions {
            p: Some(1.0),
            ..SuiteOptions::default()
        };
        let err = run_suite(Suite::Keys, &opts).unwrap_err();
        assert!(err.to_string().contains("fails when p=1"), "{err}");
    }
}
