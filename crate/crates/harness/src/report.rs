//! Check reports with a fixed JSON layout. Byte determinism is a contract:
//! same seed, same params, same version, same bytes.

/// One failed case: the two sides and their ratio.
#[derive(Debug, Clone)]
pub struct Violation {
    pub case: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check_id: String,
    pub params: Vec<(String, String)>,
    pub cases: usize,
    pub vacuous: usize,
    pub violations: Vec<Violation>,
    pub worst_ratio: f64,
    pub constant_estimate: Option<f64>,
    pub notes: Vec<String>,
    /// Pass verdict for estimate-style checks whose criteria are not
    /// "violations empty". Not serialized.
    pub pass_hint: Option<bool>,
}

impl CheckReport {
    pub fn new(check_id: &str) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            params: Vec::new(),
            cases: 0,
            vacuous: 0,
            violations: Vec::new(),
            worst_ratio: 0.0,
            constant_estimate: None,
            notes: Vec::new(),
            pass_hint: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl std::fmt::Display) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    /// One case of an inequality lhs <= rhs * (1 + slack). rhs must be a
    /// genuine positive bound; degenerate cases belong in record_vacuous.
    pub fn record(&mut self, case: &str, lhs: f64, rhs: f64, slack: f64) {
        assert!(
            lhs.is_finite() && rhs.is_finite() && rhs > 0.0,
            "malformed case {case}: lhs {lhs}, rhs {rhs}"
        );
        self.cases += 1;
        let ratio = lhs / rhs;
        if ratio > self.worst_ratio {
            self.worst_ratio = ratio;
        }
        if ratio > 1.0 + slack {
            self.violations.push(Violation {
                case: case.to_string(),
                lhs,
                rhs,
                ratio,
            });
        }
    }

    /// Two routes to the same number. Stored with the larger side as lhs so
    /// the ratio keeps the worst_ratio convention.
    pub fn record_agreement(&mut self, case: &str, a: f64, b: f64, tol: f64) {
        assert!(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0);
        self.cases += 1;
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == 0.0 {
            // both routes returned exact zero
            if 1.0 > self.worst_ratio {
                self.worst_ratio = 1.0;
            }
            return;
        }
        let ratio = if lo > 0.0 { hi / lo } else { f64::MAX };
        if ratio > self.worst_ratio {
            self.worst_ratio = ratio;
        }
        if ratio > 1.0 + tol {
            self.violations.push(Violation {
                case: case.to_string(),
                lhs: hi,
                rhs: lo,
                ratio,
            });
        }
    }

    pub fn record_vacuous(&mut self) {
        self.cases += 1;
        self.vacuous += 1;
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passes(&self) -> bool {
        match self.pass_hint {
            Some(verdict) => verdict,
            None => self.violations.is_empty(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(512);
        out.push_str("{\"check_id\":");
        push_json_string(&mut out, &self.check_id);
        out.push_str(",\"params\":{");
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            push_json_string(&mut out, k);
            out.push(':');
            push_json_string(&mut out, v);
        }
        out.push_str("},\"cases\":");
        out.push_str(&self.cases.to_string());
        out.push_str(",\"vacuous\":");
        out.push_str(&self.vacuous.to_string());
        out.push_str(",\"violations\":[");
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("{\"case\":");
            push_json_string(&mut out, &v.case);
            out.push_str(",\"lhs\":");
            out.push_str(&fmt_num(v.lhs));
            out.push_str(",\"rhs\":");
            out.push_str(&fmt_num(v.rhs));
            out.push_str(",\"ratio\":");
            out.push_str(&fmt_num(v.ratio));
            out.push('}');
        }
        out.push_str("],\"worst_ratio\":");
        out.push_str(&fmt_num(self.worst_ratio));
        out.push_str(",\"constant_estimate\":");
        match self.constant_estimate {
            Some(c) => out.push_str(&fmt_num(c)),
            None => out.push_str("null"),
        }
        out.push_str(",\"notes\":");
        push_json_string(&mut out, &self.notes.join("; "));
        out.push('}');
        out
    }
}

/// 12 significant digits, scientific; the one number format every report
/// uses. Total on finite inputs only.
pub fn fmt_num(x: f64) -> String {
    assert!(x.is_finite(), "report numbers must be finite, got {x}");
    format!("{:.11e}", x)
}

pub fn push_json_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_is_twelve_significant_digits() {
        assert_eq!(fmt_num(2.0), "2.00000000000e0");
        assert_eq!(fmt_num(0.001234567890123), "1.23456789012e-3");
        assert_eq!(fmt_num(-1.5), "-1.50000000000e0");
    }

    #[test]
    fn report_json_shape() {
        let mut r = CheckReport::new("demo").param("p", 2).param("r", "inf");
        r.record("ok-case", 1.0, 2.0, 1e-9);
        r.record("bad-case", 3.0, 2.0, 1e-9);
        r.record_vacuous();
        r.constant_estimate = Some(1.5);
        r.note("one");
        r.note("two");
        let json = r.to_json();
        assert_eq!(
            json,
            "{\"check_id\":\"demo\",\"params\":{\"p\":\"2\",\"r\":\"inf\"},\
             \"cases\":3,\"vacuous\":1,\"violations\":[{\"case\":\"bad-case\",\
             \"lhs\":3.00000000000e0,\"rhs\":2.00000000000e0,\"ratio\":1.50000000000e0}],\
             \"worst_ratio\":1.50000000000e0,\"constant_estimate\":1.50000000000e0,\
             \"notes\":\"one; two\"}"
        );
        assert!(!r.passes());
    }

    #[test]
    fn agreement_is_symmetric_and_exact_zero_is_fine() {
        let mut r = CheckReport::new("agree");
        r.record_agreement("a", 1.0, 1.0 + 1e-12, 1e-9);
        r.record_agreement("z", 0.0, 0.0, 1e-9);
        assert!(r.violations.is_empty());
        r.record_agreement("b", 1.0, 1.1, 1e-9);
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].lhs > r.violations[0].rhs);
    }

    #[test]
    fn string_escaping() {
        let mut out = String::new();
        push_json_string(&mut out, "a\"b\\c\nd");
        assert_eq!(out, "\"a\\\"b\\\\c\\nd\"");
    }
}
