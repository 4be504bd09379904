use super::eliminate::PrimeRecord;
use crate::counting::EulerFactor;
use crate::hecke::CharacterRecord;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ProvedMatch,
    Verified,
    Inconclusive,
    NoSurvivor,
    Failed,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        matches!(self, Verdict::ProvedMatch | Verdict::Verified)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ProvedMatch => "proved-match",
            Verdict::Verified => "verified",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NoSurvivor => "no-survivor",
            Verdict::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MatchReport {
    pub case: u32,
    pub target: String,
    pub infinity_type: String,
    pub bad_primes: Vec<u64>,
    pub modulus: String,
    pub modulus_norm: String,
    pub candidates_before: u64,
    pub candidates_after: u64,
    pub orbits_after: usize,
    pub character: Option<CharacterRecord>,
    pub orbit_size: usize,
    pub conductor_norm: Option<String>,
    pub comparisons: Vec<PrimeRecord>,
    pub rejected_orbits: Vec<(String, u64)>,
    pub table_prime: u64,
    pub table_row: Option<Vec<String>>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DecompositionRecord {
    pub p: u64,
    /// Degrees of the exterior square, algebraic part, slot and quotient.
    pub degrees: [usize; 4],
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PartCReport {
    pub case: u32,
    /// How the weight-2 slot character was obtained.
    pub slot_source: String,
    pub slot: Option<MatchReport>,
    pub slot_character: Option<CharacterRecord>,
    pub psi_prime: Option<MatchReport>,
    pub decomposition: Vec<DecompositionRecord>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SigmaReport {
    pub case: u32,
    /// `k` such that the curve character used is `psi_A o sigma^k`.
    pub curve_twist: Option<u32>,
    pub assignment: String,
    pub degree_one_primes: usize,
    pub rational_primes: Vec<u64>,
    /// `log10` of the largest residual, rounded down.
    pub max_residual_log10: Option<i64>,
    pub digits: u32,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CaseReport {
    pub case: u32,
    pub surface: Option<MatchReport>,
    pub surface_note: Option<String>,
    pub curve: Option<MatchReport>,
    pub part_c: Option<PartCReport>,
    pub sigma: Option<SigmaReport>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TableRow {
    pub case: u32,
    pub prime: u64,
    pub conductor_norm: Option<String>,
    pub coefficients: Option<Vec<String>>,
    pub rendered: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FullReport {
    pub format_version: u32,
    pub configuration: Vec<(String, String)>,
    pub scope_note: String,
    pub cases: Vec<CaseReport>,
    pub weight_two_table: Vec<TableRow>,
    pub curve_table: Vec<TableRow>,
    pub psi_prime_table: Vec<TableRow>,
}

impl FullReport {
    pub fn verdicts(&self) -> Vec<Verdict> {
        let mut v = Vec::new();
        for c in &self.cases {
            v.extend(c.surface.iter().map(|r| r.verdict));
            v.extend(c.curve.iter().map(|r| r.verdict));
            v.extend(c.part_c.iter().map(|r| r.verdict));
            v.extend(c.sigma.iter().map(|r| r.verdict));
        }
        v
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let tables = [
            ("Weight-2 characters (surface slot)", &self.weight_two_table),
            ("Curve characters", &self.curve_table),
            ("Conductor-one characters", &self.psi_prime_table),
        ];
        for (title, rows) in tables {
            let _ = writeln!(out, "{title}");
            let _ = writeln!(out, "{:<3} {:<12} {:<4} Euler factor", "i", "conductor", "p");
            for r in rows {
                let cond = r.conductor_norm.clone().unwrap_or_else(|| "-".into());
                let _ = writeln!(out, "{:<3} {:<12} {:<4} {}", r.case, cond, r.prime, r.rendered);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "Verdicts");
        for c in &self.cases {
            let mut parts = Vec::new();
            if let Some(r) = &c.surface {
                parts.push(format!("surface {}", r.verdict.as_str()));
            } else if let Some(n) = &c.surface_note {
                parts.push(format!("surface: {n}"));
            }
            if let Some(r) = &c.curve {
                parts.push(format!("curve {}", r.verdict.as_str()));
            }
            if let Some(r) = &c.part_c {
                parts.push(format!("wedge square {}", r.verdict.as_str()));
            }
            if let Some(r) = &c.sigma {
                parts.push(format!("sigma relation {}", r.verdict.as_str()));
            }
            let _ = writeln!(out, "{}: {}", c.case, parts.join(", "));
        }
        out
    }
}

/// `c = u p^v` with `p` not dividing `u`.
fn split_power(c: &BigInt, p: u64) -> (BigInt, u32) {
    let pb = BigInt::from(p);
    let mut u = c.clone();
    let mut v = 0;
    while !u.is_zero() && u.is_multiple_of(&pb) {
        u /= &pb;
        v += 1;
    }
    (u, v)
}

/// `1 - 6T + 15*17 T^2 + ...`, pulling out the power of `p` in each
/// coefficient.
pub fn render_factor(f: &EulerFactor) -> String {
    let mut s = String::new();
    for (k, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (u, v) = split_power(c, f.p);
        let sign = if c.is_negative() { "-" } else { "+" };
        let ua = u.abs();
        let mut body = String::new();
        let unit = ua == BigInt::from(1);
        if !unit || v == 0 {
            body.push_str(&ua.to_string());
        }
        if v > 0 {
            if !body.is_empty() {
                body.push('*');
            }
            body.push_str(&f.p.to_string());
            if v > 1 {
                let _ = write!(body, "^{v}");
            }
        }
        let t = match k {
            0 => String::new(),
            1 => "T".into(),
            _ => format!("T^{k}"),
        };
        if k == 0 {
            s.push_str(&format!("{}{}", if c.is_negative() { "-" } else { "" }, body));
        } else if body == "1" {
            let _ = write!(s, " {sign} {t}");
        } else {
            let _ = write!(s, " {sign} {body} {t}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_pulls_out_powers() {
        let c: Vec<BigInt> = [1i64, -6, 255, 3468, 73695, -501126, 24137569].iter().map(|&x| BigInt::from(x)).collect();
        let f = EulerFactor::new(17, 2, c);
        assert_eq!(
            render_factor(&f),
            "1 - 6 T + 15*17 T^2 + 12*17^2 T^3 + 15*17^3 T^4 - 6*17^4 T^5 + 17^6 T^6"
        );
    }
}
