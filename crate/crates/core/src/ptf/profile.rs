use serde::{Deserialize, Serialize};

use super::{compose_ptf, outer_ptf, verify_ptf_exhaustive, Construction};
use crate::bits::exhaustion_limit;
use crate::boolean::{oddmaxbit, random_decision_list, DecisionList};
use crate::error::{invalid, Result};
use crate::rng::SeedSplitter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Oddmaxbit,
    /// Random lists over `k` variables, one seed per `k` split from `seed`.
    Random { seed: u64 },
}

impl Family {
    pub fn list(&self, k: usize) -> Result<DecisionList> {
        match *self {
            Family::Oddmaxbit => oddmaxbit(k),
            Family::Random { seed } => random_decision_list(k, k, SeedSplitter::new(seed).child(k as u64)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TradeoffRow {
    pub k: usize,
    pub h: usize,
    pub degree: usize,
    /// `log₂ W`, rounded to 1e-6.
    pub log2_weight: f64,
    pub bound_log2_weight: f64,
    pub verified: Option<bool>,
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Analytic `log₂ W` curve for the construction.
///
/// Outer: `2 + ⌈k/h⌉ + h` exactly. Composition: `⌈k/h⌉ + √h·log₂²h`, the
/// shape of the weight exponent with its hidden constant set to 1.
pub fn bound_log2_weight(construction: Construction, k: usize, h: usize) -> f64 {
    let blocks = k.div_ceil(h) as f64;
    match construction {
        Construction::Outer | Construction::Exact => 2.0 + blocks + h as f64,
        _ => {
            let hf = h as f64;
            blocks + hf.sqrt() * hf.log2().powi(2)
        }
    }
}

/// Measures degree and weight over a `(k, h)` grid; pairs out of range are skipped.
pub fn tradeoff_profile(
    family: Family,
    ks: &[usize],
    hs: &[usize],
    construction: Construction,
    verify: bool,
) -> Result<Vec<TradeoffRow>> {
    let min_h = match construction {
        Construction::Outer => 1,
        Construction::Compose => 2,
        other => return Err(invalid(format!("profile supports outer or compose, got {other:?}"))),
    };
    let limit = exhaustion_limit();
    let mut rows = Vec::new();
    for &k in ks {
        let list = family.list(k)?;
        for &h in hs {
            if h < min_h || h > k {
                continue;
            }
            let ptf = match construction {
                Construction::Outer => outer_ptf(&list, h)?,
                _ => compose_ptf(&list, h)?,
            };
            let verified = if verify {
                Some(verify_ptf_exhaustive(&ptf, &list.clone().into(), limit)?.valid)
            } else {
                None
            };
            rows.push(TradeoffRow {
                k,
                h,
                degree: ptf.degree(),
                log2_weight: round6(ptf.meta.log2_weight),
                bound_log2_weight: round6(bound_log2_weight(construction, k, h)),
                verified,
            });
        }
    }
    Ok(rows)
}

/// CSV with header `k,h,degree,log2_weight,bound_log2_weight,verified`.
pub fn rows_to_csv(rows: &[TradeoffRow]) -> String {
    let mut out = String::from("k,h,degree,log2_weight,bound_log2_weight,verified\n");
    for r in rows {
        let verified = r.verified.map_or(String::new(), |v| v.to_string());
        out.push_str(&format!(
            "{},{},{},{:.6},{:.6},{}\n",
            r.k, r.h, r.degree, r.log2_weight, r.bound_log2_weight, verified
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oddmaxbit_grid() {
        let rows =
            tradeoff_profile(Family::Oddmaxbit, &[12], &[2, 3, 4, 6, 12], Construction::Compose, true).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.verified == Some(true)));
        let csv = rows_to_csv(&rows);
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("k,h,degree,log2_weight,bound_log2_weight,verified\n12,2,"));
    }

    #[test]
    fn outer_profile_within_bound() {
        let rows = tradeoff_profile(
            Family::Random { seed: 3 },
            &[6, 9, 12],
            &[1, 2, 3, 4, 5, 6],
            Construction::Outer,
            true,
        )
        .unwrap();
        for r in &rows {
            assert!(r.verified == Some(true));
            assert!(r.log2_weight <= r.bound_log2_weight, "{r:?}");
        }
    }

    #[test]
    fn skips_out_of_range() {
        let rows = tradeoff_profile(Family::Oddmaxbit, &[3], &[1, 2, 3, 4], Construction::Compose, false).unwrap();
        assert_eq!(rows.iter().map(|r| r.h).collect::<Vec<_>>(), [2, 3]);
    }
}
