//! Quantitative connectivity estimates and the convergence bookkeeping they
//! support.
//!
//! Everything here is closed-form arithmetic; verdicts derive from the
//! formulas only, never from computed pages.

use crate::graph::Family;
use num_rational::Rational64;
use serde::Serialize;

/// How cartesian the `k`-cube of punctured embeddings is: `(k-1)(n-2)+1`.
pub fn cube_cartesian(k: u32, n: u32) -> i64 {
    assert!(k >= 1 && n >= 1, "cube_cartesian needs k >= 1, n >= 1");
    (k as i64 - 1) * (n as i64 - 2) + 1
}

/// Connectivity of the `j`-th layer of the Tot tower: `(j-1)(n-3)`.
///
/// Equals [`cube_cartesian`]`(j, n) - j`: the layer is a `j`-fold loop space
/// of a total fiber, and each loop drops connectivity by one.
pub fn layer_connectivity(j: u32, n: u32) -> i64 {
    assert!(j >= 1 && n >= 3, "layer_connectivity needs j >= 1, n >= 3");
    (j as i64 - 1) * (n as i64 - 3)
}

/// The window `[p(n-1)/2, (pm-1)(n-1)]` outside which `E1^{-p,q}` vanishes
/// for `p >= 1` (links and homotopy links).  The lower bound is an exact
/// rational (it may be a half-integer).
pub fn vanishing_region(m: u32, p: u32, n: u32) -> (Rational64, i64) {
    assert!(m >= 1 && p >= 1 && n >= 3);
    let low = Rational64::new(p as i64 * (n as i64 - 1), 2);
    let high = (p as i64 * m as i64 - 1) * (n as i64 - 1);
    (low, high)
}

/// Integer form of [`vanishing_region`] for exact comparisons:
/// `(low_numerator, low_denominator, high)` with `q >= low` meaning
/// `q * low_denominator >= low_numerator`.
pub fn vanishing_window(m: u32, p: u32, n: u32) -> (i64, i64, i64) {
    let (low, high) = vanishing_region(m, p, n);
    (*low.numer(), *low.denom(), high)
}

/// Convergence status of one spectral sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvergenceStatus {
    /// Convergence is established for these parameters.
    Established,
    /// No convergence statement is available for these parameters.
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct Citation {
    /// Which closed-form estimate the verdict rests on.
    pub rule: String,
    /// The numeric bound instantiated at these parameters.
    pub bound: String,
}

/// Verdict for the homotopy and cohomology spectral sequences of a family at
/// ambient dimension `n`.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceVerdict {
    pub family: Family,
    pub n: u32,
    pub cohomology: ConvergenceStatus,
    pub homotopy: ConvergenceStatus,
    /// What the sequences converge to, when established.
    pub target: Option<String>,
    pub citations: Vec<Citation>,
}

/// The convergence trichotomy:
///
/// * links (and knots), `n > 3`: both sequences converge, to the homotopy
///   and cohomology of the link space itself;
/// * hlinks, `n > 3`: the cohomology sequence converges to the totalization
///   of the model; the homotopy sequence is unknown;
/// * braids: the totalization is the loop space `Ω C(m, I^{n-1})`, but no
///   convergence statement is available for the sequences;
/// * `n = 3`: everything is unknown.
pub fn convergence_verdict(family: Family, n: u32) -> ConvergenceVerdict {
    use ConvergenceStatus::*;
    let fam = family.normalized();
    let mut citations = Vec::new();
    let (cohomology, homotopy, target) = match fam {
        Family::Links if n > 3 => {
            citations.push(Citation {
                rule: "layer_connectivity".into(),
                bound: format!(
                    "(j-1)(n-3) = (j-1)*{} strictly increases with j",
                    n as i64 - 3
                ),
            });
            citations.push(Citation {
                rule: "tower_convergence".into(),
                bound: format!("n-1-2 = {} > 0 for strands of dimension 1", n as i64 - 3),
            });
            citations.push(Citation {
                rule: "vanishing_line".into(),
                bound: format!("lower slope -(n-1)/2 = -{}/2 steeper than -1", n - 1),
            });
            (
                Established,
                Established,
                Some(if family == Family::Knots {
                    "the space of long knots".to_string()
                } else {
                    "the space of string links".to_string()
                }),
            )
        }
        Family::HLinks if n > 3 => {
            citations.push(Citation {
                rule: "vanishing_line".into(),
                bound: format!("lower slope -(n-1)/2 = -{}/2 steeper than -1", n - 1),
            });
            citations.push(Citation {
                rule: "no_isotopy_extension_for_link_maps".into(),
                bound: "no connectivity estimate for the homotopy tower layers".into(),
            });
            (
                Established,
                Unknown,
                Some("the totalization of the homotopy-string-link model".to_string()),
            )
        }
        Family::Braids => {
            citations.push(Citation {
                rule: "loop_space_model".into(),
                bound: format!(
                    "totalization is the loop space of configurations in dimension {}",
                    n - 1
                ),
            });
            (Unknown, Unknown, Some(format!(
                "formally: the loop space of the configuration space of m points in I^{}",
                n - 1
            )))
        }
        _ => {
            citations.push(Citation {
                rule: "layer_connectivity".into(),
                bound: "(j-1)(n-3) = 0 for all j at n = 3".into(),
            });
            (Unknown, Unknown, None)
        }
    };
    ConvergenceVerdict {
        family,
        n,
        cohomology,
        homotopy,
        target,
        citations,
    }
}
