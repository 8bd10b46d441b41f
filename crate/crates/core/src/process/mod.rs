//! Macdonald measures and N-step processes as formal truncated series, with
//! correlation functions of the four eigenvalue observable families computed
//! three ways: by direct summation, through matrix elements of free-field
//! operators, and from the explicit multi-contour formulas.

pub mod formula;
pub mod measure;
pub mod operator;

pub use formula::{
    fredholm_det, fredholm_expectation_sides, multilevel_formula, q_independence_check, q_whittaker_limit_check,
    w_factor, w_inversion_check, KernelSpec, KernelVariant, LaurentSeries, QWhittakerReport, WKind,
};
pub use measure::{
    cauchy_product, correlation_direct, measure_weight, normalization, partition_tuples_up_to, pi_inverse,
    process_weight,
};
pub use operator::{correlation_operator, observable_operator, operator_normalization};

use crate::coefficients::RatFunc;
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symfunc::{elementary_from_power_sums, g_from_power_sums, power_sums, Specialization};
use std::fmt;
use std::str::FromStr;

/// Variable counts of one level of the process.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelVars {
    pub x: usize,
    pub y: usize,
}

/// An `N`-level process with finitely many specialization variables per level
/// and a global total-degree cutoff. Variables are numbered level by level,
/// `X^{(1)}, Y^{(1)}, X^{(2)}, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessSpec {
    pub levels: Vec<LevelVars>,
    pub degree: u32,
}

impl ProcessSpec {
    pub fn new(levels: Vec<LevelVars>, degree: u32) -> Self {
        assert!(!levels.is_empty(), "a process has at least one level");
        let total: usize = levels.iter().map(|l| l.x + l.y).sum();
        assert!(total <= u8::MAX as usize, "too many variables");
        ProcessSpec { levels, degree }
    }

    /// `N` levels with the same variable counts.
    pub fn uniform(n: usize, x: usize, y: usize, degree: u32) -> Self {
        Self::new(vec![LevelVars { x, y }; n], degree)
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    fn offset(&self, level: usize) -> usize {
        self.levels[..level].iter().map(|l| l.x + l.y).sum()
    }

    /// Indices of `X^{(level+1)}`.
    pub fn x_vars(&self, level: usize) -> Vec<usize> {
        let o = self.offset(level);
        (o..o + self.levels[level].x).collect()
    }

    /// Indices of `Y^{(level+1)}`.
    pub fn y_vars(&self, level: usize) -> Vec<usize> {
        let o = self.offset(level) + self.levels[level].x;
        (o..o + self.levels[level].y).collect()
    }

    pub fn total_vars(&self) -> usize {
        self.offset(self.levels.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObservableFamily {
    /// `e_r(q^λ t^{-δ+1})`.
    E,
    /// `e_r(q^{-λ} t^{δ-1})`.
    EPrime,
    /// `g_r(q^λ t^{-δ}; q, t)`.
    G,
    /// `q^r g_r(q^{-λ} t^{δ-1}; q, t)`.
    GPrime,
    /// `1 + (1-t) Σ_i (1 - q^{λ_i}) t^{-i}`.
    HatE1,
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Observable {
    pub family: ObservableFamily,
    pub r: u32,
}

impl Observable {
    pub fn new(family: ObservableFamily, r: u32) -> Self {
        let needs_rank = !matches!(family, ObservableFamily::HatE1 | ObservableFamily::Unit);
        assert!(!needs_rank || r >= 1, "observable rank starts at 1");
        Observable { family, r: if needs_rank { r } else { 0 } }
    }

    pub fn unit() -> Self {
        Observable::new(ObservableFamily::Unit, 0)
    }

    pub fn hat_e1() -> Self {
        Observable::new(ObservableFamily::HatE1, 0)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            ObservableFamily::E => write!(f, "E{}", self.r),
            ObservableFamily::EPrime => write!(f, "Ep{}", self.r),
            ObservableFamily::G => write!(f, "G{}", self.r),
            ObservableFamily::GPrime => write!(f, "Gp{}", self.r),
            ObservableFamily::HatE1 => write!(f, "hatE1"),
            ObservableFamily::Unit => write!(f, "unit"),
        }
    }
}

/// Accepts `unit`, `hatE1`, and `E<r>`, `Ep<r>`, `G<r>`, `Gp<r>`.
impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "unit" | "1" => return Ok(Observable::unit()),
            "hatE1" => return Ok(Observable::hat_e1()),
            _ => {}
        }
        let digits = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::Parse(format!("observable {s:?}")))?;
        let (head, tail) = s.split_at(digits);
        let r: u32 = tail.parse().map_err(|_| Error::Parse(format!("observable rank {tail:?}")))?;
        if r == 0 {
            return Err(Error::Parse(format!("observable {s:?} needs rank ≥ 1")));
        }
        let family = match head {
            "E" => ObservableFamily::E,
            "Ep" | "E'" => ObservableFamily::EPrime,
            "G" => ObservableFamily::G,
            "Gp" | "G'" => ObservableFamily::GPrime,
            _ => return Err(Error::Parse(format!("observable family {head:?}"))),
        };
        Ok(Observable::new(family, r))
    }
}

fn principal(l: &Partition, n: i32, inverted: bool, r: u32) -> Vec<RatFunc> {
    power_sums(&Specialization::Principal { lambda: l.clone(), n, inverted }, r)
}

/// Exact value of an observable at `λ`, from principal specializations.
pub fn observable_value(obs: &Observable, l: &Partition) -> RatFunc {
    let r = obs.r;
    match obs.family {
        ObservableFamily::Unit => RatFunc::one(),
        ObservableFamily::HatE1 => {
            let mut acc = RatFunc::one();
            for (i, &li) in l.parts().iter().enumerate() {
                let term = RatFunc::one_minus(0, 1)
                    .mul(&RatFunc::one_minus(li as i32, 0))
                    .mul(&RatFunc::mono(0, -(i as i32 + 1)));
                acc = acc.add(&term);
            }
            acc
        }
        ObservableFamily::E => elementary_from_power_sums(&principal(l, 1, false, r), r),
        ObservableFamily::EPrime => elementary_from_power_sums(&principal(l, 1, true, r), r),
        ObservableFamily::G => g_from_power_sums(&principal(l, 0, false, r), r, false),
        ObservableFamily::GPrime => {
            g_from_power_sums(&principal(l, 1, true, r), r, false).mul(&RatFunc::mono(r as i32, 0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_up_to;
    use crate::symfunc::{eigenvalue_e_g, EigenKind};

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn hat_e1_one_box() {
        let v = observable_value(&Observable::hat_e1(), &Partition::new(vec![1]));
        assert_eq!(v, r("1+(1-t)*(1-q)/t"));
    }

    #[test]
    fn e_obs_on_empty() {
        let v = observable_value(&Observable::new(ObservableFamily::E, 1), &Partition::empty());
        assert_eq!(v, r("t/(t-1)"));
    }

    #[test]
    fn hat_e1_is_shifted_e1() {
        for l in partitions_up_to(4) {
            let e1 = eigenvalue_e_g(EigenKind::E, 1, &l, false);
            assert_eq!(observable_value(&Observable::hat_e1(), &l), e1.mul(&r("t-1")), "{l}");
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in ["unit", "hatE1", "E2", "Ep1", "G3", "Gp1"] {
            let o: Observable = s.parse().unwrap();
            assert_eq!(o.to_string(), s);
        }
        assert!("E0".parse::<Observable>().is_err());
        assert!("X1".parse::<Observable>().is_err());
    }

    #[test]
    fn variable_layout() {
        let s = ProcessSpec::new(vec![LevelVars { x: 1, y: 2 }, LevelVars { x: 2, y: 1 }], 3);
        assert_eq!(s.x_vars(0), vec![0]);
        assert_eq!(s.y_vars(0), vec![1, 2]);
        assert_eq!(s.x_vars(1), vec![3, 4]);
        assert_eq!(s.y_vars(1), vec![5]);
        assert_eq!(s.total_vars(), 6);
    }
}
