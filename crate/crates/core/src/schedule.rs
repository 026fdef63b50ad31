//! Predetermined step-size sequences `k ↦ λ_k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ScheduleError;

/// Analytic class of a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepClass {
    /// `λ_k → 0`
    pub diminishing: bool,
    /// `Σ λ_k = ∞`
    pub nonsummable: bool,
    /// `Σ λ_k² < ∞`
    pub square_summable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum StepRule {
    /// `c / (k+1)`
    Harmonic { c: f64 },
    /// `c / (k+1)^α`, `α ∈ (1/2, 1]`
    PowerLaw { c: f64, alpha: f64 },
    /// `c / √(k+1)`
    SqrtHarmonic { c: f64 },
    /// `c / ln(k+2)`
    ConstantOverLog { c: f64 },
    /// Explicit values; the last entry repeats past the end of the table.
    Table { steps: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepSchedule {
    rule: StepRule,
    class: StepClass,
}

fn positive(c: f64) -> Result<f64, ScheduleError> {
    if c.is_finite() && c > 0.0 {
        Ok(c)
    } else {
        Err(ScheduleError::NonPositive(c))
    }
}

impl StepSchedule {
    pub fn harmonic(c: f64) -> Result<Self, ScheduleError> {
        Ok(StepSchedule {
            rule: StepRule::Harmonic { c: positive(c)? },
            class: StepClass {
                diminishing: true,
                nonsummable: true,
                square_summable: true,
            },
        })
    }

    pub fn power_law(c: f64, alpha: f64) -> Result<Self, ScheduleError> {
        if !(alpha > 0.5 && alpha <= 1.0) {
            return Err(ScheduleError::BadExponent(alpha));
        }
        Ok(StepSchedule {
            rule: StepRule::PowerLaw {
                c: positive(c)?,
                alpha,
            },
            class: StepClass {
                diminishing: true,
                nonsummable: true,
                square_summable: alpha > 0.5,
            },
        })
    }

    pub fn sqrt_harmonic(c: f64) -> Result<Self, ScheduleError> {
        Ok(StepSchedule {
            rule: StepRule::SqrtHarmonic { c: positive(c)? },
            class: StepClass {
                diminishing: true,
                nonsummable: true,
                square_summable: false,
            },
        })
    }

    pub fn constant_over_log(c: f64) -> Result<Self, ScheduleError> {
        Ok(StepSchedule {
            rule: StepRule::ConstantOverLog { c: positive(c)? },
            class: StepClass {
                diminishing: true,
                nonsummable: true,
                square_summable: false,
            },
        })
    }

    /// A finite table. Its tail is constant, so it is neither diminishing
    /// nor square-summable; it is nonsummable.
    pub fn table(steps: Vec<f64>) -> Result<Self, ScheduleError> {
        if steps.is_empty() {
            return Err(ScheduleError::EmptyTable);
        }
        for &s in &steps {
            positive(s)?;
        }
        Ok(StepSchedule {
            rule: StepRule::Table { steps },
            class: StepClass {
                diminishing: false,
                nonsummable: true,
                square_summable: false,
            },
        })
    }

    pub fn rule(&self) -> &StepRule {
        &self.rule
    }

    pub fn class(&self) -> StepClass {
        self.class
    }

    /// `λ_k`.
    pub fn step(&self, k: usize) -> f64 {
        let n = k as f64 + 1.0;
        match &self.rule {
            StepRule::Harmonic { c } => c / n,
            StepRule::PowerLaw { c, alpha } => c / n.powf(*alpha),
            StepRule::SqrtHarmonic { c } => c / n.sqrt(),
            StepRule::ConstantOverLog { c } => c / (n + 1.0).ln(),
            StepRule::Table { steps } => steps[k.min(steps.len() - 1)],
        }
    }

    /// `(Σ_{k≤n} λ_k, Σ_{k≤n} λ_k²)`, Kahan-compensated.
    pub fn partial_sums(&self, n: usize) -> (f64, f64) {
        let mut s = KahanSum::default();
        let mut s2 = KahanSum::default();
        for k in 0..=n {
            let l = self.step(k);
            s.add(l);
            s2.add(l * l);
        }
        (s.value(), s2.value())
    }

    /// Class inferred from the sequence between `k = 10⁴` and `k = 10⁶`.
    ///
    /// Advisory only: no finite prefix decides summability. The tests
    /// compare `k·λ_k` (bounded away from zero for nonsummable tails) and
    /// `k·λ_k²` (vanishing for square-summable tails) at the two indices.
    pub fn empirical_class(&self) -> StepClass {
        const LO: usize = 10_000;
        const HI: usize = 1_000_000;
        let (l0, lo, hi) = (self.step(0), self.step(LO), self.step(HI));
        let k_lo = LO as f64 + 1.0;
        let k_hi = HI as f64 + 1.0;
        StepClass {
            diminishing: hi < lo && hi < 0.1 * l0,
            nonsummable: k_hi * hi >= 0.9 * k_lo * lo,
            square_summable: k_hi * hi * hi <= 0.8 * k_lo * lo * lo,
        }
    }

    /// Running sums `(Σ_{k≤N} λ_k, Σ_{k≤N} λ_k²)` for every `N ≤ n`.
    pub fn cumulative_sums(&self, n: usize) -> Vec<(f64, f64)> {
        let mut s = KahanSum::default();
        let mut s2 = KahanSum::default();
        (0..=n)
            .map(|k| {
                let l = self.step(k);
                s.add(l);
                s2.add(l * l);
                (s.value(), s2.value())
            })
            .collect()
    }
}

/// Compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

impl fmt::Display for StepSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            StepRule::Harmonic { c } => write!(f, "harmonic:c={c}"),
            StepRule::PowerLaw { c, alpha } => write!(f, "powerlaw:c={c},alpha={alpha}"),
            StepRule::SqrtHarmonic { c } => write!(f, "sqrt:c={c}"),
            StepRule::ConstantOverLog { c } => write!(f, "log:c={c}"),
            StepRule::Table { steps } => {
                let parts: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
                write!(f, "table:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for StepSchedule {
    type Err = ScheduleError;

    /// `harmonic:c=1.0`, `powerlaw:c=1.0,alpha=0.75`, `sqrt:c=0.5`,
    /// `log:c=1.0`, `table:0.5,0.4,0.3`.
    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| ScheduleError::Parse {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (family, args) = spec
            .trim()
            .split_once(':')
            .ok_or_else(|| fail("expected `<family>:<arguments>`"))?;
        let num = |s: &str| -> Result<f64, ScheduleError> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| fail(&format!("`{}` is not a number", s.trim())))
        };
        if family.trim() == "table" {
            let steps = args.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
            return StepSchedule::table(steps);
        }
        let mut c = None;
        let mut alpha = None;
        for kv in args.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| fail(&format!("expected key=value, got `{kv}`")))?;
            match k.trim() {
                "c" => c = Some(num(v)?),
                "alpha" => alpha = Some(num(v)?),
                other => return Err(fail(&format!("unknown parameter `{other}`"))),
            }
        }
        let c = c.ok_or_else(|| fail("missing parameter `c`"))?;
        match family.trim() {
            "harmonic" => StepSchedule::harmonic(c),
            "sqrt" => StepSchedule::sqrt_harmonic(c),
            "log" => StepSchedule::constant_over_log(c),
            "powerlaw" => {
                StepSchedule::power_law(c, alpha.ok_or_else(|| fail("missing parameter `alpha`"))?)
            }
            other => Err(fail(&format!("unknown family `{other}`"))),
        }
    }
}
