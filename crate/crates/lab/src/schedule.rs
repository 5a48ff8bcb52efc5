use std::fmt;
use std::str::FromStr;

use mfo_core::{log_star, BigNat};
use serde::{Deserialize, Serialize};

use crate::error::LabError;

/// `n ↦ q(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum QSchedule {
    Fixed(f64),
    /// `1 - c / n^4`
    OneMinusCOverN4(f64),
    /// `1 - c / n`
    OneMinusCOverN(f64),
    /// `1 + sign / log*(n)`, `sign = ±1`
    LogStarBand(i8),
}

impl QSchedule {
    pub fn q_at(&self, n: usize) -> Result<f64, LabError> {
        let q = match *self {
            QSchedule::Fixed(q) => q,
            QSchedule::OneMinusCOverN4(c) => 1.0 - c / (n as f64).powi(4),
            QSchedule::OneMinusCOverN(c) => 1.0 - c / n as f64,
            QSchedule::LogStarBand(sign) => {
                if sign != 1 && sign != -1 {
                    return Err(LabError::Invalid(format!("band sign must be +1 or -1, got {sign}")));
                }
                let ls = log_star(&BigNat::from(n as u64));
                if ls == 0 {
                    return Err(LabError::Invalid(format!("log*({n}) = 0")));
                }
                1.0 + f64::from(sign) / ls as f64
            }
        };
        if !(q.is_finite() && q > 0.0) {
            return Err(LabError::Invalid(format!("schedule {self} gives q = {q} at n = {n}")));
        }
        Ok(q)
    }
}

impl fmt::Display for QSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSchedule::Fixed(q) => write!(f, "fixed:{q}"),
            QSchedule::OneMinusCOverN4(c) => write!(f, "n4:{c}"),
            QSchedule::OneMinusCOverN(c) => write!(f, "n1:{c}"),
            QSchedule::LogStarBand(s) => write!(f, "logstar:{}", if *s > 0 { "+" } else { "-" }),
        }
    }
}

/// `fixed:Q`, `n4:C`, `n1:C`, `logstar:+` or `logstar:-`; a bare number is `fixed`.
impl FromStr for QSchedule {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        let bad = || LabError::Invalid(format!("cannot parse q schedule {s:?}"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let Some((kind, arg)) = s.split_once(':') else {
            return Ok(QSchedule::Fixed(num(s)?));
        };
        match kind.trim() {
            "fixed" => Ok(QSchedule::Fixed(num(arg)?)),
            "n4" => Ok(QSchedule::OneMinusCOverN4(num(arg)?)),
            "n1" => Ok(QSchedule::OneMinusCOverN(num(arg)?)),
            "logstar" => match arg.trim() {
                "+" | "+1" => Ok(QSchedule::LogStarBand(1)),
                "-" | "-1" => Ok(QSchedule::LogStarBand(-1)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(QSchedule::Fixed(0.4).q_at(10).unwrap(), 0.4);
        assert_eq!(QSchedule::OneMinusCOverN4(1.0).q_at(2).unwrap(), 1.0 - 1.0 / 16.0);
        assert_eq!(QSchedule::OneMinusCOverN(2.0).q_at(4).unwrap(), 0.5);
        // log*(16) = 3, log*(17) = 4
        assert_eq!(QSchedule::LogStarBand(1).q_at(16).unwrap(), 1.0 + 1.0 / 3.0);
        assert_eq!(QSchedule::LogStarBand(-1).q_at(17).unwrap(), 0.75);
        assert!(QSchedule::LogStarBand(-1).q_at(2).is_err());
        assert!(QSchedule::OneMinusCOverN(1.0).q_at(1).is_err());
        assert!(QSchedule::Fixed(-1.0).q_at(3).is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in [QSchedule::Fixed(0.5), QSchedule::OneMinusCOverN4(2.0), QSchedule::OneMinusCOverN(0.5), QSchedule::LogStarBand(-1)] {
            assert_eq!(s.to_string().parse::<QSchedule>().unwrap(), s);
        }
        assert_eq!("2.5".parse::<QSchedule>().unwrap(), QSchedule::Fixed(2.5));
        assert!("n4:x".parse::<QSchedule>().is_err());
    }
}
