//! Upper tail of the chi-squared law with one degree of freedom.

use crate::error::{FitError, Result};
use statrs::function::erf::erfc;

/// P(X > x) for X ~ chi-squared(1), via the complementary error function:
/// sf(x) = erfc(sqrt(x / 2)).
pub fn chi2_sf_1df(x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(FitError::InvalidConfig(format!(
            "chi-squared statistic must be non-negative, got {x}"
        )));
    }
    Ok(erfc((x / 2.0).sqrt()))
}

/// 95th percentile of chi-squared(1).
pub const CHI2_1DF_95: f64 = 3.841458820694124;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(chi2_sf_1df(0.0).unwrap(), 1.0);
        assert!((chi2_sf_1df(CHI2_1DF_95).unwrap() - 0.05).abs() < 1e-10);
        assert!((chi2_sf_1df(3.8415).unwrap() - 0.05).abs() < 1e-4);
        // published tail value: sf(32.99) ~ 9.3e-9 to one significant figure
        let p = chi2_sf_1df(32.99).unwrap();
        assert!((p - 9.3e-9).abs() < 5e-10, "{p}");
        assert!(chi2_sf_1df(-1.0).is_err());
    }

    #[test]
    fn deep_tail_relative_accuracy() {
        // 40-digit reference: erfc(sqrt(63.9/2)) = 1.30897651152289e-15
        let p = chi2_sf_1df(63.9).unwrap();
        assert!((p / 1.30897651152289e-15 - 1.0).abs() < 1e-10, "{p}");
        // and erfc(sqrt(32.99/2)) = 9.2634112316906e-9
        let p = chi2_sf_1df(32.99).unwrap();
        assert!((p / 9.2634112316906e-9 - 1.0).abs() < 1e-10, "{p}");
    }
}
