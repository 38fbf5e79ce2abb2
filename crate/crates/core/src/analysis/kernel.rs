use alloc::vec::Vec;

use super::{check_alpha, AnalysisError};

/// Transition probabilities of the counting chain, indexed by state `0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BirthDeathKernel {
    pub n: usize,
    pub alpha: f64,
    pub up: Vec<f64>,
    pub down: Vec<f64>,
    pub stay: Vec<f64>,
}

impl BirthDeathKernel {
    /// Probability of leaving state `i`, `up[i] + down[i]`.
    ///
    /// Summed directly instead of `1 - stay[i]` to avoid cancellation.
    pub fn exit(&self, i: usize) -> f64 {
        self.up[i] + self.down[i]
    }

    /// `ln(down[i] / up[i])`; `-inf` at `i = 0`.
    pub fn log_ratio(&self, i: usize) -> f64 {
        libm::log(self.down[i]) - libm::log(self.up[i])
    }
}

/// Builds the kernel
///
/// ```text
/// up[i]   = (1 - i/n) (α + (1 - α)(i/n)²)
/// down[i] = (i/n) (1 - α) (1 - i/n)²
/// stay[i] = 1 - up[i] - down[i]
/// ```
pub fn kernel(n: usize, alpha: f64) -> Result<BirthDeathKernel, AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::InvalidSize);
    }
    check_alpha(alpha)?;
    let mut up = Vec::with_capacity(n + 1);
    let mut down = Vec::with_capacity(n + 1);
    let mut stay = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = i as f64 / n as f64;
        let y = 1.0 - x;
        let u = y * (alpha + (1.0 - alpha) * x * x);
        let d = x * (1.0 - alpha) * y * y;
        up.push(u);
        down.push(d);
        stay.push(1.0 - u - d);
    }
    Ok(BirthDeathKernel { n, alpha, up, down, stay })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundaries() {
        let k = kernel(10, 0.3).unwrap();
        assert_eq!(k.up[0], 0.3);
        assert_eq!(k.down[0], 0.0);
        assert_eq!(k.up[10], 0.0);
        assert_eq!(k.down[10], 0.0);
        assert_eq!(k.stay[10], 1.0);
    }

    #[test]
    fn hand_algebra_point() {
        let k = kernel(4, 1.0 / 9.0).unwrap();
        assert!((k.up[2] - 1.0 / 6.0).abs() < 1e-15);
        assert!((k.down[2] - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn rows_are_distributions() {
        for &alpha in &[0.01, 0.1, 1.0 / 9.0, 0.5, 1.0] {
            let k = kernel(37, alpha).unwrap();
            for i in 0..=37 {
                let s = k.up[i] + k.down[i] + k.stay[i];
                assert!((s - 1.0).abs() <= 4.0 * f64::EPSILON);
                for v in [k.up[i], k.down[i], k.stay[i]] {
                    assert!((0.0..=1.0).contains(&v));
                }
            }
        }
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(kernel(0, 0.5), Err(AnalysisError::InvalidSize));
        assert_eq!(kernel(3, 0.0), Err(AnalysisError::InvalidAlpha(0.0)));
        assert_eq!(kernel(3, 1.5), Err(AnalysisError::InvalidAlpha(1.5)));
    }
}
