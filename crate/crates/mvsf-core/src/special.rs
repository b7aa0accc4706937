//! Scalar special functions: the Euler gamma function by a Lanczos-type
//! approximation (g = 7, 9 coefficients), accurate to at least 13 significant
//! digits on `[0.5, 50]`, with the reflection formula below 0.5.

#[allow(unused_imports)] // f64 math via the trait in no_std builds
use num_traits::Float;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Euler gamma function. Returns NaN at the poles (nonpositive integers).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        if x <= 0.0 && x == x.floor() {
            return f64::NAN;
        }
        // reflection: G(x) G(1-x) = pi / sin(pi x)
        let s = (core::f64::consts::PI * x).sin();
        return core::f64::consts::PI / (s * gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * core::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// Rising factorial `(x)_m = x (x+1) ... (x+m-1)`.
pub fn rising_factorial(x: f64, m: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..m {
        acc *= x + i as f64;
    }
    acc
}

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    let mut acc = 1.0;
    for i in 2..=n {
        acc *= i as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_reference_table() {
        // high-precision reference values
        let table: [(f64, f64); 13] = [
            (0.5, 1.7724538509055160273),
            (1.0, 1.0),
            (1.5, 0.88622692545275801365),
            (2.0, 1.0),
            (2.5, 1.3293403881791370205),
            (3.5, 3.3233509704478425512),
            (4.5, 11.631728396567448929),
            (5.0, 24.0),
            (7.25, 1155.3810139199896872),
            (10.0, 362880.0),
            (15.5, 334838609873.55645697),
            (20.0, 121645100408832000.0),
            (50.0, 6.0828186403426756087e62),
        ];
        for (x, want) in table {
            assert_relative_eq!(gamma(x), want, max_relative = 1e-13);
        }
    }

    #[test]
    fn gamma_recurrence() {
        for i in 0..40 {
            let x = 0.6 + 0.37 * i as f64;
            assert_relative_eq!(gamma(x + 1.0), x * gamma(x), max_relative = 1e-12);
        }
    }

    #[test]
    fn gamma_reflection_region() {
        // G(0.25) via reflection against G(0.75)
        assert_relative_eq!(
            gamma(0.25) * gamma(0.75),
            core::f64::consts::PI / (core::f64::consts::PI * 0.25).sin(),
            max_relative = 1e-13
        );
        assert!(gamma(0.0).is_nan());
        assert!(gamma(-1.0).is_nan());
    }

    #[test]
    fn rising_and_factorial() {
        assert_eq!(rising_factorial(3.0, 0), 1.0);
        assert_eq!(rising_factorial(3.0, 2), 12.0);
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_relative_eq!(factorial(20), gamma(21.0), max_relative = 1e-12);
    }
}
