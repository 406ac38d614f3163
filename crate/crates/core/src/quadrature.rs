//! Gauss–Legendre quadrature nodes and weights.

use crate::real::Real;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Nodes come out in ascending order. Weights sum to 2 and the rule is exact
/// for polynomials of degree `2n - 1`.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "quadrature order must be at least 1");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = T::from_usize(n).unwrap();
    let eps = T::default_epsilon() * nalgebra::convert(4.0);

    // Roots are symmetric; solve for the first half by Newton iteration on P_n.
    for i in 0..n.div_ceil(2) {
        let k: T = nalgebra::convert(i as f64 + 0.75);
        let denom: T = nf + nalgebra::convert(0.5);
        let mut x = (T::pi() * k / denom).cos();
        let mut dp;
        loop {
            // Three-term recurrence for P_n(x) and P_{n-1}(x).
            let mut p0 = T::one();
            let mut p1 = x;
            for j in 2..=n {
                let jf = T::from_usize(j).unwrap();
                let a = (T::from_usize(2 * j - 1).unwrap() * x * p1
                    - T::from_usize(j - 1).unwrap() * p0)
                    / jf;
                p0 = p1;
                p1 = a;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { T::one() } else { p0 };
            dp = nf * (x * p - pm1) / (x * x - T::one());
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= eps {
                break;
            }
        }
        let w = nalgebra::convert::<f64, T>(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x.abs();
        nodes[n - 1 - i] = x.abs();
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

/// The same rule rescaled to an arbitrary interval `[a, b]`.
pub fn gauss_legendre_on<T: Real>(n: usize, a: T, b: T) -> (Vec<T>, Vec<T>) {
    let (x, w) = gauss_legendre::<T>(n);
    let half = nalgebra::convert::<f64, T>(0.5);
    let mid = (a + b) * half;
    let rad = (b - a) * half;
    (
        x.into_iter().map(|xi| mid + rad * xi).collect(),
        w.into_iter().map(|wi| wi * rad).collect(),
    )
}
