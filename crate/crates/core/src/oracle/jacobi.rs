//! Cyclic Jacobi eigenvalue iteration for dense symmetric matrices.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiOptions<T> {
    /// Target off-diagonal Frobenius norm. The effective target is never
    /// below `64·ε·‖A‖_F`, so single precision still terminates.
    pub tol: T,
    pub max_sweeps: usize,
}

impl<T: Real> Default for JacobiOptions<T> {
    fn default() -> Self {
        JacobiOptions { tol: T::lit(1e-10), max_sweeps: 64 }
    }
}

fn off_norm<T: Real>(a: &[T], n: usize) -> T {
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of the symmetric `n × n` row-major matrix `a`, descending.
/// `a` is overwritten.
pub fn jacobi_eigenvalues<T: Real>(a: &mut [T], n: usize, opts: &JacobiOptions<T>) -> Result<Vec<T>> {
    assert_eq!(a.len(), n * n, "matrix is not {n}×{n}");
    let frob = a.iter().map(|&x| x * x).sum::<T>().sqrt();
    let target = opts.tol.max(T::lit(64.0) * T::epsilon() * frob);
    // rotations below this size cannot move the off-norm past the target
    let skip = target / T::from_usize(2 * n.max(1)).unwrap();
    let two = T::lit(2.0);
    let mut off = off_norm(a, n);
    let mut sweeps = 0;
    while off >= target {
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence { sweeps, off: off.to_f64().unwrap_or(f64::NAN) });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < skip {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[p * n + k];
                    let akq = a[q * n + k];
                    let np = c * akp - s * akq;
                    let nq = s * akp + c * akq;
                    a[p * n + k] = np;
                    a[q * n + k] = nq;
                    a[k * n + p] = np;
                    a[k * n + q] = nq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
            }
        }
        sweeps += 1;
        off = off_norm(a, n);
    }
    let mut eig: Vec<T> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complete_graph_k4() {
        let mut a: Vec<f64> = (0..16).map(|i| if i / 4 == i % 4 { 0.0 } else { 1.0 }).collect();
        let e = jacobi_eigenvalues(&mut a, 4, &JacobiOptions::default()).unwrap();
        assert!((e[0] - 3.0).abs() < 1e-12);
        for v in &e[1..] {
            assert!((v + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_and_two_by_two() {
        let mut a = vec![2.0f64, 0.0, 0.0, -5.0];
        assert_eq!(jacobi_eigenvalues(&mut a, 2, &JacobiOptions::default()).unwrap(), vec![2.0, -5.0]);
        // [[2,1],[1,2]] has eigenvalues 3 and 1
        let mut a = vec![2.0f64, 1.0, 1.0, 2.0];
        let e = jacobi_eigenvalues(&mut a, 2, &JacobiOptions::default()).unwrap();
        assert!((e[0] - 3.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
        assert!(jacobi_eigenvalues::<f64>(&mut [], 0, &JacobiOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn sweep_limit_is_reported() {
        let mut a: Vec<f64> = (0..36).map(|i| ((i / 6 + i % 6) % 5) as f64).collect();
        let opts = JacobiOptions { tol: 1e-10, max_sweeps: 0 };
        assert!(matches!(jacobi_eigenvalues(&mut a, 6, &opts), Err(Error::NoConvergence { sweeps: 0, .. })));
    }

    #[test]
    fn single_precision_converges() {
        let mut a: Vec<f32> = (0..64).map(|i| if i / 8 == i % 8 { 0.0 } else { 1.0 }).collect();
        let e = jacobi_eigenvalues(&mut a, 8, &JacobiOptions::default()).unwrap();
        assert!((e[0] - 7.0).abs() < 1e-4);
        assert!(e[1..].iter().all(|v| (v + 1.0).abs() < 1e-4));
    }

    fn sym(n: usize, seed: &[i8]) -> Vec<f64> {
        let mut a = vec![0.0; n * n];
        let mut it = seed.iter().cycle();
        for i in 0..n {
            for j in i..n {
                let v = f64::from(*it.next().unwrap());
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        a
    }

    proptest! {
        #[test]
        fn trace_and_frobenius_preserved(n in 1usize..12, seed in prop::collection::vec(-9i8..10, 1..80)) {
            let a = sym(n, &seed);
            let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
            let frob2: f64 = a.iter().map(|x| x * x).sum();
            let e = jacobi_eigenvalues(&mut a.clone(), n, &JacobiOptions::default()).unwrap();
            let tol = 1e-8 * (1.0 + frob2);
            prop_assert!((e.iter().sum::<f64>() - trace).abs() < tol);
            prop_assert!((e.iter().map(|x| x * x).sum::<f64>() - frob2).abs() < tol);
            prop_assert!(e.windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn shifted_matrix_shifts_eigenvalues(n in 2usize..8, seed in prop::collection::vec(-5i8..6, 1..40), shift in -4i8..5) {
            let a = sym(n, &seed);
            let mut b = a.clone();
            for i in 0..n {
                b[i * n + i] += f64::from(shift);
            }
            let ea = jacobi_eigenvalues(&mut a.clone(), n, &JacobiOptions::default()).unwrap();
            let eb = jacobi_eigenvalues(&mut b, n, &JacobiOptions::default()).unwrap();
            for (x, y) in ea.iter().zip(&eb) {
                prop_assert!((x + f64::from(shift) - y).abs() < 1e-8);
            }
        }
    }
}
