//! Square nonnegative matrices over a generic scalar.
//!
//! The same code path serves two regimes: exact counting (`BigUint` entries,
//! periodic point counts, path counts) and floating point spectral estimates
//! (`f64` power iteration). Concrete aliases live at the crate root.

use num_traits::{One, Zero};
use std::ops::{Add, Mul};

use crate::graph::Digraph;

/// Dense square matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zero(n: usize) -> Self {
        Matrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T>,
{
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Adjacency matrix of a multigraph: entry (i,j) counts parallel edges.
    pub fn adjacency(g: &Digraph) -> Self {
        let mut m: Matrix<T> = Matrix::zero(g.state_count());
        for &(s, d) in g.edges() {
            let v = m.get(s, d).clone() + T::one();
            m.set(s, d, v);
        }
        m
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out: Matrix<T> = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if *a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if *b == T::zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Matrix<T> {
        let mut result = Matrix::identity(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.n {
            t = t + self.get(i, i).clone();
        }
        t
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|v| *v != T::zero())
    }
}

/// Least `t >= 1` with `A^t > 0` entrywise, provided it is reached within
/// `per * ((n-1)^2 + 1)` (the Wielandt bound applied to the period power).
/// `None` when the matrix is not primitive.
pub fn primitivity_index(g: &Digraph) -> Option<usize> {
    let n = g.state_count();
    if n == 0 {
        return None;
    }
    let cap = ((n.saturating_sub(1)).pow(2) + 1).max(1);
    let a: Matrix<u8> = boolean_adjacency(g);
    let mut p = a.clone();
    for t in 1..=cap {
        if p.data.iter().all(|&v| v != 0) {
            return Some(t);
        }
        p = bool_mul(&p, &a);
    }
    if p.data.iter().all(|&v| v != 0) {
        return Some(cap + 1);
    }
    None
}

fn boolean_adjacency(g: &Digraph) -> Matrix<u8> {
    let mut m = Matrix::zero(g.state_count());
    for &(s, d) in g.edges() {
        m.set(s, d, 1);
    }
    m
}

fn bool_mul(a: &Matrix<u8>, b: &Matrix<u8>) -> Matrix<u8> {
    let n = a.n;
    let mut out = Matrix::zero(n);
    for i in 0..n {
        for k in 0..n {
            if *a.get(i, k) == 0 {
                continue;
            }
            for j in 0..n {
                if *b.get(k, j) != 0 {
                    out.set(i, j, 1);
                }
            }
        }
    }
    out
}

/// Rigorous bracket for the Perron value of a nonnegative matrix via
/// Collatz-Wielandt bounds. The iteration runs on `A + I` (primitive whenever
/// `A` is irreducible), which keeps the bounds converging for periodic
/// graphs; the shift is subtracted at the end.
///
/// Returns `(lo, hi)` with `lo <= lambda <= hi` and `hi - lo <= tol`, or the
/// best bracket reached after the iteration cap.
pub fn perron_bracket(a: &Matrix<f64>, tol: f64) -> (f64, f64) {
    let n = a.size();
    if n == 0 {
        return (0.0, 0.0);
    }
    // B = A + I.
    let mut b = a.clone();
    for i in 0..n {
        let v = *b.get(i, i) + 1.0;
        b.set(i, i, v);
    }
    let mut v = vec![1.0f64; n];
    let mut lo = 0.0f64;
    let mut hi = f64::INFINITY;
    for _ in 0..20_000 {
        let mut w = vec![0.0f64; n];
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += b.get(i, j) * v[j];
            }
            w[i] = acc;
        }
        let mut cur_lo = f64::INFINITY;
        let mut cur_hi: f64 = 0.0;
        for i in 0..n {
            if v[i] > 0.0 {
                let r = w[i] / v[i];
                cur_lo = cur_lo.min(r);
                cur_hi = cur_hi.max(r);
            }
        }
        lo = lo.max(cur_lo);
        hi = hi.min(cur_hi);
        if hi - lo <= tol {
            break;
        }
        let norm: f64 = w.iter().cloned().fold(0.0, f64::max);
        if norm == 0.0 {
            return (0.0, 0.0);
        }
        for x in &mut w {
            *x /= norm;
        }
        v = w;
    }
    ((lo - 1.0).max(0.0), (hi - 1.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn fib_graph() -> Digraph {
        Digraph::new(2, &[(0, 0), (0, 1), (1, 0)])
    }

    #[test]
    fn exact_traces_are_lucas_numbers() {
        let a: Matrix<BigUint> = Matrix::adjacency(&fib_graph());
        let expect = [1u32, 3, 4, 7, 11, 18];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(a.pow(i + 1).trace(), BigUint::from(e));
        }
    }

    #[test]
    fn primitivity() {
        assert_eq!(primitivity_index(&fib_graph()), Some(2));
        // Full 2-shift, one state.
        let full2 = Digraph::new(1, &[(0, 0), (0, 0)]);
        assert_eq!(primitivity_index(&full2), Some(1));
        // Period-2 graph is not primitive.
        let cyc = Digraph::new(2, &[(0, 1), (1, 0)]);
        assert_eq!(primitivity_index(&cyc), None);
    }

    #[test]
    fn perron_golden_mean() {
        let a: Matrix<f64> = Matrix::adjacency(&fib_graph());
        let (lo, hi) = perron_bracket(&a, 1e-12);
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!(lo <= phi && phi <= hi, "bracket [{lo},{hi}] misses phi");
        assert!(hi - lo <= 1e-9);
    }

    #[test]
    fn perron_periodic_matrix() {
        // [[0,2],[2,0]] has Perron value 2 but plain power iteration on A
        // oscillates; the +I shift settles it.
        let g = Digraph::new(2, &[(0, 1), (0, 1), (1, 0), (1, 0)]);
        let a: Matrix<f64> = Matrix::adjacency(&g);
        let (lo, hi) = perron_bracket(&a, 1e-12);
        assert!(lo <= 2.0 && 2.0 <= hi);
        assert!(hi - lo <= 1e-9);
    }
}
