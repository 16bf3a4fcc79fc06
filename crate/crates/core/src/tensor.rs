//! Dense multi-index arrays used for tensor-valued results (Δ(r), Sa, S²a,
//! curvatures, Jacobiators).

use crate::report::Defect;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    shape: Vec<usize>,
    data: Vec<T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn zeros(shape: &[usize]) -> Self {
        Self {
            shape: shape.to_vec(),
            data: vec![T::zero(); shape.iter().product()],
        }
    }

    /// Fills the tensor from a function of the multi-index.
    pub fn from_fn(shape: &[usize], mut f: impl FnMut(&[usize]) -> T) -> Self {
        let mut t = Self::zeros(shape);
        let mut idx = vec![0; shape.len()];
        for slot in 0..t.data.len() {
            t.data[slot] = f(&idx);
            advance(&mut idx, shape);
        }
        t
    }

    /// Fills the tensor when the last axis is produced as a whole vector.
    pub fn from_vector_fn(shape: &[usize], mut f: impl FnMut(&[usize]) -> Vec<T>) -> Self {
        let (&last, outer) = shape.split_last().expect("tensor needs at least one axis");
        let mut t = Self::zeros(shape);
        let mut idx = vec![0; outer.len()];
        let outer_len: usize = outer.iter().product();
        for block in 0..outer_len {
            let v = f(&idx);
            assert_eq!(v.len(), last, "vector length does not match last axis");
            t.data[block * last..(block + 1) * last].clone_from_slice(&v);
            advance(&mut idx, outer);
        }
        t
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        idx.iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &n)| {
                debug_assert!(i < n);
                acc * n + i
            })
    }

    pub fn get(&self, idx: &[usize]) -> &T {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: T) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// The fibre along the last axis at the given leading indices.
    pub fn fibre(&self, lead: &[usize]) -> &[T] {
        let last = *self.shape.last().unwrap();
        let start: usize = lead
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &n)| acc * n + i)
            * last;
        &self.data[start..start + last]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Tensor<U> {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape, other.shape, "tensor shape mismatch");
        Self {
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// Largest absolute entry with its multi-index.
    pub fn defect(&self) -> Defect<T> {
        let mut d = Defect::new();
        let mut idx = vec![0; self.shape.len()];
        for x in &self.data {
            d.update(x, &idx);
            advance(&mut idx, &self.shape);
        }
        d
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.data.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max)
    }
}

fn advance(idx: &mut [usize], shape: &[usize]) {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < shape[k] {
            return;
        }
        idx[k] = 0;
    }
}

/// Iterates over all multi-indices of a shape in row-major order.
pub fn indices(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = shape.iter().product();
    let mut idx = vec![0; shape.len()];
    (0..total).map(move |_| {
        let out = idx.clone();
        advance(&mut idx, shape);
        out
    })
}
