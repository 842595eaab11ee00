use serde::{Deserialize, Serialize};

/// Dense symmetric matrix of basis inner products.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    size: usize,
    data: Vec<f64>,
}

impl GramMatrix {
    pub(crate) fn zeros(size: usize) -> Self {
        Self {
            size,
            data: vec![0.0; size * size],
        }
    }

    pub(crate) fn set_symmetric(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.size + j] = v;
        self.data[j * self.size + i] = v;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.size)
    }

    /// max |G_ii - 1|
    pub fn max_diagonal_deviation(&self) -> f64 {
        (0..self.size)
            .map(|i| (self.get(i, i) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// max |G_ij| over i != j
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j {
                    worst = worst.max(self.get(i, j).abs());
                }
            }
        }
        worst
    }

    /// Largest entrywise deviation from the identity.
    pub fn max_identity_deviation(&self) -> f64 {
        self.max_diagonal_deviation().max(self.max_off_diagonal())
    }
}
