use crate::error::{Error, Result};

/// A dense set of `n` points in `dim` dimensions, row-major `f64`
/// coordinates. All coordinates are finite by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    coords: Vec<f64>,
    n: usize,
    dim: usize,
}

impl PointSet {
    pub fn new(coords: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid_argument("dimension must be at least 1"));
        }
        if coords.is_empty() || !coords.len().is_multiple_of(dim) {
            return Err(Error::invalid_data(format!(
                "coordinate buffer of length {} is not a nonempty multiple of dim {}",
                coords.len(),
                dim
            )));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::invalid_data(format!(
                "non-finite coordinate at flat index {pos}"
            )));
        }
        let n = coords.len() / dim;
        Ok(PointSet { coords, n, dim })
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Euclidean distance between points `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let a = self.point(i);
        let b = self.point(j);
        let mut acc = 0.0;
        for (x, y) in a.iter().zip(b) {
            let d = x - y;
            acc += d * d;
        }
        acc.sqrt()
    }

    /// Concatenates two point sets of equal dimension; the second set's
    /// points follow the first set's.
    pub fn concat(&self, other: &PointSet) -> Result<PointSet> {
        if self.dim != other.dim {
            return Err(Error::invalid_argument(format!(
                "cannot concatenate point sets of dims {} and {}",
                self.dim, other.dim
            )));
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        PointSet::new(coords, self.dim)
    }

    /// Applies a permutation: result point `i` is `self.point(perm[i])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<PointSet> {
        if perm.len() != self.n {
            return Err(Error::invalid_argument("permutation length mismatch"));
        }
        let mut coords = Vec::with_capacity(self.coords.len());
        for &src in perm {
            coords.extend_from_slice(self.point(src));
        }
        PointSet::new(coords, self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_coordinates() {
        let err = PointSet::new(vec![0.0, f64::NAN], 1).unwrap_err();
        assert!(matches!(err, Error::InvalidData(_)));
        let err = PointSet::new(vec![0.0, f64::INFINITY], 2).unwrap_err();
        assert!(matches!(err, Error::InvalidData(_)));
    }

    #[test]
    fn rejects_ragged_buffer() {
        assert!(PointSet::new(vec![0.0, 1.0, 2.0], 2).is_err());
        assert!(PointSet::new(vec![], 2).is_err());
        assert!(PointSet::new(vec![1.0], 0).is_err());
    }

    #[test]
    fn distance_is_euclidean() {
        let ps = PointSet::new(vec![0.0, 0.0, 3.0, 4.0], 2).unwrap();
        assert_eq!(ps.distance(0, 1), 5.0);
        assert_eq!(ps.distance(0, 0), 0.0);
    }
}
