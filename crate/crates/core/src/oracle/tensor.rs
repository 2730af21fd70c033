use std::fmt::Write as _;

use super::field::{matrix_rank, FieldPrime};
use crate::error::{Error, Result};
use crate::tree::LeafSet;

/// Largest number of entries a dense tensor may hold (`2^24`).
pub const MAX_ENTRIES: usize = 1 << 24;

/// Dense tensor over a prime field, axis `i` belonging to leaf `i + 1`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    data: Vec<u64>,
    prime: FieldPrime,
}

pub(crate) fn checked_size(shape: &[usize], what: &'static str, cap: usize) -> Result<usize> {
    let entries = shape.iter().map(|&d| d as u128).product::<u128>();
    if entries > cap as u128 {
        return Err(Error::SizeCap {
            what,
            entries,
            cap: cap as u128,
        });
    }
    Ok(entries as usize)
}

impl DenseTensor {
    pub fn zeros(shape: Vec<usize>, prime: FieldPrime) -> Result<Self> {
        let len = checked_size(&shape, "tensor", MAX_ENTRIES)?;
        Ok(DenseTensor {
            shape,
            data: vec![0; len],
            prime,
        })
    }

    /// Entries are reduced modulo the prime.
    pub fn from_entries(shape: Vec<usize>, entries: Vec<u64>, prime: FieldPrime) -> Result<Self> {
        let len = checked_size(&shape, "tensor", MAX_ENTRIES)?;
        if entries.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "shape {:?} needs {} entries, got {}",
                shape,
                len,
                entries.len()
            )));
        }
        let p = prime.get();
        Ok(DenseTensor {
            shape,
            data: entries.into_iter().map(|x| x % p).collect(),
            prime,
        })
    }

    /// The simple tensor `e_{i_1} ⊗ ... ⊗ e_{i_n}` (0-based indices).
    pub fn basis(shape: Vec<usize>, index: &[usize], prime: FieldPrime) -> Result<Self> {
        if index.len() != shape.len() || index.iter().zip(&shape).any(|(&i, &d)| i >= d) {
            return Err(Error::ShapeMismatch(format!(
                "index {index:?} outside shape {shape:?}"
            )));
        }
        let mut t = DenseTensor::zeros(shape, prime)?;
        let flat = index
            .iter()
            .zip(&t.shape)
            .fold(0, |acc, (&i, &d)| acc * d + i);
        t.data[flat] = 1;
        Ok(t)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn prime(&self) -> FieldPrime {
        self.prime
    }

    /// Number of leaves (axes).
    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Rank of the flattening with rows indexed by the leaves in `a`
    /// and columns by the rest, both in label order.
    pub fn flattening_rank(&self, a: &LeafSet) -> Result<usize> {
        let n = self.order();
        let colour = a.colouring(n)?;
        let rows: usize = (1..=n)
            .filter(|&l| colour[l])
            .map(|l| self.shape[l - 1])
            .product();
        let cols = self.data.len() / rows.max(1);
        if self.data.is_empty() {
            return Ok(0);
        }
        let mut matrix = vec![0u64; self.data.len()];
        let mut index = vec![0usize; n];
        for &x in &self.data {
            let (mut r, mut c) = (0, 0);
            for (axis, &i) in index.iter().enumerate() {
                if colour[axis + 1] {
                    r = r * self.shape[axis] + i;
                } else {
                    c = c * self.shape[axis] + i;
                }
            }
            matrix[r * cols + c] = x;
            for axis in (0..n).rev() {
                index[axis] += 1;
                if index[axis] < self.shape[axis] {
                    break;
                }
                index[axis] = 0;
            }
        }
        Ok(matrix_rank(self.prime, matrix, rows, cols))
    }

    /// Outer product; the leaves of `other` follow those of `self`.
    pub fn kron(&self, other: &DenseTensor) -> Result<DenseTensor> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime.get(), other.prime.get()));
        }
        let shape: Vec<usize> = self.shape.iter().chain(&other.shape).copied().collect();
        checked_size(&shape, "outer product", MAX_ENTRIES)?;
        let p = self.prime;
        let data = self
            .data
            .iter()
            .flat_map(|&x| other.data.iter().map(move |&y| p.mul(x, y)))
            .collect();
        Ok(DenseTensor {
            shape,
            data,
            prime: self.prime,
        })
    }

    /// Text dump: a `shape` line, then one line of decimal residues per last-axis slice.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let dims: Vec<String> = self.shape.iter().map(|d| d.to_string()).collect();
        writeln!(out, "shape {}", dims.join(" ")).expect("writing to a String");
        let width = self.shape.last().copied().unwrap_or(1).max(1);
        for row in self.data.chunks(width) {
            let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", row.join(" ")).expect("writing to a String");
        }
        out
    }
}

pub fn flattening_rank(t: &DenseTensor, a: &LeafSet) -> Result<usize> {
    t.flattening_rank(a)
}

pub fn kron(t1: &DenseTensor, t2: &DenseTensor) -> Result<DenseTensor> {
    t1.kron(t2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> FieldPrime {
        FieldPrime::DEFAULT
    }

    #[test]
    fn zero_tensor_has_rank_zero() {
        let t = DenseTensor::zeros(vec![2, 2, 2, 2], p()).unwrap();
        for a in ["", "1", "1,3", "1,2,3,4"] {
            assert_eq!(t.flattening_rank(&a.parse().unwrap()).unwrap(), 0);
        }
    }

    #[test]
    fn basis_tensor_has_rank_one() {
        let t = DenseTensor::basis(vec![2, 2, 2, 2], &[0, 0, 0, 0], p()).unwrap();
        for a in ["", "1,2", "2,4", "1,2,3,4"] {
            assert_eq!(t.flattening_rank(&a.parse().unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn identity_matrix_flattenings() {
        // t = sum_i e_i ⊗ e_i on two leaves of dimension 3
        let mut data = vec![0; 9];
        for i in 0..3 {
            data[i * 3 + i] = 1;
        }
        let t = DenseTensor::from_entries(vec![3, 3], data, p()).unwrap();
        assert_eq!(t.flattening_rank(&"1".parse().unwrap()).unwrap(), 3);
        assert_eq!(t.flattening_rank(&"2".parse().unwrap()).unwrap(), 3);
    }

    #[test]
    fn flattening_uses_non_adjacent_axes() {
        // e0⊗e0⊗e0 + e1⊗e0⊗e1: rank 2 for {1} and {3}, rank 1 for {2}
        let mut t = DenseTensor::zeros(vec![2, 2, 2], p()).unwrap();
        t.data[0] = 1;
        t.data[0b101] = 1;
        assert_eq!(t.flattening_rank(&"1".parse().unwrap()).unwrap(), 2);
        assert_eq!(t.flattening_rank(&"2".parse().unwrap()).unwrap(), 1);
        assert_eq!(t.flattening_rank(&"1,3".parse().unwrap()).unwrap(), 1);
        assert_eq!(t.flattening_rank(&"1,2".parse().unwrap()).unwrap(), 2);
    }

    #[test]
    fn kron_cases() {
        let z = DenseTensor::zeros(vec![2, 2], p()).unwrap();
        let e = DenseTensor::basis(vec![2, 2], &[1, 0], p()).unwrap();
        let k = kron(&z, &e).unwrap();
        assert!(k.is_zero());
        assert_eq!(k.shape(), [2, 2, 2, 2]);
        let k = kron(&e, &e).unwrap();
        assert_eq!(k.flattening_rank(&"1,4".parse().unwrap()).unwrap(), 1);
        let q = DenseTensor::zeros(vec![2], FieldPrime::new(1_000_003).unwrap()).unwrap();
        assert!(matches!(kron(&e, &q), Err(Error::PrimeMismatch(..))));
    }

    #[test]
    fn errors() {
        assert!(DenseTensor::from_entries(vec![2, 2], vec![1, 2, 3], p()).is_err());
        assert!(DenseTensor::zeros(vec![1 << 13, 1 << 12], p()).is_err());
        let t = DenseTensor::zeros(vec![2, 2], p()).unwrap();
        assert!(t.flattening_rank(&"3".parse().unwrap()).is_err());
    }

    #[test]
    fn dump_format() {
        let t = DenseTensor::from_entries(vec![2, 3], vec![1, 2, 3, 4, 5, 6], p()).unwrap();
        assert_eq!(t.dump(), "shape 2 3\n1 2 3\n4 5 6\n");
    }
}
