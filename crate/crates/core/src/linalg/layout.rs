use crate::error::{Error, Result};

/// Largest composite dimension any layout or tensor product may reach.
/// Larger requests fail with a resource error instead of thrashing.
pub const MAX_TOTAL_DIM: usize = 1 << 20;

/// An ordered list of tensor factors over which states and operators live.
///
/// Composite indices are row-major with the *first* factor varying slowest:
/// for factor dimensions `[d0, d1, d2]` the flat index of coordinates
/// `(i0, i1, i2)` is `(i0 * d1 + i1) * d2 + i2`. Every indexing routine in
/// this crate follows that one convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertLayout {
    factor_dims: Vec<usize>,
    total_dim: usize,
}

impl HilbertLayout {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::validation("layout must contain at least one factor"));
        }
        let mut total: usize = 1;
        for (i, &d) in factor_dims.iter().enumerate() {
            if d == 0 {
                return Err(Error::validation(format!(
                    "factor {i} has dimension 0; every factor dimension must be >= 1"
                )));
            }
            total = total.checked_mul(d).ok_or_else(|| {
                Error::resource(format!("layout dimension overflows usize at factor {i}"))
            })?;
            if total > MAX_TOTAL_DIM {
                return Err(Error::resource(format!(
                    "total dimension {total} exceeds the cap of {MAX_TOTAL_DIM}"
                )));
            }
        }
        Ok(Self {
            factor_dims,
            total_dim: total,
        })
    }

    /// Layout with a single factor of the given dimension.
    pub fn single(dim: usize) -> Result<Self> {
        Self::new(vec![dim])
    }

    /// The `[2]` layout of a lone qubit.
    pub fn qubit() -> Self {
        Self {
            factor_dims: vec![2],
            total_dim: 2,
        }
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// Concatenation of two layouts, as produced by a tensor product.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let mut dims = self.factor_dims.clone();
        dims.extend_from_slice(&other.factor_dims);
        Self::new(dims)
    }

    /// Stride of each factor under the row-major convention:
    /// `stride[k]` is the product of all factor dimensions after `k`.
    pub(crate) fn strides(&self) -> Vec<usize> {
        let n = self.factor_dims.len();
        let mut strides = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.factor_dims[k + 1];
        }
        strides
    }

    /// Validates a keep-set for partial tracing and returns it sorted.
    ///
    /// The set must be non-empty, within range, duplicate-free, and a
    /// proper subset of the factors.
    pub(crate) fn checked_keep_set(&self, keep: &[usize]) -> Result<Vec<usize>> {
        if keep.is_empty() {
            return Err(Error::usage("keep-set for a partial trace must be non-empty"));
        }
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != keep.len() {
            return Err(Error::usage("keep-set contains duplicate factor indices"));
        }
        if let Some(&bad) = sorted.iter().find(|&&i| i >= self.num_factors()) {
            return Err(Error::usage(format!(
                "keep-set index {bad} out of range for a {}-factor layout",
                self.num_factors()
            )));
        }
        if sorted.len() == self.num_factors() {
            return Err(Error::usage(
                "keep-set must be a proper subset of the layout factors",
            ));
        }
        Ok(sorted)
    }
}

/// Flat offsets of every coordinate tuple over the given sub-factors.
///
/// `factors` indexes into the layout; the returned vector has one entry per
/// combination of coordinates of those factors (first listed varying
/// slowest), each entry being the contribution to the full flat index.
pub(crate) fn sub_offsets(layout: &HilbertLayout, factors: &[usize]) -> Vec<usize> {
    let strides = layout.strides();
    let dims: Vec<usize> = factors.iter().map(|&f| layout.factor_dims()[f]).collect();
    let count: usize = dims.iter().product();
    let mut offsets = Vec::with_capacity(count.max(1));
    if factors.is_empty() {
        offsets.push(0);
        return offsets;
    }
    let mut coords = vec![0usize; dims.len()];
    loop {
        let off: usize = coords
            .iter()
            .zip(factors)
            .map(|(&c, &f)| c * strides[f])
            .sum();
        offsets.push(off);
        // odometer increment, last coordinate fastest
        let mut k = dims.len();
        loop {
            if k == 0 {
                return offsets;
            }
            k -= 1;
            coords[k] += 1;
            if coords[k] < dims[k] {
                break;
            }
            coords[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_dimension_factor() {
        let err = HilbertLayout::new(vec![2, 0, 3]).unwrap_err();
        assert_eq!(err.category(), crate::error::ErrorCategory::Validation);
    }

    #[test]
    fn rejects_empty_layout() {
        assert!(HilbertLayout::new(vec![]).is_err());
    }

    #[test]
    fn enforces_dimension_cap() {
        let err = HilbertLayout::new(vec![2; 21]).unwrap_err();
        assert_eq!(err.category(), crate::error::ErrorCategory::Resource);
        // exactly at the cap is fine
        assert!(HilbertLayout::new(vec![2; 20]).is_ok());
    }

    #[test]
    fn strides_follow_first_factor_slowest() {
        let layout = HilbertLayout::new(vec![2, 3, 4]).unwrap();
        assert_eq!(layout.strides(), vec![12, 4, 1]);
        assert_eq!(layout.total_dim(), 24);
    }

    #[test]
    fn sub_offsets_enumerate_in_row_major_order() {
        let layout = HilbertLayout::new(vec![2, 3, 2]).unwrap();
        // factor 0 (stride 6) and factor 2 (stride 1)
        let offs = sub_offsets(&layout, &[0, 2]);
        assert_eq!(offs, vec![0, 1, 6, 7]);
    }

    #[test]
    fn keep_set_validation() {
        let layout = HilbertLayout::new(vec![2, 2, 2]).unwrap();
        assert!(layout.checked_keep_set(&[]).is_err());
        assert!(layout.checked_keep_set(&[0, 1, 2]).is_err());
        assert!(layout.checked_keep_set(&[3]).is_err());
        assert!(layout.checked_keep_set(&[1, 1]).is_err());
        assert_eq!(layout.checked_keep_set(&[2, 0]).unwrap(), vec![0, 2]);
    }
}
