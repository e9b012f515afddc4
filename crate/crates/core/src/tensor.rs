//! Tensor-power bases and sparse tensor products.
//!
//! A basis tensor `v ⊗ a_1 ⊗ ⋯ ⊗ a_n` of `V ⊗ A^{⊗n}` has index
//! `v·dⁿ + Σ a_k d^{n−k}`: the coefficient slot is most significant.

use crate::linalg::Scalar;

/// Sparse vector: `(index, coefficient)` pairs, zero coefficients omitted.
pub type Sparse = Vec<(usize, Scalar)>;

pub fn power(d: usize, n: usize) -> usize {
    d.checked_pow(n as u32).expect("tensor power overflows usize")
}

/// Slot indices of basis tensor `index` in `A^{⊗n}`, most significant first.
pub fn decode(mut index: usize, d: usize, n: usize) -> Vec<usize> {
    let mut slots = vec![0; n];
    for s in slots.iter_mut().rev() {
        *s = index % d;
        index /= d;
    }
    slots
}

pub fn encode(slots: &[usize], d: usize) -> usize {
    slots.iter().fold(0, |acc, &s| acc * d + s)
}

pub fn sparse(v: &[Scalar]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Tensor product of sparse factors, the first factor most significant.
/// Every factor after the first lives in a space of dimension `d`.
pub fn expand(factors: &[&Sparse], d: usize) -> Sparse {
    let mut acc: Sparse = vec![(0, Scalar::one())];
    for (k, f) in factors.iter().enumerate() {
        let radix = if k == 0 { 1 } else { d };
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (i, c) in &acc {
            for (j, x) in f.iter() {
                next.push((i * radix + j, c * x));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Label such as `e1⊗e1⊗e2`.
pub fn label(index: usize, names: &[String], slots: usize) -> String {
    let d = names.len();
    decode(index, d, slots)
        .iter()
        .map(|&s| names[s].as_str())
        .collect::<Vec<_>>()
        .join("⊗")
}

/// Label of a basis tensor of `V ⊗ A^{⊗n}` with separate name lists.
pub fn mixed_label(index: usize, coeff_names: &[String], names: &[String], n: usize) -> String {
    let block = power(names.len(), n);
    let head = &coeff_names[index / block];
    if n == 0 {
        return head.clone();
    }
    format!("{head}⊗{}", label(index % block, names, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    #[test]
    fn encode_decode_round_trip() {
        for i in 0..27 {
            assert_eq!(encode(&decode(i, 3, 3), 3), i);
        }
        assert_eq!(decode(5, 2, 3), vec![1, 0, 1]);
        assert_eq!(decode(0, 2, 0), Vec::<usize>::new());
    }

    #[test]
    fn expansion_is_big_endian() {
        let a: Sparse = vec![(1, int(2))];
        let b: Sparse = vec![(0, int(1)), (1, int(3))];
        assert_eq!(expand(&[&a, &b], 2), vec![(2, int(2)), (3, int(6))]);
        let zero: Sparse = vec![];
        assert!(expand(&[&a, &zero], 2).is_empty());
        // Coefficient factor of dimension 3 followed by two algebra slots of dimension 2.
        let v: Sparse = vec![(2, int(1))];
        let e: Sparse = vec![(1, int(1))];
        assert_eq!(expand(&[&v, &e, &e], 2), vec![(2 * 4 + 3, int(1))]);
    }

    #[test]
    fn labels() {
        let names: Vec<String> = vec!["e1".into(), "e2".into()];
        assert_eq!(label(1, &names, 3), "e1⊗e1⊗e2");
        assert_eq!(mixed_label(3, &names, &names, 1), "e2⊗e2");
        assert_eq!(mixed_label(1, &names, &names, 0), "e2");
    }
}
