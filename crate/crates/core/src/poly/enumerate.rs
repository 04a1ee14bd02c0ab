//! Fair enumeration of the nonconstant integer polynomials of content 1.
//!
//! Order: by `degree + height` ascending, then degree ascending, then
//! lexicographically from the leading coefficient down where each
//! coefficient runs through 0, 1, -1, 2, -2, ...  Every polynomial appears
//! exactly once, at a finite position.

use num_integer::Integer as _;

use super::IntPolynomial;

fn value_at(i: usize) -> i64 {
    let i = i as i64;
    if i % 2 == 1 {
        (i + 1) / 2
    } else {
        -(i / 2)
    }
}

/// Infinite iterator in the documented order.
#[derive(Clone, Debug)]
pub struct Content1Enumerator {
    sum: usize,
    degree: usize,
    /// Order indices, leading coefficient first.
    idx: Vec<usize>,
    fresh: bool,
}

impl Default for Content1Enumerator {
    fn default() -> Self {
        Content1Enumerator::new()
    }
}

impl Content1Enumerator {
    pub fn new() -> Self {
        let mut e = Content1Enumerator { sum: 2, degree: 1, idx: Vec::new(), fresh: true };
        e.reset_block();
        e
    }

    fn height(&self) -> usize {
        self.sum - self.degree
    }

    fn reset_block(&mut self) {
        self.idx = vec![0; self.degree + 1];
        self.idx[0] = 1;
        self.fresh = true;
    }

    fn next_block(&mut self) {
        if self.degree + 1 < self.sum {
            self.degree += 1;
        } else {
            self.sum += 1;
            self.degree = 1;
        }
        self.reset_block();
    }

    /// Odometer step within the block; false when the block is exhausted.
    fn advance(&mut self) -> bool {
        let top = 2 * self.height();
        for pos in (0..self.idx.len()).rev() {
            if self.idx[pos] < top {
                self.idx[pos] += 1;
                return true;
            }
            self.idx[pos] = if pos == 0 { 1 } else { 0 };
        }
        false
    }

    /// Next coefficient vector, constant term first.
    pub fn next_coeffs(&mut self) -> Vec<i64> {
        loop {
            if self.fresh {
                self.fresh = false;
            } else if !self.advance() {
                self.next_block();
                self.fresh = false;
            }
            let h = self.height() as i64;
            let vals: Vec<i64> = self.idx.iter().rev().map(|&i| value_at(i)).collect();
            if vals.iter().map(|v| v.abs()).max() != Some(h) {
                continue;
            }
            if vals.iter().fold(0i64, |g, v| g.gcd(v)) != 1 {
                continue;
            }
            return vals;
        }
    }
}

impl Iterator for Content1Enumerator {
    type Item = IntPolynomial;
    fn next(&mut self) -> Option<IntPolynomial> {
        Some(IntPolynomial::from_i64s(&self.next_coeffs()))
    }
}

/// The first `budget` polynomials of the enumeration.
pub fn enumerate_content1(budget: u64) -> impl Iterator<Item = IntPolynomial> {
    Content1Enumerator::new().take(usize::try_from(budget).unwrap_or(usize::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use std::collections::HashSet;

    #[test]
    fn first_items() {
        let first: Vec<String> = enumerate_content1(4).map(|p| p.to_string()).collect();
        assert_eq!(first, ["[0, 1]", "[1, 1]", "[-1, 1]", "[0, -1]"]);
    }

    #[test]
    fn fair_and_duplicate_free() {
        let target = IntPolynomial::from_i64s(&[-2, 0, 1]);
        let mut seen = HashSet::new();
        let mut found = None;
        for (i, p) in enumerate_content1(5000).enumerate() {
            assert!(p.content() == 1.into() && p.deg0() >= 1);
            assert!(seen.insert(p.clone()), "duplicate {p}");
            if p == target && found.is_none() {
                found = Some(i);
            }
        }
        // Degree + height of X^2 - 2 is 4.
        let bound = Content1Enumerator::new().take_while(|p| p.deg0() + p.height().to_usize().unwrap() <= 4).count();
        assert!(found.unwrap() < bound);
    }
}
