use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_integer::Integer;
use num_traits::Zero;

use crate::valfield::{int, Rational};

/// An integer vector in `N` or `M` (the two lattices are both `Z^n` here;
/// which one is meant is fixed by context).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVec(pub Vec<i64>);

impl LatticeVec {
    pub fn new(entries: Vec<i64>) -> Self {
        LatticeVec(entries)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVec(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVec(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn dot(&self, other: &LatticeVec) -> i64 {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_q(&self, w: &[Rational]) -> Rational {
        debug_assert_eq!(self.rank(), w.len());
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(w) {
            if *a != 0 {
                acc += b * int(*a);
            }
        }
        acc
    }

    pub fn scale(&self, k: i64) -> LatticeVec {
        LatticeVec(self.0.iter().map(|x| x * k).collect())
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    /// Divides by the gcd of the entries. The zero vector is returned as is.
    pub fn primitive(&self) -> LatticeVec {
        let g = self.content();
        if g == 0 {
            return self.clone();
        }
        LatticeVec(self.0.iter().map(|x| x / g).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&x| int(x)).collect()
    }
}

impl Index<usize> for LatticeVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &LatticeVec {
    type Output = LatticeVec;
    fn add(self, rhs: &LatticeVec) -> LatticeVec {
        LatticeVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVec {
    type Output = LatticeVec;
    fn sub(self, rhs: &LatticeVec) -> LatticeVec {
        LatticeVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for LatticeVec {
    fn from(v: Vec<i64>) -> Self {
        LatticeVec(v)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Formats a rational point as `(a, b, ...)`.
pub fn fmt_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(crate::valfield::fmt_rational).collect();
    format!("({})", parts.join(", "))
}
