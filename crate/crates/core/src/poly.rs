//! Sparse multivariate polynomials over Q(i), just enough for Jacobians of
//! parameterizations: add, multiply, differentiate, evaluate.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A monomial is the sorted multiset of its variable indices.
type Monomial = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(i: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![i], Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m: Monomial = m1.iter().chain(m2).copied().collect();
                m.sort_unstable();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Partial derivative in variable `v`.
    pub fn diff(&self, v: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mult = m.iter().filter(|&&x| x == v).count();
            if mult == 0 {
                continue;
            }
            let mut dm = m.clone();
            let pos = dm.iter().position(|&x| x == v).expect("present");
            dm.remove(pos);
            out.add_term(dm, c * &Scalar::from_int(mult as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in m {
                t = &t * &point[v as usize];
            }
            acc += &t;
        }
        acc
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.terms.keys().flatten().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_on_example() {
        // p = (x0 + 2 x1) * x0 = x0^2 + 2 x0 x1
        let p = Poly::var(0).add(&Poly::var(1).scale(&Scalar::from_int(2))).mul(&Poly::var(0));
        assert_eq!(p.degree(), 2);
        let d0 = p.diff(0); // 2 x0 + 2 x1
        let pt = [Scalar::from_int(3), Scalar::from_int(5)];
        assert_eq!(d0.eval(&pt), Scalar::from_int(16));
        assert_eq!(p.diff(1).eval(&pt), Scalar::from_int(6));
        assert_eq!(p.eval(&pt), Scalar::from_int(39));
        assert!(p.sub(&p).is_zero());
        assert!(p.diff(7).is_zero());
    }
}
