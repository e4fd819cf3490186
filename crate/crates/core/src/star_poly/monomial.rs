use std::cmp::Ordering;

/// An exponent vector over the generators of a presentation.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the earliest generator where the two differ (larger exponent wins).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn generator(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Exponent vector with entries moved to new positions; `map[i]` is the
    /// target index of exponent `i` in a vector of length `arity`.
    pub fn reindex(&self, map: &[usize], arity: usize) -> Monomial {
        let mut e = vec![0; arity];
        for (i, &x) in self.0.iter().enumerate() {
            e[map[i]] += x;
        }
        Monomial(e)
    }

    pub fn with_exponent(&self, index: usize, exp: u32) -> Monomial {
        let mut e = self.0.clone();
        e[index] = exp;
        Monomial(e)
    }

    /// All monomials of total degree at most `max_degree` in `arity`
    /// variables, in ascending degree and descending lexicographic order
    /// within a degree (`1, x, y, x², xy, y², …`).
    pub fn up_to_degree(arity: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut buf = vec![0; arity];
            of_degree(&mut buf, 0, d, &mut out);
        }
        out
    }
}

fn of_degree(buf: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if buf.is_empty() {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if pos + 1 == buf.len() {
        buf[pos] = remaining;
        out.push(Monomial(buf.clone()));
        buf[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        buf[pos] = e;
        of_degree(buf, pos + 1, remaining - e, out);
    }
    buf[pos] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
