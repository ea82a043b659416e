use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::superspace::Parity;

/// A virtual character: integer multiplicities of `(weight, parity)` pairs.
/// Characters of modules are effective; differences appear while peeling.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Character {
    terms: BTreeMap<(Vec<i64>, Parity), i64>,
}

#[derive(Serialize)]
struct Term<'a> {
    weight: &'a [i64],
    parity: Parity,
    multiplicity: i64,
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((weight, parity), m) in &self.terms {
            seq.serialize_element(&Term { weight, parity: *parity, multiplicity: *m })?;
        }
        seq.end()
    }
}

impl Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, weight: Vec<i64>, parity: Parity, m: i64) {
        if m == 0 {
            return;
        }
        let key = (weight, parity);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += m;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn multiplicity(&self, weight: &[i64], parity: Parity) -> i64 {
        self.terms.get(&(weight.to_vec(), parity)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], Parity, i64)> {
        self.terms.iter().map(|((w, p), m)| (w.as_slice(), *p, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    /// `(even, odd)` total multiplicities.
    pub fn dims(&self) -> (i64, i64) {
        let mut d = (0, 0);
        for ((_, p), m) in &self.terms {
            match p {
                Parity::Even => d.0 += m,
                Parity::Odd => d.1 += m,
            }
        }
        d
    }

    pub fn superdimension(&self) -> i64 {
        let (e, o) = self.dims();
        e - o
    }

    /// Distinct weights, regardless of parity.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.terms.keys().map(|(w, _)| w.clone()).collect();
        out.dedup();
        out
    }

    pub fn add(&self, other: &Character) -> Character {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Character) -> Character {
        self.add_scaled(other, -1)
    }

    pub fn add_scaled(&self, other: &Character, c: i64) -> Character {
        let mut out = self.clone();
        for ((w, p), m) in &other.terms {
            out.add_term(w.clone(), *p, c * m);
        }
        out
    }

    pub fn parity_shift(&self) -> Character {
        let mut out = Character::zero();
        for ((w, p), m) in &self.terms {
            out.add_term(w.clone(), !*p, *m);
        }
        out
    }

    pub fn dual(&self) -> Character {
        let mut out = Character::zero();
        for ((w, p), m) in &self.terms {
            out.add_term(w.iter().map(|x| -x).collect(), *p, *m);
        }
        out
    }

    pub fn tensor(&self, other: &Character) -> Character {
        let mut out = Character::zero();
        for ((w1, p1), m1) in &self.terms {
            for ((w2, p2), m2) in &other.terms {
                let w: Vec<i64> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                out.add_term(w, *p1 + *p2, m1 * m2);
            }
        }
        out
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|((w, p), m)| (format!("{w:?}{}", p.bit()), m))).finish()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|((w, p), m)| format!("{m}·{w:?}[{p}]")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let mut a = Character::zero();
        a.add_term(vec![1, 0], Parity::Even, 1);
        a.add_term(vec![-1, 0], Parity::Odd, 1);
        assert_eq!(a.dims(), (1, 1));
        assert_eq!(a.superdimension(), 0);
        let sq = a.tensor(&a);
        assert_eq!(sq.dims(), (2, 2));
        assert_eq!(sq.multiplicity(&[0, 0], Parity::Odd), 2);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.parity_shift().parity_shift(), a);
        assert_eq!(a.dual().multiplicity(&[-1, 0], Parity::Even), 1);
    }
}
