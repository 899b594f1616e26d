//! Conjugacy classes of subgroups of small symmetric groups.
//!
//! Classes are grown by joins: every subgroup is reached from the trivial
//! group by adding one element at a time, and conjugating a chain gives a
//! chain, so joining class representatives with every element of `S_n`
//! reaches every class.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::action::next_permutation;
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

/// Largest degree accepted by [`subgroup_class_representatives`].
pub const MAX_CLASS_DEGREE: usize = 6;

/// `S_n` with elements in lexicographic order (identity first) and a full
/// multiplication table.
#[derive(Debug, Clone)]
pub struct SymmetricTable {
    degree: usize,
    elements: Vec<Permutation>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl SymmetricTable {
    pub fn new(degree: usize) -> Result<Self> {
        if degree == 0 || degree > 7 {
            return Err(Error::Precondition(format!(
                "symmetric table supports degrees 1..=7, got {degree}"
            )));
        }
        let mut v: Vec<usize> = (0..degree).collect();
        let mut elements = Vec::new();
        loop {
            elements.push(Permutation::new(v.clone()).expect("valid"));
            if !next_permutation(&mut v) {
                break;
            }
        }
        let index: HashMap<&Permutation, u16> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i as u16))
            .collect();
        let order = elements.len();
        let mut mul = vec![0u16; order * order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * order + j] = index[&a.compose(b)];
            }
        }
        let inv = elements.iter().map(|p| index[&p.inverse()]).collect();
        Ok(Self {
            degree,
            elements,
            mul,
            inv,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    fn words(&self) -> usize {
        self.order().div_ceil(64)
    }

    /// Bitset of the subgroup generated by `gens`.
    fn closure(&self, gens: &[usize]) -> Vec<u64> {
        let mut bits = vec![0u64; self.words()];
        bits[0] |= 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let p = self.mul(g, e);
                if bits[p / 64] >> (p % 64) & 1 == 0 {
                    bits[p / 64] |= 1 << (p % 64);
                    queue.push_back(p);
                }
            }
        }
        bits
    }

    fn members(bits: &[u64]) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in bits.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let b = x.trailing_zeros() as usize;
                out.push(w * 64 + b);
                x &= x - 1;
            }
        }
        out
    }

    fn conjugate_bits(&self, members: &[usize], c: usize) -> Vec<u64> {
        let ci = self.inv(c);
        let mut bits = vec![0u64; self.words()];
        for &h in members {
            let p = self.mul(self.mul(c, h), ci);
            bits[p / 64] |= 1 << (p % 64);
        }
        bits
    }
}

/// One representative per conjugacy class of subgroups of `S_n`, ordered by
/// group order and then by the canonical (minimal) element bitset.
pub fn subgroup_class_representatives(n: usize) -> Result<Vec<PermutationGroup>> {
    if n == 0 || n > MAX_CLASS_DEGREE {
        return Err(Error::Precondition(format!(
            "subgroup classes are enumerated for 1 <= n <= {MAX_CLASS_DEGREE}, got {n}"
        )));
    }
    let table = SymmetricTable::new(n)?;
    let order = table.order();

    // canonical bitset -> generators of the canonical conjugate
    let mut classes: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let trivial = table.closure(&[]);
    seen.insert(trivial.clone());
    classes.push((trivial, Vec::new()));

    let mut frontier = 0;
    while frontier < classes.len() {
        let (bits, gens) = classes[frontier].clone();
        frontier += 1;
        for x in 1..order {
            if bits[x / 64] >> (x % 64) & 1 == 1 {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(x);
            let joined = table.closure(&next_gens);
            if seen.contains(&joined) {
                continue;
            }
            let members = SymmetricTable::members(&joined);
            let mut best: Option<(Vec<u64>, usize)> = None;
            for c in 0..order {
                let conj = table.conjugate_bits(&members, c);
                if best.as_ref().is_none_or(|(b, _)| conj < *b) {
                    best = Some((conj.clone(), c));
                }
                seen.insert(conj);
            }
            let (canon, c) = best.expect("S_n is non-empty");
            let ci = table.inv(c);
            let canon_gens = next_gens
                .iter()
                .map(|&g| table.mul(table.mul(c, g), ci))
                .collect();
            classes.push((canon, canon_gens));
        }
    }

    let mut reps: Vec<(usize, Vec<u64>, Vec<usize>)> = classes
        .into_iter()
        .map(|(bits, gens)| {
            let size = bits.iter().map(|w| w.count_ones() as usize).sum();
            (size, bits, gens)
        })
        .collect();
    reps.sort();
    reps.into_iter()
        .map(|(_, _, gens)| {
            let gens = gens.iter().map(|&g| table.element(g).clone()).collect();
            PermutationGroup::generate(n, gens)
        })
        .collect()
}
