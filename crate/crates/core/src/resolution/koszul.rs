//! `Tor_i(S/I, K)_j` as Koszul homology, by plain linear algebra.
//!
//! Shares nothing with the Schreyer code beyond the Gröbner basis used for
//! normal forms in `S/I`; it is the independent check on Betti numbers.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::polynomial::Polynomial;

use super::grading::{Grading, Multidegree};
use super::linalg::sparse_rank;
use super::BettiTable;

struct Koszul {
    gb: std::sync::Arc<GroebnerBasis>,
    grading: Grading,
    nvars: usize,
    /// standard monomials by degree
    standard: RefCell<Vec<Vec<Monomial>>>,
    nf: RefCell<HashMap<Monomial, Vec<(Monomial, u32)>>>,
}

impl Koszul {
    fn new(ideal: &Ideal) -> Result<Self> {
        if !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let nvars = ideal.ring().nvars();
        let gb = ideal.groebner(MonomialOrder::DegRevLex);
        let one = ideal.ring().one();
        let base = if gb.is_unit() { vec![] } else { vec![one] };
        Ok(Koszul {
            grading: Grading::finest_for(nvars, ideal.generators()),
            gb,
            nvars,
            standard: RefCell::new(vec![base]),
            nf: RefCell::new(HashMap::new()),
        })
    }

    fn standard_of_degree(&self, d: usize) -> Vec<Monomial> {
        let mut st = self.standard.borrow_mut();
        let leads = self.gb.leading_monomials();
        while st.len() <= d {
            let prev = st.last().expect("degree 0 present");
            let mut next = Vec::new();
            for m in prev {
                let last = (0..self.nvars).rev().find(|&v| m.exponent(v) > 0).unwrap_or(0);
                for v in last..self.nvars {
                    let mm = m.mul(&Monomial::var(self.nvars, v));
                    if !leads.iter().any(|l| l.divides(&mm)) {
                        next.push(mm);
                    }
                }
            }
            st.push(next);
        }
        st[d].clone()
    }

    fn normal_form(&self, m: Monomial) -> Vec<(Monomial, u32)> {
        if let Some(v) = self.nf.borrow().get(&m) {
            return v.clone();
        }
        let p = Polynomial::term(self.gb.ring(), m, 1);
        let r = self
            .gb
            .normal_form(&p)
            .expect("same ring")
            .into_terms();
        self.nf.borrow_mut().insert(m, r.clone());
        r
    }

    fn mask_monomial(&self, mask: u32) -> Monomial {
        let mut e = vec![0u32; self.nvars];
        for (v, x) in e.iter_mut().enumerate() {
            *x = (mask >> v) & 1;
        }
        Monomial::from_exponents(&e).expect("squarefree")
    }

    /// Basis of `∧^i K^N ⊗ (S/I)_{j-i}`, grouped by multidegree.
    fn chain_basis(&self, i: usize, j: u32) -> HashMap<Multidegree, Vec<(u32, Monomial)>> {
        let mut out: HashMap<Multidegree, Vec<(u32, Monomial)>> = HashMap::new();
        if i > self.nvars || (j as usize) < i {
            return out;
        }
        let std = self.standard_of_degree(j as usize - i);
        if std.is_empty() {
            return out;
        }
        for mask in subsets(self.nvars, i) {
            let xa = self.mask_monomial(mask);
            for m in &std {
                out.entry(self.grading.degree(&xa.mul(m)))
                    .or_default()
                    .push((mask, *m));
            }
        }
        out
    }

    /// Rank of `∂_i : C_{i,j} -> C_{i-1,j}` on one multidegree block.
    fn boundary_rank(&self, rows: &[(u32, Monomial)], targets: &[(u32, Monomial)]) -> usize {
        let index: HashMap<(u32, Monomial), usize> =
            targets.iter().enumerate().map(|(k, &t)| (t, k)).collect();
        let k = self.gb.ring().field();
        let mut matrix = Vec::with_capacity(rows.len());
        for &(mask, m) in rows {
            let mut row: Vec<(usize, u32)> = Vec::new();
            let mut sign_pos = 0;
            for a in 0..self.nvars {
                if mask & (1 << a) == 0 {
                    continue;
                }
                let neg = sign_pos % 2 == 1;
                sign_pos += 1;
                let rest = mask & !(1 << a);
                for (mm, c) in self.normal_form(m.mul(&Monomial::var(self.nvars, a))) {
                    let col = index[&(rest, mm)];
                    row.push((col, if neg { k.neg(c) } else { c }));
                }
            }
            // combine repeated columns
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, u32)> = Vec::with_capacity(row.len());
            for (c, v) in row {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 = k.add(last.1, v),
                    _ => merged.push((c, v)),
                }
            }
            matrix.push(merged);
        }
        sparse_rank(k, matrix)
    }

    fn rank(&self, i: usize, j: u32) -> usize {
        if i == 0 {
            return 0;
        }
        let src = self.chain_basis(i, j);
        let dst = self.chain_basis(i - 1, j);
        src.iter()
            .map(|(md, rows)| {
                let empty = Vec::new();
                let targets = dst.get(md).unwrap_or(&empty);
                if targets.is_empty() {
                    0
                } else {
                    self.boundary_rank(rows, targets)
                }
            })
            .sum()
    }

    fn tor(&self, i: usize, j: u32) -> u64 {
        let dim: usize = self.chain_basis(i, j).values().map(|v| v.len()).sum();
        (dim - self.rank(i, j) - self.rank(i + 1, j)) as u64
    }
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..(1u32 << n)).filter(move |m| m.count_ones() as usize == k)
}

/// `dim_K Tor_i(S/I, K)_j`, i.e. `β_{i,j}(S/I)`, from the Koszul complex.
pub fn koszul_tor_oracle(ideal: &Ideal, i: usize, j: u32) -> Result<u64> {
    Ok(Koszul::new(ideal)?.tor(i, j))
}

/// All `β_{i,j}(S/I)` with `j - i ≤ max_slope`, from the Koszul complex.
pub fn koszul_betti_table(ideal: &Ideal, max_slope: u32) -> Result<BettiTable> {
    let kz = Koszul::new(ideal)?;
    let mut entries = Vec::new();
    for i in 0..=kz.nvars {
        for j in i as u32..=i as u32 + max_slope {
            entries.push(((i, j), kz.tor(i, j)));
        }
    }
    Ok(BettiTable::from_entries(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::polynomial::Ring;

    #[test]
    fn koszul_of_variables() {
        let r = Ring::new(3, PrimeField::default()).unwrap();
        let i = Ideal::variables(r, &[0, 1, 2]);
        assert_eq!(koszul_tor_oracle(&i, 0, 0).unwrap(), 1);
        assert_eq!(koszul_tor_oracle(&i, 1, 1).unwrap(), 3);
        assert_eq!(koszul_tor_oracle(&i, 2, 2).unwrap(), 3);
        assert_eq!(koszul_tor_oracle(&i, 3, 3).unwrap(), 1);
        assert_eq!(koszul_tor_oracle(&i, 2, 3).unwrap(), 0);
    }

    #[test]
    fn polynomial_ring_itself() {
        let r = Ring::new(2, PrimeField::default()).unwrap();
        let t = koszul_betti_table(&Ideal::zero(r), 3).unwrap();
        assert_eq!(t, BettiTable::from_entries([((0, 0), 1)]));
        let t = koszul_betti_table(&Ideal::unit(r), 3).unwrap();
        assert_eq!(t, BettiTable::default());
    }

    #[test]
    fn bei_small_cases() {
        let r = Ring::for_graph(3, PrimeField::default()).unwrap();
        let f12 = Polynomial::parse(r, "x1*y2 - x2*y1").unwrap();
        let f23 = Polynomial::parse(r, "x2*y3 - x3*y2").unwrap();
        let f13 = Polynomial::parse(r, "x1*y3 - x3*y1").unwrap();
        let p3 = Ideal::new(r, [f12.clone(), f23.clone()]).unwrap();
        assert_eq!(koszul_tor_oracle(&p3, 2, 4).unwrap(), 1);
        assert_eq!(koszul_tor_oracle(&p3, 1, 2).unwrap(), 2);
        let k3 = Ideal::new(r, [f12, f23, f13]).unwrap();
        assert_eq!(koszul_tor_oracle(&k3, 1, 2).unwrap(), 3);
        assert_eq!(koszul_tor_oracle(&k3, 2, 3).unwrap(), 2);
        assert_eq!(koszul_tor_oracle(&k3, 2, 4).unwrap(), 0);
    }
}
