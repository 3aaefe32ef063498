//! The finest multigrading under which a set of polynomials is homogeneous.
//!
//! Monomials are graded by their exponent vector modulo the lattice spanned by
//! differences of exponent vectors inside each generator. Everything derived
//! from the generators by Buchberger steps and syzygy reductions stays
//! homogeneous for this grading, so rank computations split into small blocks.

use crate::monomial::Monomial;
use crate::polynomial::Polynomial;

/// A lattice in `Z^N` in Hermite normal form; degrees are canonical coset
/// representatives.
#[derive(Clone, Debug)]
pub struct Grading {
    nvars: usize,
    /// rows with strictly increasing pivot columns, positive pivots
    rows: Vec<(usize, Vec<i64>)>,
}

pub type Multidegree = Vec<i64>;

impl Grading {
    /// The standard grading only (exponent vectors modulo nothing would be the
    /// finest monomial grading; this collapses everything of equal total degree).
    pub fn standard(nvars: usize) -> Self {
        let mut g = Grading {
            nvars,
            rows: Vec::new(),
        };
        let mut gens = Vec::new();
        for i in 1..nvars {
            let mut v = vec![0i64; nvars];
            v[0] = 1;
            v[i] = -1;
            gens.push(v);
        }
        g.rows = hermite(gens, nvars);
        g
    }

    pub fn finest_for(nvars: usize, polys: &[Polynomial]) -> Self {
        let mut gens = Vec::new();
        for p in polys {
            let terms = p.terms();
            if let Some((first, _)) = terms.first() {
                for (m, _) in &terms[1..] {
                    gens.push(
                        (0..nvars)
                            .map(|i| first.exponent(i) as i64 - m.exponent(i) as i64)
                            .collect(),
                    );
                }
            }
        }
        Grading {
            nvars,
            rows: hermite(gens, nvars),
        }
    }

    pub fn degree(&self, m: &Monomial) -> Multidegree {
        let mut v: Vec<i64> = (0..self.nvars).map(|i| m.exponent(i) as i64).collect();
        for (p, row) in &self.rows {
            let q = v[*p].div_euclid(row[*p]);
            if q != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= q * b;
                }
            }
        }
        v
    }

    /// Rank of the lattice being factored out; zero means the fine monomial grading.
    pub fn relations(&self) -> usize {
        self.rows.len()
    }
}

/// Row-style Hermite normal form by repeated gcd elimination.
fn hermite(mut gens: Vec<Vec<i64>>, ncols: usize) -> Vec<(usize, Vec<i64>)> {
    let mut out: Vec<(usize, Vec<i64>)> = Vec::new();
    for col in 0..ncols {
        // Euclid on column `col` among remaining rows
        loop {
            gens.retain(|r| r.iter().any(|&x| x != 0));
            let nz: Vec<usize> = (0..gens.len()).filter(|&i| gens[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz
                .iter()
                .min_by_key(|&&i| gens[i][col].abs())
                .expect("nonempty");
            let pv = gens[piv][col];
            for &i in &nz {
                if i != piv {
                    let q = gens[i][col].div_euclid(pv);
                    let prow = gens[piv].clone();
                    for (a, b) in gens[i].iter_mut().zip(&prow) {
                        *a -= q * b;
                    }
                }
            }
        }
        if let Some(i) = (0..gens.len()).find(|&i| gens[i][col] != 0) {
            let mut row = gens.swap_remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push((col, row));
        }
    }
    // reduce entries above pivots so representatives are canonical
    for k in (0..out.len()).rev() {
        let (pc, prow) = out[k].clone();
        for (_, row) in out.iter_mut().take(k) {
            let q = row[pc].div_euclid(prow[pc]);
            if q != 0 {
                for (a, b) in row.iter_mut().zip(&prow) {
                    *a -= q * b;
                }
            }
        }
    }
    out
}
