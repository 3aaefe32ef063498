//! Numerator of the Hilbert series of `S/M` for a monomial ideal `M`.

use crate::error::Result;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};

use super::schreyer::minimalize;

/// Coefficients `c_j` with `H_{S/M}(t) = (Σ c_j t^j) / (1 - t)^N`.
///
/// Uses `N(M + (m)) = N(M) - t^{deg m} N(M : m)`, peeling one generator at a
/// time; cheap at the sizes here and exact.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    let mut out = numerator(minimalize(gens.to_vec()));
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    match gens.len() {
        0 => return vec![1],
        1 => {
            let d = gens[0].degree() as usize;
            let mut v = vec![0; d + 1];
            v[0] = 1;
            v[d] -= 1;
            return v;
        }
        _ => {}
    }
    // pairwise coprime generators: product of (1 - t^{d_i})
    if gens
        .iter()
        .enumerate()
        .all(|(a, g)| gens[a + 1..].iter().all(|h| g.is_coprime(h)))
    {
        let mut v = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut w = vec![0; v.len() + d];
            for (k, &c) in v.iter().enumerate() {
                w[k] += c;
                w[k + d] -= c;
            }
            v = w;
        }
        return v;
    }
    let mut rest = gens;
    let m = rest.pop().expect("nonempty");
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|g| g.gcd(&m).quotient_of(g).expect("gcd divides"))
        .collect();
    let a = numerator(rest);
    let b = numerator(minimalize(colon));
    let d = m.degree() as usize;
    let mut out = vec![0i64; a.len().max(b.len() + d)];
    for (k, &c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, &c) in b.iter().enumerate() {
        out[k + d] -= c;
    }
    out
}

/// Hilbert numerator of `S/I`, via the degrevlex initial ideal.
pub fn hilbert_numerator_of_ideal(ideal: &Ideal) -> Result<Vec<i64>> {
    let gb = ideal.groebner(MonomialOrder::DegRevLex);
    Ok(hilbert_numerator(&gb.leading_monomials()))
}
