use crate::field::PrimeField;

/// Rank over `Z/p` of a sparse matrix given as rows of `(column, value)`.
///
/// Gaussian elimination on sparse rows, pivoting on the smallest column.
pub fn sparse_rank(k: PrimeField, rows: Vec<Vec<(usize, u32)>>) -> usize {
    let mut pivots: std::collections::HashMap<usize, Vec<(usize, u32)>> =
        std::collections::HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut row = normalize(row);
        while let Some(&(col, val)) = row.first() {
            match pivots.get(&col) {
                Some(p) => {
                    // p is monic at `col`
                    row = axpy(k, &row, k.neg(val), p);
                }
                None => {
                    let inv = k.inv(val);
                    let monic: Vec<(usize, u32)> =
                        row.iter().map(|&(c, v)| (c, k.mul(v, inv))).collect();
                    pivots.insert(col, monic);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn normalize(mut row: Vec<(usize, u32)>) -> Vec<(usize, u32)> {
    row.retain(|&(_, v)| v != 0);
    row.sort_unstable_by_key(|&(c, _)| c);
    row
}

/// `a + s * b`, both sorted by column.
fn axpy(k: PrimeField, a: &[(usize, u32)], s: u32, b: &[(usize, u32)]) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, k.mul(s, b[j].1)));
            j += 1;
        } else {
            let v = k.add(a[i].1, k.mul(s, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let k = PrimeField::default();
        assert_eq!(sparse_rank(k, vec![]), 0);
        assert_eq!(sparse_rank(k, vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)]]), 1);
        assert_eq!(
            sparse_rank(k, vec![vec![(0, 1)], vec![(1, 1)], vec![(0, 1), (1, 1)], vec![(2, 5)]]),
            3
        );
        // rank depends on the characteristic: det [[1,1],[1,-1]] = -2
        let two = PrimeField::new(2).unwrap();
        let rows = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1)]];
        assert_eq!(sparse_rank(two, rows), 1);
        let rows = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 32002)]];
        assert_eq!(sparse_rank(k, rows), 2);
    }
}
