//! Smith normal form over `i128`, first-nonzero pivoting.

pub type Mat = Vec<Vec<i128>>;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Nonzero invariant factors, each dividing the next.
pub fn invariant_factors(m: &Mat) -> Vec<i128> {
    let mut a = m.clone();
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // first nonzero in the remaining block
        let mut found = None;
        'outer: for j in t..cols {
            for i in t..rows {
                if a[i][j] != 0 {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                    if a[t][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let p = a[t][t];
            let mut bad = None;
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if a[i][j] % p != 0 {
                        bad = Some(i);
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    // chain normalisation (already a chain, but be exact about it)
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

pub fn rank(m: &Mat) -> usize {
    invariant_factors(m).len()
}

/// `(rank, torsion)` of `Z^rows / column span`.
pub fn cokernel(m: &Mat, rows: usize) -> (usize, Vec<i128>) {
    let f = invariant_factors(m);
    (rows - f.len(), f.into_iter().filter(|&d| d > 1).collect())
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().enumerate().map(|(k, x)| x * b[k][j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_chain() {
        assert_eq!(invariant_factors(&vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(invariant_factors(&vec![vec![2, 4], vec![4, 8]]), vec![2]);
        assert_eq!(cokernel(&vec![vec![2]], 1), (0, vec![2]));
    }
}
