//! Homology straight from chain complexes.

use crate::smith::{self, Mat};

/// Reduced homology of a reduced simplicial set from its normalized chains.
///
/// `faces[q][x]` lists the faces of nondegenerate `q`-simplex `x`:
/// `Some(y)` for nondegenerate `(q-1)`-simplex `y`, `None` for a degenerate
/// face (which is zero in normalized chains). Degree 0 is dropped entirely,
/// which reduces away the single vertex.
pub fn reduced_homology(faces: &[Vec<Vec<Option<usize>>>], s: usize) -> (usize, Vec<i128>) {
    let count = |q: usize| -> usize {
        if q == 0 {
            0
        } else {
            faces.get(q).map_or(0, |v| v.len())
        }
    };
    // boundary C_q -> C_{q-1} as a (count(q-1) x count(q)) matrix
    let boundary = |q: usize| -> Mat {
        let mut m = vec![vec![0i128; count(q)]; count(q - 1)];
        if q >= 2 && q < faces.len() {
            for (x, fs) in faces[q].iter().enumerate() {
                for (i, f) in fs.iter().enumerate() {
                    if let Some(y) = f {
                        m[*y][x] += if i % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
        }
        m
    };
    homology_at(count(s), &boundary(s.max(1)), &boundary(s + 1), s)
}

fn homology_at(dim: usize, d_out: &Mat, d_in: &Mat, s: usize) -> (usize, Vec<i128>) {
    let r_out = if s == 0 || d_out.is_empty() { 0 } else { smith::rank(d_out) };
    let f_in = if d_in.is_empty() { vec![] } else { smith::invariant_factors(d_in) };
    let rank = dim - r_out - f_in.len();
    (rank, f_in.into_iter().filter(|&d| d > 1).collect())
}

/// Homotopy of a simplicial abelian group through the unnormalized complex.
///
/// `faces[q][i]` is the matrix of `d_i : A_q -> A_{q-1}` (rows index the
/// target basis). `ranks[q]` is the rank of `A_q`. Differential is the
/// alternating sum of all faces.
pub fn alternating_homotopy(ranks: &[usize], faces: &[Vec<Mat>], s: usize) -> (usize, Vec<i128>) {
    let diff = |q: usize| -> Mat {
        let mut m = vec![vec![0i128; ranks[q]]; ranks[q - 1]];
        for (i, f) in faces[q].iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for r in 0..ranks[q - 1] {
                for c in 0..ranks[q] {
                    m[r][c] += sign * f[r][c];
                }
            }
        }
        m
    };
    let d_out = if s == 0 { vec![] } else { diff(s) };
    let d_in = diff(s + 1);
    homology_at(ranks[s], &d_out, &d_in, s)
}
