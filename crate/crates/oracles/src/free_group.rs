//! Free reduction of words given as `(generator, exponent)` syllables.

/// Expands syllables into signed letters, `(g, 3)` becoming three copies of `(g, +1)`.
pub fn letters(word: &[(usize, i64)]) -> Vec<(usize, i8)> {
    let mut out = Vec::new();
    for &(g, e) in word {
        let s = if e > 0 { 1 } else { -1 };
        for _ in 0..e.unsigned_abs() {
            out.push((g, s));
        }
    }
    out
}

/// Stack-based free reduction, returned as syllables.
pub fn reduce(word: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut stack: Vec<(usize, i8)> = Vec::new();
    for l in letters(word) {
        match stack.last() {
            Some(&(g, s)) if g == l.0 && s == -l.1 => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    let mut out: Vec<(usize, i64)> = Vec::new();
    for (g, s) in stack {
        match out.last_mut() {
            Some((h, e)) if *h == g => *e += s as i64,
            _ => out.push((g, s as i64)),
        }
    }
    out
}

pub fn inverse(word: &[(usize, i64)]) -> Vec<(usize, i64)> {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

pub fn concat(a: &[(usize, i64)], b: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// `x^-1 y^-1 x y`.
pub fn commutator(x: &[(usize, i64)], y: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut v = inverse(x);
    v.extend(inverse(y));
    v.extend_from_slice(x);
    v.extend_from_slice(y);
    reduce(&v)
}
