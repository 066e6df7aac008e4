//! Integer Smith normal form with the column transform tracked.
//!
//! For a relation matrix `A` (rows = relators, columns = generators) this
//! finds unimodular `P`, `Q` with `P·A·Q = D` diagonal and each diagonal entry
//! dividing the next. Only `Q` is kept: an exponent row vector `v` maps to
//! `v·Q`, whose `i`-th coordinate lives in `Z / d_i Z` (with `d_i = 0` past
//! the rank).

pub struct Smith {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<i128>,
    /// Column transform, `n × n`, row-major.
    pub q: Vec<Vec<i128>>,
}

fn swap_cols(m: &mut [Vec<i128>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// `col[dst] += k * col[src]`
fn add_col(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    for row in m.iter_mut() {
        row[dst] += k * row[src];
    }
}

fn negate_col(m: &mut [Vec<i128>], i: usize) {
    for row in m.iter_mut() {
        row[i] = -row[i];
    }
}

pub fn smith(a: &[Vec<i128>], ncols: usize) -> Smith {
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let nrows = m.len();
    let mut q: Vec<Vec<i128>> = (0..ncols).map(|i| (0..ncols).map(|j| i128::from(i == j)).collect()).collect();
    let mut diagonal = Vec::new();

    for t in 0..nrows.min(ncols) {
        // smallest nonzero entry in the trailing block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { diagonal, q };
            };
            m.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut q, t, pj);
            if m[t][t] < 0 {
                negate_col(&mut m, t);
                negate_col(&mut q, t);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..nrows {
                let k = m[i][t].div_euclid(p);
                if k != 0 {
                    let pivot_row = m[t].clone();
                    for (x, y) in m[i][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= k * y;
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..ncols {
                let k = m[t][j].div_euclid(p);
                if k != 0 {
                    add_col(&mut m, j, t, -k);
                    add_col(&mut q, j, t, -k);
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let offender =
                (t + 1..nrows).flat_map(|i| (t + 1..ncols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
            match offender {
                Some((i, _)) => {
                    let row = m[i].clone();
                    for (x, y) in m[t][t..].iter_mut().zip(&row[t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diagonal.push(m[t][t]);
    }
    Smith { diagonal, q }
}
