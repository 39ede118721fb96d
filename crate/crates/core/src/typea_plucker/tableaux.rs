use std::fmt;

use crate::error::{Error, Result};
use crate::root_data::{Kind, RootSystem, Weight};
use crate::weyl_characters::{columns, exterior_weight, irreducible_character, lr_two_fundamentals, QCharacter};

/// Strictly increasing column of entries from `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column(Vec<usize>);

impl Column {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!("column {entries:?} is not strictly increasing")));
        }
        if entries.iter().any(|&x| x == 0 || x > n) {
            return Err(Error::OutOfRange(format!("column {entries:?} has entries outside 1..={n}")));
        }
        Ok(Column(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All columns of length `len` with entries from `1..=n`.
    pub fn all(n: usize, len: usize) -> Vec<Column> {
        columns(n, len).into_iter().map(Column).collect()
    }

    pub fn weight(&self, rank: usize) -> Weight {
        exterior_weight(rank, &self.0)
    }

    pub fn label(&self) -> String {
        self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

#[derive(Clone, Copy)]
enum Side {
    I,
    J,
}

/// The set `P(I, J)`, built downward from `i_{l(I)}`.
///
/// Equal-length columns are taken as given (no reordering), and from `i_a`
/// with `a > l(J)` the walk moves to `i_{a-1}`.
pub fn p_set(i: &Column, j: &Column) -> Result<Vec<usize>> {
    if i.len() < j.len() {
        return Err(Error::Precondition(format!("left column {i} is shorter than right column {j}")));
    }
    if i.is_empty() {
        return Ok(vec![]);
    }
    let (iv, jv) = (&i.0, &j.0);
    let mut out = Vec::new();
    let (mut side, mut a) = (Side::I, i.len());
    loop {
        let p = match side {
            Side::I => iv[a - 1],
            Side::J => jv[a - 1],
        };
        out.push(p);
        let (next_side, next_a) = match side {
            Side::I if a <= jv.len() && iv[a - 1] > jv[a - 1] => (Side::J, a),
            Side::I => (Side::I, a - 1),
            Side::J if iv[a - 1] < jv[a - 1] => (Side::I, a),
            Side::J => (Side::J, a - 1),
        };
        if next_a == 0 {
            break;
        }
        side = next_side;
        a = next_a;
    }
    out.reverse();
    Ok(out)
}

/// `k(I, J) = |P(I, J)| - l(I)`.
pub fn k_statistic(i: &Column, j: &Column) -> Result<usize> {
    Ok(p_set(i, j)?.len() - i.len())
}

/// Rows weakly increase: `i_a <= j_a` for `a <= l(J)`.
pub fn is_semistandard(i: &Column, j: &Column) -> bool {
    i.len() >= j.len() && i.0.iter().zip(&j.0).all(|(a, b)| a <= b)
}

/// Two-column tableau of shape `omega_i + omega_j` with `k = l` and content
/// `omega_{i+l} + omega_{j-l}`: fill `i+l, i+l-1, ...` from the bottom of the
/// left column, zig-zag through `l` horizontal moves, then fill both columns
/// with `1..=j-l`.
pub fn lemma_t_tableau(r: usize, i: usize, j: usize, l: usize) -> Result<(Column, Column)> {
    if !(1 <= j && j <= i && i <= r) {
        return Err(Error::OutOfRange(format!("need 1 <= j <= i <= {r}, got i={i}, j={j}")));
    }
    if l > j.min(r + 1 - i) {
        return Err(Error::OutOfRange(format!("l = {l} exceeds min(j, r+1-i) = {}", j.min(r + 1 - i))));
    }
    let mut c = vec![0usize; i];
    let mut d = vec![0usize; j];
    for row in j..=i {
        c[row - 1] = row + l;
    }
    let (mut value, mut row, mut left) = (j + l, j, true);
    for h in 0..l {
        value -= 1;
        left = !left;
        if left { c[row - 1] = value } else { d[row - 1] = value }
        if h + 1 < l {
            value -= 1;
            row -= 1;
            if left { c[row - 1] = value } else { d[row - 1] = value }
        }
    }
    for s in 1..=j - l {
        c[s - 1] = s;
        d[s - 1] = s;
    }
    Ok((Column::new(c, r + 1)?, Column::new(d, r + 1)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Tableaux,
    Lr,
}

fn check_type_a(rs: &RootSystem, i: usize, j: usize) -> Result<()> {
    if rs.kind() != Kind::A {
        return Err(Error::Unsupported(format!("tableau combinatorics for {}", rs.name())));
    }
    let r = rs.rank();
    if !(1 <= j && j <= i && i <= r) {
        return Err(Error::OutOfRange(format!("need 1 <= j <= i <= {r}, got i={i}, j={j}")));
    }
    Ok(())
}

/// Graded character of `W_{omega_i + omega_j}`, either as
/// `sum_{I,J} q^{k(I,J)} x^{wt I + wt J}` or as `sum_l q^l ch V_{omega_{j-l} + omega_{i+l}}`.
pub fn ch_w_two_fund(rs: &RootSystem, i: usize, j: usize, via: Route) -> Result<QCharacter> {
    check_type_a(rs, i, j)?;
    let r = rs.rank();
    let mut out = QCharacter::zero();
    match via {
        Route::Tableaux => {
            for ci in Column::all(r + 1, i) {
                for cj in Column::all(r + 1, j) {
                    let k = k_statistic(&ci, &cj)?;
                    out.add_term(k as i64, &(&ci.weight(r) + &cj.weight(r)), 1);
                }
            }
        }
        Route::Lr => {
            for (l, (mu, _)) in lr_two_fundamentals(rs, i, j)?.into_iter().enumerate() {
                out.add_slice(l as i64, &irreducible_character(rs, &mu)?, 1);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[usize], n: usize) -> Column {
        Column::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn p_set_examples() {
        let (i, j) = (col(&[2, 3], 4), col(&[1, 4], 4));
        assert_eq!(p_set(&i, &j).unwrap(), vec![1, 2, 3]);
        assert_eq!(k_statistic(&i, &j).unwrap(), 1);
        assert_eq!(k_statistic(&col(&[1, 2], 3), &col(&[1, 3], 3)).unwrap(), 0);
        let (i, j) = (col(&[2, 3], 3), col(&[1], 3));
        assert_eq!(p_set(&i, &j).unwrap(), vec![1, 2, 3]);
        assert_eq!(k_statistic(&i, &j).unwrap(), 1);
        assert_eq!(k_statistic(&col(&[2], 2), &col(&[1], 2)).unwrap(), 1);
        assert!(p_set(&col(&[1], 3), &col(&[1, 2], 3)).is_err());
        assert!(Column::new(vec![2, 2], 3).is_err());
        assert!(Column::new(vec![4], 3).is_err());
    }

    #[test]
    fn rank_thirteen_tableaux() {
        let (c, d) = lemma_t_tableau(13, 10, 6, 1).unwrap();
        assert_eq!(c.entries(), &[1, 2, 3, 4, 5, 7, 8, 9, 10, 11]);
        assert_eq!(d.entries(), &[1, 2, 3, 4, 5, 6]);
        let (c, d) = lemma_t_tableau(13, 10, 6, 3).unwrap();
        assert_eq!(c.entries(), &[1, 2, 3, 5, 6, 9, 10, 11, 12, 13]);
        assert_eq!(d.entries(), &[1, 2, 3, 4, 7, 8]);
        let (c, d) = lemma_t_tableau(13, 10, 6, 0).unwrap();
        assert_eq!(c.entries(), (1..=10).collect::<Vec<_>>().as_slice());
        assert_eq!(d.entries(), (1..=6).collect::<Vec<_>>().as_slice());
        assert!(lemma_t_tableau(13, 10, 6, 5).is_err());
        for l in 0..=4 {
            let (c, d) = lemma_t_tableau(13, 10, 6, l).unwrap();
            assert_eq!(k_statistic(&c, &d).unwrap(), l);
        }
    }

    #[test]
    fn two_fundamental_examples() {
        let a1 = RootSystem::new("A1").unwrap();
        let ch = ch_w_two_fund(&a1, 1, 1, Route::Tableaux).unwrap();
        assert_eq!(ch, ch_w_two_fund(&a1, 1, 1, Route::Lr).unwrap());
        assert_eq!(ch.graded_dims(1), vec![3, 1]);
        assert_eq!(ch.slice(1), [(Weight(vec![0]), 1)].into());
        let a2 = RootSystem::new("A2").unwrap();
        let ch = ch_w_two_fund(&a2, 2, 1, Route::Tableaux).unwrap();
        assert_eq!(ch, ch_w_two_fund(&a2, 2, 1, Route::Lr).unwrap());
        assert_eq!(ch.graded_dims(1), vec![8, 1]);
        assert!(ch_w_two_fund(&a2, 1, 2, Route::Lr).is_err());
    }
}
