//! Free groups: reduction, primitive roots, independence, and the probe for
//! products `b_1 u_1^{n_1} ... b_m u_m^{n_m}` with large exponents.

use crate::error::WordError;

use super::{Letter, Word};

pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for l in &w.0 {
        if out.last().is_some_and(|t| t.generator == l.generator && t.inverse != l.inverse) {
            out.pop();
        } else {
            out.push(l.clone());
        }
    }
    Word(out)
}

pub fn is_trivial_free(w: &Word) -> bool {
    free_reduce(w).is_empty()
}

/// `w = conjugator · core · conjugator^-1` with `core` cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let r = free_reduce(w).0;
    let mut k = 0;
    while 2 * k + 1 < r.len() && r[k] == r[r.len() - 1 - k].inv() {
        k += 1;
    }
    (Word(r[..k].to_vec()), Word(r[k..r.len() - k].to_vec()))
}

/// The shortest `r` with `core = r^k`, and `k`.
pub fn primitive_root(core: &Word) -> (Word, usize) {
    let n = core.len();
    for p in 1..=n {
        if n % p == 0 && (p..n).all(|i| core.0[i] == core.0[i - p]) {
            return (Word(core.0[..p].to_vec()), n / p);
        }
    }
    (core.clone(), 1)
}

fn is_rotation(u: &Word, v: &Word) -> bool {
    u.len() == v.len() && (0..u.len().max(1)).any(|k| u.0[k.min(u.len())..].iter().chain(&u.0[..k.min(u.len())]).eq(v.0.iter()))
}

/// Two nontrivial elements are independent when no nontrivial powers of them
/// are conjugate, i.e. their primitive roots are not conjugate up to inverse.
pub fn independent(u: &Word, v: &Word) -> bool {
    let (_, cu) = cyclic_reduce(u);
    let (_, cv) = cyclic_reduce(v);
    if cu.is_empty() || cv.is_empty() {
        return false;
    }
    let (ru, _) = primitive_root(&cu);
    let (rv, _) = primitive_root(&cv);
    !is_rotation(&ru, &rv) && !is_rotation(&ru, &rv.inverse())
}

/// Checks the hypotheses under which the product is nontrivial for all large
/// exponents: every `u_i` nontrivial, any two either equal or independent,
/// and (cyclically, `u_0 = u_m`) `u_{i-1} = u_i` only if `b_i` does not
/// commute with `u_i`. A single factor needs no such condition: `b u^n` is
/// nontrivial once `|n|` is large.
pub fn check_power_product_hypotheses(u: &[Word], b: &[Word]) -> Result<(), WordError> {
    if u.len() != b.len() {
        return Err(WordError::LengthMismatch(u.len(), b.len(), u.len()));
    }
    if u.is_empty() {
        return Err(WordError::Hypothesis("at least one factor is needed".into()));
    }
    let red: Vec<Word> = u.iter().map(free_reduce).collect();
    if let Some(i) = red.iter().position(Word::is_empty) {
        return Err(WordError::Hypothesis(format!("u_{} is trivial", i + 1)));
    }
    for i in 0..red.len() {
        for j in (i + 1)..red.len() {
            if red[i] != red[j] && !independent(&red[i], &red[j]) {
                return Err(WordError::Hypothesis(format!("u_{} and u_{} are neither equal nor independent", i + 1, j + 1)));
            }
        }
    }
    let m = red.len();
    for i in (0..m).filter(|_| m >= 2) {
        let prev = &red[(i + m - 1) % m];
        if *prev == red[i] && is_trivial_free(&Word::commutator(&b[i], &red[i])) {
            return Err(WordError::Hypothesis(format!("u_{} = u_{} but b_{} commutes with u_{}", (i + m - 1) % m + 1, i + 1, i + 1, i + 1)));
        }
    }
    Ok(())
}

pub fn power_product(u: &[Word], b: &[Word], n: &[i64]) -> Word {
    let mut w = Word::empty();
    for ((ui, bi), &ni) in u.iter().zip(b).zip(n) {
        w = w.concat(bi).concat(&ui.pow(ni));
    }
    w
}

/// Whether `b_1 u_1^{n_1} ... b_m u_m^{n_m}` is nontrivial, after checking
/// the hypotheses.
pub fn power_product_probe(u: &[Word], b: &[Word], n: &[i64]) -> Result<bool, WordError> {
    if u.len() != b.len() || u.len() != n.len() {
        return Err(WordError::LengthMismatch(u.len(), b.len(), n.len()));
    }
    check_power_product_hypotheses(u, b)?;
    Ok(!is_trivial_free(&power_product(u, b, n)))
}

/// The least `N <= max_n` such that the product is nontrivial for every
/// choice of exponents with `N < |n_i| <= N + window`.
pub fn power_product_threshold(u: &[Word], b: &[Word], max_n: usize, window: usize) -> Result<Option<usize>, WordError> {
    check_power_product_hypotheses(u, b)?;
    let m = u.len();
    let choices = 2 * window;
    'outer: for big_n in 0..=max_n {
        let mut idx = vec![0usize; m];
        loop {
            let n: Vec<i64> = idx
                .iter()
                .map(|&c| {
                    let mag = (big_n + 1 + c / 2) as i64;
                    if c % 2 == 0 { mag } else { -mag }
                })
                .collect();
            if is_trivial_free(&power_product(u, b, &n)) {
                continue 'outer;
            }
            let mut k = 0;
            while k < m {
                idx[k] += 1;
                if idx[k] < choices {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == m {
                return Ok(Some(big_n));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(free_reduce(&w("a b b^-1 a^-1 c")), w("c"));
        let (c, core) = cyclic_reduce(&w("b a a b^-1"));
        assert_eq!((c, core), (w("b"), w("a a")));
        assert_eq!(primitive_root(&w("a b a b a b")), (w("a b"), 3));
    }

    #[test]
    fn independence() {
        assert!(independent(&w("a"), &w("b")));
        assert!(!independent(&w("a b"), &w("b a")));
        assert!(!independent(&w("a b a b"), &w("b^-1 a^-1")));
        assert!(!independent(&w("c a c^-1"), &w("a a")));
    }

    #[test]
    fn probe_examples() {
        let ab = w("a b");
        assert!(power_product_probe(&[ab.clone(), ab.clone()], &[w("a"), w("a")], &[5, 5]).unwrap());
        assert!(power_product_probe(&[ab.clone()], &[Word::empty()], &[3]).unwrap());
        let a = w("a");
        assert!(matches!(
            power_product_probe(&[a.clone(), a.clone()], &[w("b"), a.clone()], &[2, 2]),
            Err(WordError::Hypothesis(_))
        ));
        assert!(matches!(power_product_probe(&[a.clone()], &[], &[1]), Err(WordError::LengthMismatch(..))));
    }

    #[test]
    fn threshold_found() {
        let n = power_product_threshold(&[w("a b"), w("a b")], &[w("a"), w("a")], 10, 3).unwrap();
        assert!(n.is_some_and(|n| n <= 10));
    }
}
