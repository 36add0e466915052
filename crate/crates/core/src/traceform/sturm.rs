//! Distinct real roots via Sturm sequences.

use num_traits::Signed;

use super::Poly;

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign_at_infinity(p: &Poly, negative: bool) -> i8 {
    let lead = if p.leading().is_negative() { -1 } else { 1 };
    let odd = p.degree().unwrap_or(0) % 2 == 1;
    if negative && odd {
        -lead
    } else {
        lead
    }
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn count_real_roots(f: &Poly) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    let at = |neg: bool| sign_changes(seq.iter().map(|p| sign_at_infinity(p, neg)));
    at(true) - at(false)
}
