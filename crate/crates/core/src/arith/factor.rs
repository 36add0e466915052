//! Integer factorization: trial division by a sieved prime table, then
//! Brent's variant of Pollard rho on the remaining cofactor.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Limits on how much work `factorize` may spend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division covers every prime up to this bound.
    pub trial_bound: u32,
    /// Composite cofactors left after trial division may have at most this many bits.
    pub cofactor_bits: u64,
    /// Polynomial steps Pollard rho may take per split before giving up.
    pub rho_steps: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            cofactor_bits: 128,
            rho_steps: 1 << 21,
        }
    }
}

fn sieve(bound: u32) -> Vec<u32> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes below the default trial bound, computed once.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(FactorBudget::default().trial_bound))
}

fn primes_up_to(bound: u32) -> std::borrow::Cow<'static, [u32]> {
    let table = small_primes();
    if bound <= FactorBudget::default().trial_bound {
        let end = table.partition_point(|&p| p <= bound);
        std::borrow::Cow::Borrowed(&table[..end])
    } else {
        std::borrow::Cow::Owned(sieve(bound))
    }
}

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first thirteen prime bases, which is deterministic
/// below 3.3·10²⁴ and probabilistic above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &WITNESSES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of an odd composite `n` within `max_steps`
/// polynomial evaluations summed over all restarts.
fn brent_rho(n: &BigUint, max_steps: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut steps: u64 = 0;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x;
        let mut g = one.clone();
        let mut q = one.clone();
        let mut ys = y.clone();
        let mut r: u64 = 1;
        const BATCH: u64 = 64;
        while g.is_one() {
            if steps > max_steps {
                return None;
            }
            steps += 2 * r;
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if ys > y { &ys - &y } else { &y - &ys };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn split_cofactor(n: BigUint, budget: &FactorBudget, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime(&n) {
        out.push(n);
        return Ok(());
    }
    if n.bits() > budget.cofactor_bits {
        return Err(Error::ResourceLimit(format!(
            "composite cofactor {} exceeds the factoring bound of 2^{}",
            n, budget.cofactor_bits
        )));
    }
    let d = brent_rho(&n, budget.rho_steps).ok_or_else(|| {
        Error::ResourceLimit(format!(
            "no factor of {} found within {} rho steps",
            n, budget.rho_steps
        ))
    })?;
    let e = &n / &d;
    split_cofactor(d, budget, out)?;
    split_cofactor(e, budget, out)
}

/// Prime factors of `|n|` with multiplicity, in ascending order.
pub fn factorize(n: &BigInt) -> Result<Vec<BigUint>> {
    factorize_with(n, &FactorBudget::default())
}

pub fn factorize_with(n: &BigInt, budget: &FactorBudget) -> Result<Vec<BigUint>> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor 0"));
    }
    let mut rest = n.magnitude().clone();
    let mut out = Vec::new();
    for &p in primes_up_to(budget.trial_bound).iter() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            out.push(rest);
            rest = BigUint::one();
            break;
        }
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            out.push(pb.clone());
            rest = q;
        }
    }
    split_cofactor(rest, budget, &mut out)?;
    out.sort();
    Ok(out)
}

/// Primes dividing `n` an odd number of times.
pub fn odd_primes_of(n: &BigInt) -> Result<Vec<BigUint>> {
    let factors = factorize(n)?;
    let mut odd = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let mut j = i;
        while j < factors.len() && factors[j] == factors[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            odd.push(factors[i].clone());
        }
        i = j;
    }
    Ok(odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn f(n: i64) -> Vec<u64> {
        factorize(&BigInt::from(n))
            .unwrap()
            .iter()
            .map(|p| p.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(f(12), vec![2, 2, 3]);
        assert_eq!(f(1), Vec::<u64>::new());
        assert_eq!(f(97), vec![97]);
        assert_eq!(f(-60), vec![2, 2, 3, 5]);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(
            factorize(&BigInt::zero()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn rho_splits_semiprime_above_trial_bound() {
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(4_294_967_311u64);
        let n = BigInt::from(&p * &q);
        assert_eq!(factorize(&n).unwrap(), vec![p, q]);
    }

    #[test]
    fn large_prime_cofactor_is_accepted() {
        // 2^89 - 1 is a Mersenne prime.
        let m89 = (BigUint::one() << 89usize) - 1u32;
        let n = BigInt::from(&m89 * 6u32);
        let fs = factorize(&n).unwrap();
        assert_eq!(fs.last().unwrap(), &m89);
    }

    #[test]
    fn large_composite_cofactor_hits_budget() {
        let p = (BigUint::one() << 61usize) - 1u32;
        let q = (BigUint::one() << 31usize) - 1u32;
        let p2 = (BigUint::one() << 89usize) - 1u32;
        let n = BigInt::from(&p * &q * &p2 * &p2);
        let budget = FactorBudget {
            trial_bound: 1000,
            cofactor_bits: 64,
            rho_steps: 1 << 21,
        };
        match factorize_with(&n, &budget) {
            Err(Error::ResourceLimit(msg)) => assert!(msg.contains("2^64")),
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn rho_step_budget_is_enforced() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(1_000_000_009u64);
        let n = BigInt::from(&p * &q);
        let tight = FactorBudget {
            trial_bound: 1000,
            cofactor_bits: 128,
            rho_steps: 16,
        };
        assert!(matches!(
            factorize_with(&n, &tight),
            Err(Error::ResourceLimit(_))
        ));
        assert_eq!(factorize(&n).unwrap(), vec![p, q]);
    }

    #[test]
    fn default_budget_splits_128_bit_cofactors() {
        // two primes just above 2^40
        let p = BigUint::from(1_099_511_627_791u64);
        let q = BigUint::from(1_099_511_627_803u64);
        assert!(is_probable_prime(&p) && is_probable_prime(&q));
        let n = BigInt::from(&p * &q * 7u32);
        assert_eq!(factorize(&n).unwrap(), vec![BigUint::from(7u32), p, q]);
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let table = sieve(5000);
        for n in 0u32..5000 {
            let expect = table.binary_search(&n).is_ok();
            assert_eq!(is_probable_prime(&BigUint::from(n)), expect, "n = {n}");
        }
    }
}
