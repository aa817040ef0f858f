//! Integer helpers: factorization, divisors and the usual multiplicative
//! functions. Everything is exact `u64` arithmetic.

use std::fmt;

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Prime factorization `n = ∏ p^e`, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    powers: Vec<(u64, u32)>,
}

impl Factorization {
    /// Factor `n ≥ 1` by trial division. `factorize(1)` is the empty product.
    pub fn of(mut n: u64) -> Self {
        assert!(n >= 1, "cannot factor 0");
        let mut powers = Vec::new();
        let mut push = |p: u64, n: &mut u64| {
            let mut e = 0;
            while (*n).is_multiple_of(p) {
                *n /= p;
                e += 1;
            }
            if e > 0 {
                powers.push((p, e));
            }
        };
        push(2, &mut n);
        push(3, &mut n);
        let mut p = 5u64;
        while p.saturating_mul(p) <= n {
            push(p, &mut n);
            push(p + 2, &mut n);
            p += 6;
        }
        if n > 1 {
            powers.push((n, 1));
        }
        Factorization { powers }
    }

    /// Build from explicit prime powers. Primes must be distinct and
    /// exponents positive; the result is sorted.
    pub fn from_powers(mut powers: Vec<(u64, u32)>) -> Result<Self, String> {
        if powers.is_empty() {
            return Err("factorization must contain at least one prime".into());
        }
        powers.sort_unstable();
        for w in powers.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(format!("prime {} listed twice", w[0].0));
            }
        }
        for &(p, e) in &powers {
            if e == 0 {
                return Err(format!("exponent of {p} must be at least 1"));
            }
            if !is_prime(p) {
                return Err(format!("{p} is not prime"));
            }
        }
        let f = Factorization { powers };
        f.checked_value()
            .ok_or_else(|| "factorization overflows u64".to_string())?;
        Ok(f)
    }

    pub fn powers(&self) -> &[(u64, u32)] {
        &self.powers
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.powers.iter().map(|&(p, _)| p)
    }

    fn checked_value(&self) -> Option<u64> {
        self.powers
            .iter()
            .try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// The integer being factored.
    pub fn value(&self) -> u64 {
        self.checked_value().expect("factorization value fits u64")
    }

    /// Ω(n): number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.powers.iter().map(|&(_, e)| e).sum()
    }

    /// ω(n): number of distinct prime factors.
    pub fn distinct_primes(&self) -> usize {
        self.powers.len()
    }

    pub fn is_prime_power(&self) -> bool {
        self.powers.len() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.powers.iter().all(|&(_, e)| e == 1)
    }

    pub fn radical(&self) -> u64 {
        self.powers.iter().map(|&(p, _)| p).product()
    }

    pub fn divisor_count(&self) -> u64 {
        self.powers.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.powers {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.powers.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let f = Factorization::of(n);
    f.powers == [(n, 1)]
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    Factorization::of(n)
        .powers
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// First `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    (2u64..).filter(|&n| is_prime(n)).take(k).collect()
}
