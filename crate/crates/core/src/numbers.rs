//! Small integer helpers for group orders.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// Product of the `p`-parts of `n` over `p` in `primes`.
pub fn pi_part(n: u64, primes: &[u64]) -> u64 {
    primes.iter().map(|&p| p_part(n, p)).product()
}

/// The prime `p` if `n = p^k` with `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_factors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factoring() {
        assert_eq!(prime_factors(840), vec![2, 3, 5, 7]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(p_part(24, 2), 8);
        assert_eq!(pi_part(60, &[3, 5]), 15);
        assert_eq!(prime_power_base(27), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(91));
        assert_eq!(lcm(4, 6), 12);
    }
}
