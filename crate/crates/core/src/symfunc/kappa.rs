//! The coefficient of the top Chern class in a partition-indexed class,
//! by closed formula and by brute-force expansion.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::symfunc::{char_class_in_roots, express_in_chern, Partition};

/// Exact multinomial coefficient (Σ parts; parts...) over the integers.
pub fn multinomial_exact(parts: &[u64]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total: u64 = 0;
    for &p in parts {
        for j in 1..=p {
            total += 1;
            acc *= total;
            acc /= j; // exact at every step: acc is binom(total, j-partial)
        }
    }
    acc
}

/// κ(r) = (−1)^{‖r‖−|r|} · (|r| choose r_1,...,r_k) · ‖r‖/|r|, as an exact
/// integer. The division is always exact; this is asserted.
pub fn kappa_formula(r: &Partition) -> Result<BigInt> {
    if r.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let degree = r.degree();
    let inner = r.inner_degree();
    let multi = multinomial_exact(r.multiplicities());
    let numer = multi * BigInt::from(degree);
    let denom = BigInt::from(inner);
    let (q, rem) = num_integer::Integer::div_rem(&numer, &denom);
    assert!(rem.is_zero(), "kappa ratio must be integral for {r}");
    let sign = if (degree - inner) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    Ok(sign * q)
}

/// Independent oracle for κ: expand the class in ‖r‖ root variables,
/// express in Chern variables and read off the coefficient of c_{‖r‖}.
pub fn kappa_bruteforce(r: &Partition) -> Result<BigInt> {
    if r.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let l = r.degree() as usize;
    let cls = char_class_in_roots(r, l);
    let in_chern = express_in_chern(&cls)?;
    Ok(in_chern.chern_coeff(&Partition::uniform(l, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial_exact(&[4, 1]), bi(5));
        assert_eq!(multinomial_exact(&[2, 2]), bi(6));
        assert_eq!(multinomial_exact(&[]), bi(1));
    }

    #[test]
    fn formula_examples() {
        for n in 1..=5u64 {
            assert_eq!(kappa_formula(&Partition::uniform(1, n)).unwrap(), bi(1));
        }
        assert_eq!(kappa_formula(&Partition::parse("2:1").unwrap()).unwrap(), bi(-2));
        assert_eq!(
            kappa_formula(&Partition::parse("1:1,2:1").unwrap()).unwrap(),
            bi(-3)
        );
        // (1^4,3^1): (-1)^{7-5} * (5 choose 4,1) * 7/5 = 7
        assert_eq!(
            kappa_formula(&Partition::parse("1:4,3:1").unwrap()).unwrap(),
            bi(7)
        );
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(kappa_bruteforce(&Partition::uniform(1, 3)).unwrap(), bi(1));
        assert_eq!(
            kappa_bruteforce(&Partition::parse("2:1").unwrap()).unwrap(),
            bi(-2)
        );
        assert_eq!(
            kappa_bruteforce(&Partition::parse("1:4,3:1").unwrap()).unwrap(),
            bi(7)
        );
    }

    #[test]
    fn empty_partition_rejected() {
        assert_eq!(kappa_formula(&Partition::empty()), Err(Error::EmptyPartition));
        assert_eq!(
            kappa_bruteforce(&Partition::empty()),
            Err(Error::EmptyPartition)
        );
    }
}
