//! The designated numerically-trivial ideal of the formal model:
//! generated by given classes, optionally closed under the components of
//! the total Steenrod operation, with graded linear-algebra membership
//! over Z/p^m.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::chern::formal::{FormalPoly, FormalRing, GradedClass};
use crate::chern::steenrod::{steenrod_endo_images, steenrod_total_formal};
use crate::error::{Error, Result};
use crate::mpoly::MPoly;

/// An ideal of a [`FormalRing`] described by homogeneous generators.
/// Construction with `close_under_steenrod` saturates the generator set
/// under the graded components of the total Steenrod operation (degrees up
/// to the ring cap), making it the smallest such ideal containing the
/// given classes.
#[derive(Debug, Clone)]
pub struct NumTrivialIdeal {
    ring: FormalRing,
    gens: Vec<FormalPoly>,
}

impl NumTrivialIdeal {
    pub fn new(
        ring: &FormalRing,
        generators: Vec<FormalPoly>,
        close_under_steenrod: bool,
    ) -> Result<Self> {
        let pp = ring.coeffs().prime_power().ok_or(Error::WrongCoefficients)?;
        let _ = pp;
        let mut ideal = NumTrivialIdeal {
            ring: ring.clone(),
            gens: Vec::new(),
        };
        let mut queue: Vec<FormalPoly> = Vec::new();
        for g in generators {
            for d in g.degrees() {
                queue.push(g.component(d));
            }
        }
        let images: Option<Vec<MPoly>> = if close_under_steenrod {
            Some(steenrod_endo_images(ring)?)
        } else {
            None
        };
        while let Some(g) = queue.pop() {
            if g.is_zero() || ideal.contains(&g) {
                continue;
            }
            ideal.gens.push(g.clone());
            if let Some(images) = &images {
                let total = steenrod_total_formal(&g, images);
                for d in total.degrees() {
                    queue.push(total.component(d));
                }
            }
        }
        Ok(ideal)
    }

    pub fn generators(&self) -> &[FormalPoly] {
        &self.gens
    }

    pub fn ring(&self) -> &FormalRing {
        &self.ring
    }

    /// Membership test: each homogeneous component of `f` must be a ring
    /// combination of the generators. Per degree this is a linear system
    /// over Z/p^m between monomial multiples of the generators and the
    /// target component.
    pub fn contains(&self, f: &FormalPoly) -> bool {
        let pp = self
            .ring
            .coeffs()
            .prime_power()
            .expect("ideal requires modular coefficients");
        let p = pp.p();
        let m = pp.m();
        let q = pp.modulus().to_u64().expect("modulus fits in u64");
        for d in f.degrees() {
            let target = f.component(d);
            if target.is_zero() {
                continue;
            }
            let basis = self.ring.monomials_of_degree(d);
            let index = |e: &[u32]| basis.iter().position(|b| b == e).unwrap();
            let mut rows: Vec<Vec<u64>> = Vec::new();
            for g in &self.gens {
                let gd = match g.degrees().first() {
                    Some(&x) => x,
                    None => continue,
                };
                if gd > d {
                    continue;
                }
                for mono in self.ring.monomials_of_degree(d - gd) {
                    let shifted = g
                        .poly()
                        .mul(&MPoly::monomial(self.ring.nvars(), mono, BigInt::from(1)));
                    let mut row = vec![0u64; basis.len()];
                    for (e, c) in shifted.terms() {
                        row[index(e)] = c.to_u64().unwrap() % q;
                    }
                    rows.push(row);
                }
            }
            let mut target_vec = vec![0u64; basis.len()];
            for (e, c) in target.poly().terms() {
                target_vec[index(e)] = c.to_u64().unwrap() % q;
            }
            if !in_span_mod_prime_power(rows, target_vec, p, m) {
                return false;
            }
        }
        true
    }
}

fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn inv_mod(a: u64, q: u64) -> u64 {
    // extended gcd; a is a unit mod q
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    debug_assert_eq!(r0, 1);
    (t0.rem_euclid(q as i128)) as u64
}

/// Solvability of `target` in the row span over Z/p^m. Z/p^m is a chain
/// ring, so Gaussian elimination works with min-valuation pivoting, as
/// long as the p^{m-v} annihilator multiples of each pivot row are kept
/// in play (Howell-style).
pub fn in_span_mod_prime_power(
    rows: Vec<Vec<u64>>,
    mut target: Vec<u64>,
    p: u64,
    m: u32,
) -> bool {
    let q = p.pow(m);
    let ncols = target.len();
    let mut pool: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x % q).collect())
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut pivots: Vec<(usize, u32, Vec<u64>)> = Vec::new(); // (col, valuation, row)

    for col in 0..ncols {
        // pick min-valuation entry in this column among pool rows whose
        // earlier columns are already eliminated
        let mut best: Option<(usize, u32)> = None;
        for (i, r) in pool.iter().enumerate() {
            if r[col] != 0 {
                let v = valuation(r[col], p);
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
        }
        let Some((bi, v)) = best else {
            continue;
        };
        let mut pivot = pool.swap_remove(bi);
        // normalize: leading entry becomes p^v
        let unit = pivot[col] / p.pow(v);
        let unit_inv = inv_mod(unit, q);
        for x in pivot.iter_mut() {
            *x = *x * unit_inv % q;
        }
        debug_assert_eq!(pivot[col], p.pow(v));
        // eliminate the column from the remaining pool
        for r in pool.iter_mut() {
            if r[col] != 0 {
                debug_assert!(valuation(r[col], p) >= v);
                let factor = r[col] / p.pow(v);
                for (x, pv) in r.iter_mut().zip(&pivot) {
                    *x = (*x + (q - factor % q) * pv % q) % q;
                }
            }
        }
        // keep the annihilator multiple in play for later columns
        if v > 0 {
            let ann: Vec<u64> = pivot.iter().map(|&x| x * p.pow(m - v) % q).collect();
            if ann.iter().any(|&x| x != 0) {
                pool.push(ann);
            }
        }
        pool.retain(|r| r.iter().any(|&x| x != 0));
        pivots.push((col, v, pivot));
    }

    // reduce the target against the pivots in column order
    for (col, v, row) in &pivots {
        let t = target[*col];
        if t == 0 {
            continue;
        }
        if valuation(t, p) < *v {
            return false;
        }
        let factor = t / p.pow(*v);
        for (x, pv) in target.iter_mut().zip(row) {
            *x = (*x + (q - factor % q) * pv % q) % q;
        }
    }
    target.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::formal::CoefficientSpec;
    use crate::modp::PrimePower;

    #[test]
    fn span_over_field() {
        // rows span {(1,0),(0,1)} mod 3
        let rows = vec![vec![1, 2], vec![0, 1]];
        assert!(in_span_mod_prime_power(rows.clone(), vec![2, 1], 3, 1));
        assert!(!in_span_mod_prime_power(vec![vec![1, 2]], vec![1, 0], 3, 1));
    }

    #[test]
    fn span_over_z9() {
        // 3*(1,0) = (3,0): (3,0) in span of {(3,1)}? 3 = 3a, 0 = a mod 9
        // needs a = 3b with 3a = 9b = 0 != 3, so no
        assert!(!in_span_mod_prime_power(vec![vec![3, 1]], vec![3, 0], 3, 2));
        // but (6,2) = 2*(3,1) is
        assert!(in_span_mod_prime_power(vec![vec![3, 1]], vec![6, 2], 3, 2));
        // annihilator: 3*(3,1) = (0,3) is in the span
        assert!(in_span_mod_prime_power(vec![vec![3, 1]], vec![0, 3], 3, 2));
    }

    #[test]
    fn principal_ideal_membership() {
        let pp = PrimePower::new(3, 1).unwrap();
        let ring = FormalRing::range(2, 5, CoefficientSpec::Modular(pp));
        let ideal =
            NumTrivialIdeal::new(&ring, vec![ring.generator(2)], false).unwrap();
        let x2 = ring.generator(2);
        let x3 = ring.generator(3);
        assert!(ideal.contains(&x2.mul(&x3)));
        assert!(ideal.contains(&x2.mul(&x2)));
        assert!(!ideal.contains(&x3));
        assert!(!ideal.contains(&ring.generator(4)));
    }

    #[test]
    fn steenrod_closure_reaches_higher_degrees() {
        // p=3, generators x_2..x_5: closure of (x_2) picks up the
        // degree-4 Steenrod component x_4 + a*x_2^2
        let pp = PrimePower::new(3, 1).unwrap();
        let ring = FormalRing::range(2, 5, CoefficientSpec::Modular(pp));
        let ideal = NumTrivialIdeal::new(&ring, vec![ring.generator(2)], true).unwrap();
        assert!(ideal.contains(&ring.generator(4)));
        assert!(!ideal.contains(&ring.generator(3)));
    }
}
