//! Associated Legendre functions with Condon-Shortley phase.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] use num_traits::Float; // f64 math without std

use crate::error::Error;
use crate::Result;

/// P_k^m(t) for 0 ≤ m ≤ k, |t| ≤ 1, including the (−1)^m phase.
///
/// Upward three-term recursion in the degree, seeded by the closed forms
/// P_m^m = (−1)^m (2m−1)!! (1−t²)^{m/2} and P_{m+1}^m = t(2m+1)P_m^m.
pub fn assoc_legendre(k: usize, m: usize, t: f64) -> Result<f64> {
    if m > k {
        return Err(Error::Index {
            what: "legendre order",
            index: m as i64,
            limit: k as i64,
        });
    }
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain {
            what: "legendre argument",
            value: t,
        });
    }
    let s = (1.0 - t * t).sqrt();
    let mut pmm = 1.0;
    for i in 1..=m {
        pmm *= -((2 * i - 1) as f64) * s;
    }
    if k == m {
        return Ok(pmm);
    }
    let mut pm1 = pmm;
    let mut p = t * (2 * m + 1) as f64 * pmm;
    for deg in (m + 2)..=k {
        let d = deg as f64;
        let mf = m as f64;
        let next = ((2.0 * d - 1.0) * t * p - (d + mf - 1.0) * pm1) / (d - mf);
        pm1 = p;
        p = next;
    }
    Ok(p)
}

/// Legendre polynomial P_k(t).
pub fn legendre_p(k: usize, t: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut pm1 = 1.0;
    let mut p = t;
    for deg in 2..=k {
        let d = deg as f64;
        let next = ((2.0 * d - 1.0) * t * p - (d - 1.0) * pm1) / d;
        pm1 = p;
        p = next;
    }
    p
}

/// All P_k^m(t) for k ≤ kmax, 0 ≤ m ≤ k, as a triangle indexed [k][m].
pub fn assoc_legendre_table(kmax: usize, t: f64) -> Result<Vec<Vec<f64>>> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain {
            what: "legendre argument",
            value: t,
        });
    }
    let s = (1.0 - t * t).sqrt();
    let mut table = vec![Vec::new(); kmax + 1];
    // diagonal first, then the two-step degree recursion per order
    let mut pmm = 1.0;
    for m in 0..=kmax {
        if m > 0 {
            pmm *= -((2 * m - 1) as f64) * s;
        }
        table[m].push(pmm);
        if m + 1 <= kmax {
            let pnext = t * (2 * m + 1) as f64 * pmm;
            table[m + 1].push(pnext);
            let mut pa = pmm;
            let mut pb = pnext;
            for deg in (m + 2)..=kmax {
                let d = deg as f64;
                let mf = m as f64;
                let next = ((2.0 * d - 1.0) * t * pb - (d + mf - 1.0) * pa) / (d - mf);
                pa = pb;
                pb = next;
                table[deg].push(next);
            }
        }
    }
    // entries arrived ordered by m for each degree
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(assoc_legendre(0, 0, 0.3).unwrap(), 1.0);
        let t0 = -0.42;
        assert!((assoc_legendre(1, 0, t0).unwrap() - t0).abs() < 1e-15);
        // P_1^1 = -sqrt(1-t²)
        assert!((assoc_legendre(1, 1, 0.6).unwrap() + 0.8).abs() < 1e-15);
    }

    #[test]
    fn rodrigues_oracle_k5_m3() {
        // P_5(x) = (63x⁵ − 70x³ + 15x)/8, differentiated three times by hand:
        // d³/dx³ = (3780x² − 420)/8, so
        // P_5^3(t) = (−1)³ (1−t²)^{3/2} (3780t² − 420)/8
        let t: f64 = 0.7;
        let oracle = -(1.0 - t * t).powf(1.5) * (3780.0 * t * t - 420.0) / 8.0;
        let got = assoc_legendre(5, 3, t).unwrap();
        assert!((got - oracle).abs() < 1e-12 * oracle.abs().max(1.0));
    }

    #[test]
    fn domain_errors() {
        assert!(assoc_legendre(2, 3, 0.5).is_err());
        assert!(assoc_legendre(2, 1, 1.5).is_err());
    }

    #[test]
    fn table_matches_single() {
        let t = 0.37;
        let table = assoc_legendre_table(8, t).unwrap();
        for k in 0..=8usize {
            assert_eq!(table[k].len(), k + 1);
            for m in 0..=k {
                let single = assoc_legendre(k, m, t).unwrap();
                assert!((table[k][m] - single).abs() < 1e-12 * single.abs().max(1.0));
            }
        }
    }

    #[test]
    fn legendre_matches_assoc() {
        for &t in &[-0.9, -0.2, 0.0, 0.55, 1.0] {
            for k in 0..10 {
                let a = legendre_p(k, t);
                let b = assoc_legendre(k, 0, t).unwrap();
                assert!((a - b).abs() < 1e-13);
            }
        }
    }
}
