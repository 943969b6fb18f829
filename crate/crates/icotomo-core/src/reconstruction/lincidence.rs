//! Decide whether a line of `Q(tau)^3` passes through a point of the module
//! `L`, exactly.
//!
//! Writing the line as `base + t * k` with `t` ranging over `Q(tau)`, the
//! basis coefficients of a point on the line are affine in `t`, so the
//! membership conditions become two-variable integer congruences for the
//! unknown `t = m + n tau` after clearing denominators. The solution set of
//! each congruence is an affine sublattice of `Z^2`; intersecting them
//! decides incidence and produces a witness point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::geom::{LineKey, ModulePoint, Point3};
use crate::qtau::QTau;

/// An affine sublattice `off + Z b1 + Z b2` of `Z^2` (always full rank here).
#[derive(Clone, Debug)]
struct AffineLattice {
    off: (BigInt, BigInt),
    b1: (BigInt, BigInt),
    b2: (BigInt, BigInt),
}

impl AffineLattice {
    fn all() -> Self {
        AffineLattice {
            off: (BigInt::zero(), BigInt::zero()),
            b1: (BigInt::one(), BigInt::zero()),
            b2: (BigInt::zero(), BigInt::one()),
        }
    }

    /// Intersect with `{ x : a1 x1 + a2 x2 = rhs (mod modulus) }`, `modulus > 0`.
    fn with_congruence(
        &self,
        a1: &BigInt,
        a2: &BigInt,
        rhs: &BigInt,
        modulus: &BigInt,
    ) -> Option<AffineLattice> {
        debug_assert!(modulus.is_positive());
        let alpha = (a1 * &self.b1.0 + a2 * &self.b1.1).mod_floor(modulus);
        let beta = (a1 * &self.b2.0 + a2 * &self.b2.1).mod_floor(modulus);
        let gamma = (rhs - a1 * &self.off.0 - a2 * &self.off.1).mod_floor(modulus);
        if alpha.is_zero() && beta.is_zero() {
            return gamma.is_zero().then(|| self.clone());
        }
        // alpha k1 + beta k2 = gamma (mod modulus) in the lattice coordinates
        let egcd = alpha.extended_gcd(&beta);
        let g2 = egcd.gcd; // > 0 since not both zero
        let g = g2.gcd(modulus);
        if !gamma.mod_floor(&g).is_zero() {
            return None;
        }
        // particular solution: w with g2 w = gamma (mod modulus)
        let md = modulus / &g;
        let inv = modinv(&(&g2 / &g).mod_floor(&md), &md)?;
        let w = ((&gamma / &g) * inv).mod_floor(&md);
        let k0 = (&egcd.x * &w, &egcd.y * &w);
        // homogeneous solutions: kernel direction plus the lcm lift
        let lift = &md; // lcm(g2, modulus) / g2 = modulus / g
        let h1 = (&beta / &g2, -(&alpha / &g2));
        let h2 = (&egcd.x * lift, &egcd.y * lift);
        let map = |k: &(BigInt, BigInt)| {
            (
                &k.0 * &self.b1.0 + &k.1 * &self.b2.0,
                &k.0 * &self.b1.1 + &k.1 * &self.b2.1,
            )
        };
        let off = {
            let shift = map(&k0);
            (&self.off.0 + shift.0, &self.off.1 + shift.1)
        };
        Some(AffineLattice {
            off,
            b1: map(&h1),
            b2: map(&h2),
        })
    }
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Common positive denominator of the rational parts of a family of field
/// elements.
fn common_denominator(values: &[&QTau]) -> BigInt {
    let mut d = BigInt::one();
    for v in values {
        d = d.lcm(v.rational_part().denom());
        d = d.lcm(v.tau_part().denom());
    }
    d
}

fn scaled_parts(x: &QTau, denom: &BigInt) -> (BigInt, BigInt) {
    let scale = |r: &BigRational| {
        let q = r * BigRational::from_integer(denom.clone());
        debug_assert!(q.is_integer());
        q.to_integer()
    };
    (scale(x.rational_part()), scale(x.tau_part()))
}

/// A point of `L` on the given line, if one exists.
pub fn line_lattice_point(line: &LineKey) -> Option<Point3> {
    let k = line.direction.canonical_key();
    let cb = ModulePoint::field_coefficients(&line.base);
    let cu = ModulePoint::field_coefficients(k);
    let pivot = (0..3).find(|&i| !cu[i].is_zero())?;

    let mut lattice = AffineLattice::all();
    for i in 0..3 {
        if i == pivot {
            continue;
        }
        // condition: s_i + z * r_i in Z[tau], z = m + n tau unknown
        let r = &cu[i] / &cu[pivot];
        let s = &cb[i] - &(&cb[pivot] * &r);
        if r.is_zero() {
            if ZTau::try_from_qtau_free(&s) {
                continue;
            }
            return None;
        }
        let d = common_denominator(&[&r, &s]);
        let (p, q) = scaled_parts(&r, &d);
        let (e, f) = scaled_parts(&s, &d);
        if d.is_one() {
            continue; // both integral: every z works
        }
        // (m p + n q) = -e (mod d)  and  (m q + n (p + q)) = -f (mod d)
        lattice = lattice.with_congruence(&p, &q, &-e, &d)?;
        lattice = lattice.with_congruence(&q, &(&p + &q), &-f, &d)?;
    }

    let z = QTau::new(
        BigRational::from_integer(lattice.off.0),
        BigRational::from_integer(lattice.off.1),
    );
    let t = &(&z - &cb[pivot]) / &cu[pivot];
    let point = &line.base + &k.scaled(&t);
    debug_assert!(line.contains(&point));
    debug_assert!(ModulePoint::from_point(&point).is_some());
    Some(point)
}

/// Helper: integrality of both rational parts without constructing a value.
struct ZTau;

impl ZTau {
    fn try_from_qtau_free(x: &QTau) -> bool {
        x.rational_part().is_integer() && x.tau_part().is_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{five_fold_rotation, Direction};

    fn u1() -> Direction {
        Direction::new(Point3::from_ints(0, 1, 0)).unwrap()
    }

    #[test]
    fn line_through_module_point_is_incident() {
        let p = Point3::from_ints(0, 1, 0);
        for d in [
            u1(),
            Direction::new(five_fold_rotation().apply(&Point3::from_ints(0, 1, 0))).unwrap(),
            Direction::new(Point3::from_ints(1, 1, 1)).unwrap(),
        ] {
            let line = LineKey::through(&p, &d);
            let w = line_lattice_point(&line).expect("line through L-point");
            assert!(line.contains(&w));
            assert!(ModulePoint::from_point(&w).is_some());
        }
    }

    #[test]
    fn half_offset_line_along_y_is_incident() {
        // the y-axis through (0, 1/2, 0) still meets L (e.g. at (0, 1, 0))
        let base = Point3::new(QTau::zero(), QTau::rat(1, 2), QTau::zero());
        let line = LineKey::through(&base, &u1());
        let w = line_lattice_point(&line).expect("incident");
        assert!(line.contains(&w));
        assert!(ModulePoint::from_point(&w).is_some());
    }

    #[test]
    fn shifted_parallel_line_misses_the_module() {
        // points (1/2, y, 0) force a half-integral first coefficient while
        // the third forces integrality: no L-point on this line
        let base = Point3::new(QTau::rat(1, 2), QTau::zero(), QTau::zero());
        let line = LineKey::through(&base, &u1());
        assert_eq!(line_lattice_point(&line), None);
    }

    #[test]
    fn irrational_offsets_are_decided() {
        // (tau/2, y, 0): first coefficient needs tau/2 + integer combos;
        // solvable or not, the answer must be consistent with brute force
        // over small z = m + n tau
        let base = Point3::new(QTau::rat2(0, 1, 1, 2), QTau::zero(), QTau::zero());
        let line = LineKey::through(&base, &u1());
        let solved = line_lattice_point(&line);
        let mut brute = None;
        for m in -6i64..=6 {
            for n in -6i64..=6 {
                let y = QTau::from_ints(m, n);
                let p = Point3::new(base.x.clone(), y, base.z.clone());
                if ModulePoint::from_point(&p).is_some() {
                    brute = Some(p);
                }
            }
        }
        assert_eq!(solved.is_some(), brute.is_some());
        if let Some(w) = solved {
            assert!(line.contains(&w));
        }
    }

    #[test]
    fn agrees_with_brute_force_on_rational_grid() {
        // lines through (i/2, j/3, 0) along u1: compare against brute force
        // over y = (my + ny tau)/1 with small coefficients; brute force can
        // only confirm positives, so require solver-positive wherever brute
        // finds a witness, and verify solver witnesses exactly
        for i in -4i64..=4 {
            for j in -3i64..=3 {
                let base = Point3::new(QTau::rat(i, 2), QTau::rat(j, 3), QTau::zero());
                let line = LineKey::through(&base, &u1());
                let solved = line_lattice_point(&line);
                if let Some(w) = &solved {
                    assert!(line.contains(w), "witness off line for i={i} j={j}");
                    assert!(ModulePoint::from_point(w).is_some());
                }
                let mut brute_hit = false;
                'outer: for m in -8i64..=8 {
                    for n in -8i64..=8 {
                        let p = Point3::new(base.x.clone(), QTau::from_ints(m, n), base.z.clone());
                        if ModulePoint::from_point(&p).is_some() {
                            brute_hit = true;
                            break 'outer;
                        }
                    }
                }
                if brute_hit {
                    assert!(solved.is_some(), "solver missed witness for i={i} j={j}");
                }
            }
        }
    }
}
