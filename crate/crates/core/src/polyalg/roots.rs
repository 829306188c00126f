//! Simultaneous root approximation with a posteriori certification.
//!
//! Approximation runs the Aberth-Ehrlich iteration in rounded dyadic
//! arithmetic; nothing there is trusted. Certification then places around
//! each approximation the disk of radius `n |f(z)| / |f'(z)|`, which always
//! contains at least one root: if the disks are pairwise disjoint and there
//! are `deg f` of them, each holds exactly one root, and every statement
//! derived from the disks is rigorous.

use super::poly::IntPolynomial;
use crate::exactnum::{CertifiedReal, Dyadic, Round};

#[derive(Debug, Clone)]
pub(crate) struct CDyadic {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl CDyadic {
    fn new(re: Dyadic, im: Dyadic) -> CDyadic {
        CDyadic { re, im }
    }

    fn zero() -> CDyadic {
        CDyadic::new(Dyadic::zero(), Dyadic::zero())
    }

    fn round(&self, w: u32) -> CDyadic {
        CDyadic::new(self.re.round_to(w, Round::Down), self.im.round_to(w, Round::Down))
    }

    fn add(&self, o: &CDyadic) -> CDyadic {
        CDyadic::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    fn sub(&self, o: &CDyadic) -> CDyadic {
        CDyadic::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    fn mul(&self, o: &CDyadic, w: u32) -> CDyadic {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CDyadic::new(re, im).round(w)
    }

    /// Exact squared modulus.
    fn abs_sq(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    fn div(&self, o: &CDyadic, w: u32) -> Option<CDyadic> {
        let d = o.abs_sq();
        if d.is_zero() {
            return None;
        }
        let conj = CDyadic::new(o.re.clone(), o.im.neg());
        let num = self.mul(&conj, w + 8);
        Some(CDyadic::new(num.re.div(&d, w, Round::Down), num.im.div(&d, w, Round::Down)))
    }
}

/// One certified root: every point of the open disk `|z - center| < radius`
/// except the root itself is regular, and exactly one root lies inside.
#[derive(Debug, Clone)]
pub(crate) struct RootDisk {
    pub center: CDyadic,
    pub radius: Dyadic,
}

impl RootDisk {
    /// Certified enclosure of the root's modulus (clamped below at 0).
    pub fn modulus(&self, w: u32) -> CertifiedReal {
        let sq = self.center.abs_sq();
        let lo = sq.sqrt(w, Round::Down).sub(&self.radius);
        let hi = sq.sqrt(w, Round::Up).add(&self.radius);
        let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
        CertifiedReal::new(lo, hi)
    }
}

fn dyadic_from_f64_coarse(x: f64) -> Dyadic {
    let k = (x * (1u64 << 30) as f64).round() as i64;
    Dyadic::from_i64(k).mul_pow2(-30)
}

/// Rounded-dyadic Horner evaluation.
fn horner(coeffs: &[Dyadic], z: &CDyadic, w: u32) -> CDyadic {
    let mut acc = CDyadic::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, w);
        acc.re = acc.re.add(c).round_to(w, Round::Down);
    }
    acc
}

/// Interval Horner evaluation at an exact dyadic point: a rectangle certain
/// to contain `f(z)`.
fn horner_interval(f: &IntPolynomial, z: &CDyadic, w: u32) -> (CertifiedReal, CertifiedReal) {
    let zre = CertifiedReal::point(z.re.clone());
    let zim = CertifiedReal::point(z.im.clone());
    let mut are = CertifiedReal::zero();
    let mut aim = CertifiedReal::zero();
    for c in f.coeffs().iter().rev() {
        let re = are.mul(&zre).sub(&aim.mul(&zim)).add(&CertifiedReal::from_bigint(c));
        let im = are.mul(&zim).add(&aim.mul(&zre));
        are = re.compress(w);
        aim = im.compress(w);
    }
    (are, aim)
}

/// Upper bound on the modulus of a rectangle.
fn rect_abs_hi(re: &CertifiedReal, im: &CertifiedReal, w: u32) -> Dyadic {
    let r = Dyadic::max(&re.lo().abs(), &re.hi().abs());
    let i = Dyadic::max(&im.lo().abs(), &im.hi().abs());
    r.mul(&r).add(&i.mul(&i)).sqrt(w, Round::Up)
}

/// Lower bound on the modulus of a rectangle (0 if it may contain 0).
fn rect_abs_lo(re: &CertifiedReal, im: &CertifiedReal, w: u32) -> Dyadic {
    let part = |iv: &CertifiedReal| -> Dyadic {
        if iv.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&iv.lo().abs(), &iv.hi().abs())
        }
    };
    let r = part(re);
    let i = part(im);
    r.mul(&r).add(&i.mul(&i)).sqrt(w, Round::Down)
}

/// Initial guesses on a circle of roughly the root-modulus scale.
fn initial_guesses(f: &IntPolynomial, n: usize) -> Vec<CDyadic> {
    let bits_a0 = f.coeff(0).magnitude().bits() as f64;
    let bits_an = f.lc().magnitude().bits() as f64;
    let r_log2 = (bits_a0 - bits_an) / n as f64;
    let int_part = r_log2.floor();
    let frac = (r_log2 - int_part).exp2();
    let r = dyadic_from_f64_coarse(frac).mul_pow2(int_part as i64);
    (0..n)
        .map(|j| {
            let theta = std::f64::consts::TAU * (j as f64 + 0.25) / n as f64 + 0.13;
            let c = dyadic_from_f64_coarse(theta.cos());
            let s = dyadic_from_f64_coarse(theta.sin());
            CDyadic::new(r.mul(&c).round_to(40, Round::Down), r.mul(&s).round_to(40, Round::Down))
        })
        .collect()
}

/// Aberth-Ehrlich sweep loop; returns approximations only.
fn aberth(f: &IntPolynomial, df: &IntPolynomial, w: u32) -> Vec<CDyadic> {
    let n = f.degree();
    let fc: Vec<Dyadic> = f.coeffs().iter().map(|c| Dyadic::from_bigint(c.clone())).collect();
    let dfc: Vec<Dyadic> = df.coeffs().iter().map(|c| Dyadic::from_bigint(c.clone())).collect();
    let mut z = initial_guesses(f, n);
    let nudge = Dyadic::one().mul_pow2(-(w as i64) / 2);
    let max_sweeps = 200 + 4 * w as usize;
    for _ in 0..max_sweeps {
        let mut max_rel: Option<bool> = Some(true); // all corrections small?
        let snapshot = z.clone();
        for j in 0..n {
            let fz = horner(&fc, &snapshot[j], w);
            let dfz = horner(&dfc, &snapshot[j], w);
            let newton = match fz.div(&dfz, w) {
                Some(q) => q,
                None => {
                    z[j].re = z[j].re.add(&nudge);
                    max_rel = None;
                    continue;
                }
            };
            let mut s = CDyadic::zero();
            let mut collision = false;
            for (k, zk) in snapshot.iter().enumerate() {
                if k == j {
                    continue;
                }
                let diff = snapshot[j].sub(zk);
                match CDyadic::new(Dyadic::one(), Dyadic::zero()).div(&diff, w) {
                    Some(inv) => s = s.add(&inv).round(w),
                    None => {
                        collision = true;
                        break;
                    }
                }
            }
            if collision {
                z[j].im = z[j].im.add(&nudge);
                max_rel = None;
                continue;
            }
            let denom = CDyadic::new(Dyadic::one(), Dyadic::zero()).sub(&newton.mul(&s, w));
            let correction = match newton.div(&denom, w) {
                Some(c) => c,
                None => newton,
            };
            z[j] = snapshot[j].sub(&correction).round(w);
            // Converged when |correction|^2 <= 2^(16-2w) * max(1, |z|^2).
            let csq = correction.abs_sq();
            let scale = Dyadic::max(&z[j].abs_sq(), &Dyadic::one()).mul_pow2(16 - 2 * w as i64);
            if csq.cmp(&scale) == std::cmp::Ordering::Greater {
                max_rel = Some(false);
            }
        }
        if max_rel == Some(true) {
            break;
        }
    }
    z
}

/// Runs approximation then certification at working precision `w`.
/// `None` when the disks could not be certified pairwise disjoint.
pub(crate) fn certified_roots(f: &IntPolynomial, w: u32) -> Option<Vec<RootDisk>> {
    let n = f.degree();
    assert!(n >= 1);
    if n == 1 {
        // Exact rational root -a0/a1 enclosed directly.
        let a0 = Dyadic::from_bigint(-f.coeff(0));
        let a1 = Dyadic::from_bigint(f.lc().clone());
        let lo = a0.div(&a1, w, Round::Down);
        let hi = a0.div(&a1, w, Round::Up);
        let mid = lo.add(&hi).mul_pow2(-1).round_to(w, Round::Down);
        let radius = hi.sub(&lo).add(&Dyadic::one().mul_pow2(-(w as i64)));
        return Some(vec![RootDisk { center: CDyadic::new(mid, Dyadic::zero()), radius }]);
    }
    let df = f.derivative();
    let approx = aberth(f, &df, w);
    let n_big = Dyadic::from_i64(n as i64);
    let mut disks = Vec::with_capacity(n);
    for z in &approx {
        let (fre, fim) = horner_interval(f, z, w);
        let (dre, dim) = horner_interval(&df, z, w);
        let fu = rect_abs_hi(&fre, &fim, w);
        let fl = rect_abs_lo(&dre, &dim, w);
        if fl.is_zero() {
            return None;
        }
        let radius = n_big.mul(&fu).div(&fl, w, Round::Up);
        disks.push(RootDisk { center: z.clone(), radius });
    }
    // Pairwise disjoint (exact dyadic comparisons).
    for j in 0..n {
        for k in j + 1..n {
            let d = disks[j].center.sub(&disks[k].center);
            let dist_sq = d.abs_sq();
            let rsum = disks[j].radius.add(&disks[k].radius);
            let rsum_sq = rsum.mul(&rsum);
            if dist_sq.cmp(&rsum_sq) != std::cmp::Ordering::Greater {
                return None;
            }
        }
    }
    Some(disks)
}
