//! Poincare duality detection, integration against the fundamental class,
//! Wu classes, the auxiliary pairing, the torsion linking form, and the
//! alternation criterion connecting them.


use crate::abelian;
use crate::cohomology::{CohomologyClass, SesSpec, Space};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Witness that a complex satisfies Poincare duality over a ring: a
/// fundamental class plus one perfect cup-pairing matrix per degree.
pub struct DualityCertificate {
    pub dimension: usize,
    pub ring: Ring,
    pub fundamental: CohomologyClass,
    /// sign normalization for integration over Z
    sign: i64,
    /// cup pairing `H^k x H^(dim-k) -> ring` on the generators, per degree
    pub pairings: Vec<PairingWitness>,
}

pub struct PairingWitness {
    pub degree: usize,
    pub gram: Vec<Vec<i64>>,
    pub perfect: bool,
}

/// A reduced dyadic fraction `num / 2^log_den` in `Q/Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub num: u64,
    pub log_den: u32,
}

impl Dyadic {
    pub fn new(num: i64, log_den: u32) -> Dyadic {
        let modulus = 1i64 << log_den;
        let mut num = num.rem_euclid(modulus) as u64;
        let mut log_den = log_den;
        while log_den > 0 && num % 2 == 0 {
            num /= 2;
            log_den -= 1;
        }
        if log_den == 0 {
            num = 0;
        }
        Dyadic { num, log_den }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let l = self.log_den.max(other.log_den);
        let a = (self.num as i64) << (l - self.log_den);
        let b = (other.num as i64) << (l - other.log_den);
        Dyadic::new(a + b, l)
    }
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.log_den)
        }
    }
}

/// Entries of a pairing Gram matrix: ring values for the auxiliary pairing,
/// dyadic fractions for the linking form.
pub enum Gram {
    Aux(Vec<Vec<i64>>),
    Linking(Vec<Vec<Dyadic>>),
}

/// Gram matrix of the auxiliary pairing or of the linking form, with
/// alternation and skewness verdicts.
pub struct PairingMatrix {
    pub n: u32,
    pub degree: usize,
    pub gram: Gram,
    /// orders of the underlying generators
    pub basis_orders: Vec<u64>,
    pub skew_symmetric: bool,
    pub alternating: bool,
    /// perfectness of the linking form on the full torsion (only set when
    /// the level covers all of it)
    pub nondegenerate: Option<bool>,
}

/// The Wu classes of a mod-2 Poincare duality complex.
pub struct WuClassVector {
    /// `components[i]` is the degree-i Wu class
    pub components: Vec<CohomologyClass>,
}

/// Lifting data for the middle Wu class.
pub struct WuLiftObstruction {
    pub beta_tilde_v: CohomologyClass,
    pub beta_2n_v: CohomologyClass,
    pub lifts: bool,
}

/// The verdict record tying the alternation of the pairing to the lifting
/// of the middle Wu class.
pub struct Theorem73Report {
    pub dimension: usize,
    pub levels: Vec<LevelVerdict>,
    pub lifts: bool,
    pub consistent: bool,
}

pub struct LevelVerdict {
    pub n: u32,
    pub skew_symmetric: bool,
    pub alternating: bool,
}

impl Space {
    /// Integration against the fundamental class of a certificate.
    pub fn integrate(&self, x: &CohomologyClass, cert: &DualityCertificate) -> Result<i64> {
        if x.degree != cert.dimension {
            return Err(Error::DegreeMismatch {
                expected: cert.dimension,
                got: x.degree,
            });
        }
        if x.ring != cert.ring {
            return Err(Error::RingMismatch {
                expected: cert.ring,
                got: x.ring,
            });
        }
        Ok(cert.ring.mul(cert.sign, x.coords[0]))
    }

    fn integrate_cochain(
        &self,
        cert: &DualityCertificate,
        z: crate::cochain::Cochain,
    ) -> Result<i64> {
        let cls = self.class_of(cert.ring, cert.dimension, z)?;
        self.integrate(&cls, cert)
    }

    /// Certify Poincare duality over the ring: the top group must be cyclic
    /// of full ring order and every cup pairing matrix perfect. The error
    /// names the first failing degree.
    pub fn duality_certificate(&self, ring: Ring) -> Result<DualityCertificate> {
        let dim = self.dimension();
        let top = self.cohomology(ring, dim);
        let top_ok = top.free_rank == 1 && top.torsion_orders.is_empty();
        if !top_ok {
            return Err(Error::NotPoincareDuality { ring, degree: dim });
        }
        let fundamental = {
            let mut coords = vec![0i64; 1];
            coords[0] = 1;
            self.class_from_coords(&top, &coords)
        };
        // over Z, fix the global sign: first nonzero representative value
        // positive
        let mut sign = 1i64;
        if ring == Ring::Z {
            if let Some(&v) = fundamental.rep.values.iter().find(|&&v| v != 0) {
                if v < 0 {
                    sign = -1;
                }
            }
        }
        let cert_seed = DualityCertificate {
            dimension: dim,
            ring,
            fundamental,
            sign,
            pairings: Vec::new(),
        };

        let mut pairings = Vec::new();
        for k in 0..=dim {
            let left = self.cohomology(ring, k);
            let right = self.cohomology(ring, dim - k);
            let mut gram = vec![vec![0i64; right.summands()]; left.summands()];
            for (i, gi) in left.generators.iter().enumerate() {
                for (j, gj) in right.generators.iter().enumerate() {
                    let prod = self.cup(gi, gj)?;
                    gram[i][j] = self.integrate_cochain(&cert_seed, prod)?;
                }
            }
            let perfect = match ring {
                Ring::Z => {
                    // free parts must pair unimodularly; torsion pairs to 0
                    if left.free_rank != right.free_rank {
                        false
                    } else {
                        let mut block = crate::snf::IntMatrix::zero(
                            left.free_rank,
                            right.free_rank,
                        );
                        for i in 0..left.free_rank {
                            for j in 0..right.free_rank {
                                block.set(i, j, num_bigint::BigInt::from(gram[i][j]));
                            }
                        }
                        let snf = crate::snf::smith_normal_form(&block);
                        snf.rank() == left.free_rank
                            && snf
                                .diagonal()
                                .iter()
                                .all(|d| *d == num_bigint::BigInt::from(1))
                    }
                }
                Ring::Mod(m) => {
                    // the adjoint H^k -> Hom(H^(dim-k), Z/m) must be onto a
                    // group of equal order
                    if left.order() != right.order() {
                        false
                    } else {
                        let r_orders = right.orders();
                        // coordinates of alpha(g_i) in Hom = (+) Z/o'_j
                        let rows: Vec<Vec<i64>> = gram
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .zip(&r_orders)
                                    .map(|(&v, &o)| {
                                        let unit = (m / o) as i64;
                                        debug_assert_eq!(v % unit, 0);
                                        (v / unit).rem_euclid(o as i64)
                                    })
                                    .collect()
                            })
                            .collect();
                        (0..r_orders.len()).all(|j| {
                            let mut e = vec![0i64; r_orders.len()];
                            e[j] = 1;
                            abelian::member(&r_orders, &rows, &e)
                        })
                    }
                }
            };
            if !perfect {
                return Err(Error::NotPoincareDuality { ring, degree: k });
            }
            pairings.push(PairingWitness {
                degree: k,
                gram,
                perfect,
            });
        }
        Ok(DualityCertificate {
            pairings,
            ..cert_seed
        })
    }

    /// The auxiliary pairing `<x, y> = integral of x cup beta(y)` on middle
    /// cohomology with `Z/2^n` coefficients of an odd-dimensional
    /// Poincare-duality complex.
    pub fn aux_pairing(&self, n: u32) -> Result<PairingMatrix> {
        let dim = self.dimension();
        if dim % 2 == 0 {
            return Err(Error::Parity { dim });
        }
        let md = dim / 2;
        let ring = Ring::mod2n(n);
        let cert = self.duality_certificate(ring)?;
        let g = self.cohomology(ring, md);
        let betas: Vec<CohomologyClass> = (0..g.summands())
            .map(|j| {
                let mut coords = vec![0i64; g.summands()];
                coords[j] = 1;
                let y = self.class_from_coords(&g, &coords);
                self.connecting(SesSpec::BetaMod { n }, &y)
            })
            .collect::<Result<_>>()?;
        let mut gram = vec![vec![0i64; g.summands()]; g.summands()];
        for (i, gi) in g.generators.iter().enumerate() {
            for (j, beta_j) in betas.iter().enumerate() {
                let prod = self.cup(gi, &beta_j.rep)?;
                gram[i][j] = self.integrate_cochain(&cert, prod)?;
            }
        }
        let m = 1i64 << n;
        let skew = (0..gram.len())
            .all(|i| (0..gram.len()).all(|j| (gram[i][j] + gram[j][i]) % m == 0));
        let alternating = skew && (0..gram.len()).all(|i| gram[i][i] % m == 0);
        Ok(PairingMatrix {
            n,
            degree: md,
            gram: Gram::Aux(gram),
            basis_orders: g.orders(),
            skew_symmetric: skew,
            alternating,
            nondegenerate: None,
        })
    }

    /// 2-primary torsion generators of `H^k(K; Z)` scaled down to the
    /// `2^n`-torsion subgroup: (class, 2-order exponent at this level).
    fn two_torsion_basis(&self, k: usize, n: u32) -> Vec<(CohomologyClass, u32)> {
        let g = self.cohomology(Ring::Z, k);
        let mut out = Vec::new();
        for (t, &o) in g.torsion_orders.iter().enumerate() {
            let s = o.trailing_zeros();
            if s == 0 {
                continue;
            }
            let odd = (o >> s) as i64;
            let level = s.min(n);
            // odd * 2^(s - level) * generator has exact order 2^level
            let factor = odd * (1i64 << (s - level));
            let mut coords = vec![0i64; g.summands()];
            coords[g.free_rank + t] = factor;
            out.push((self.class_from_coords(&g, &coords), level));
        }
        out
    }

    /// The linking form on the `2^n`-torsion of middle-degree integral
    /// cohomology, computed through the auxiliary pairing on preimages under
    /// the integral Bockstein. Preimage independence is asserted.
    pub fn linking_form(&self, n: u32) -> Result<PairingMatrix> {
        let dim = self.dimension();
        if dim % 2 == 0 {
            return Err(Error::Parity { dim });
        }
        let md = dim / 2;
        let ring = Ring::mod2n(n);
        let cert = self.duality_certificate(ring)?;
        let torsion = self.two_torsion_basis(md + 1, n);
        let g_mid = self.cohomology(ring, md);
        let g_z = self.cohomology(Ring::Z, md + 1);

        // integral Bockstein on the mod-2^n generators
        let mut beta_tilde_cols: Vec<Vec<i64>> = Vec::new();
        for j in 0..g_mid.summands() {
            let mut coords = vec![0i64; g_mid.summands()];
            coords[j] = 1;
            let y = self.class_from_coords(&g_mid, &coords);
            let b = self.connecting(SesSpec::BetaTilde { n }, &y)?;
            beta_tilde_cols.push(b.coords);
        }
        let preimage = |target: &CohomologyClass| -> Result<CohomologyClass> {
            let combo = abelian::solve_in(&g_z.orders(), &beta_tilde_cols, &target.coords)
                .ok_or_else(|| {
                    Error::InvalidParams(
                        "no Bockstein preimage; complex lacks duality".into(),
                    )
                })?;
            Ok(self.class_from_coords(&g_mid, &combo))
        };
        let xs: Vec<CohomologyClass> = torsion
            .iter()
            .map(|(t, _)| preimage(t))
            .collect::<Result<_>>()?;

        // a deterministic kernel element of the integral Bockstein, used to
        // perturb preimages and assert independence
        let kernel_shift: Option<CohomologyClass> = {
            let zero = vec![0i64; g_z.summands()];
            let combos = (0..g_mid.summands()).find_map(|j| {
                let mut coords = vec![0i64; g_mid.summands()];
                coords[j] = 1;
                if beta_tilde_cols[j].iter().all(|&c| c == 0) {
                    Some(coords)
                } else {
                    None
                }
            });
            let _ = zero;
            combos.map(|c| self.class_from_coords(&g_mid, &c))
        };

        let m = 1i64 << n;
        let value = |x: &CohomologyClass, y: &CohomologyClass| -> Result<i64> {
            let beta_y = self.connecting(SesSpec::BetaMod { n }, y)?;
            let prod = self.cup(&x.rep, &beta_y.rep)?;
            self.integrate_cochain(&cert, prod)
        };
        let k = xs.len();
        let mut gram = vec![vec![Dyadic::new(0, 0); k]; k];
        for i in 0..k {
            for j in 0..k {
                let v = value(&xs[i], &xs[j])?;
                gram[i][j] = Dyadic::new(v, n);
                if let Some(shift) = &kernel_shift {
                    let xi = self.add_classes(&xs[i], shift);
                    let xj = self.add_classes(&xs[j], shift);
                    let v2 = value(&xi, &xj)?;
                    debug_assert_eq!(
                        Dyadic::new(v2, n),
                        gram[i][j],
                        "linking form depends on the preimage choice"
                    );
                    if Dyadic::new(v2, n) != gram[i][j] {
                        return Err(Error::InvalidParams(
                            "linking form value depends on preimage choice".into(),
                        ));
                    }
                }
                let _ = m;
            }
        }
        let skew = (0..k).all(|i| (0..k).all(|j| gram[i][j].add(&gram[j][i]).is_zero()));
        let alternating = skew && (0..k).all(|i| gram[i][i].is_zero());

        // perfectness on each torsion block when the level covers the
        // full 2-primary torsion
        let orders: Vec<u64> = torsion.iter().map(|&(_, s)| 1u64 << s).collect();
        let full_level = self
            .cohomology(Ring::Z, md + 1)
            .torsion_orders
            .iter()
            .all(|o| (o.trailing_zeros()) <= n);
        let nondegenerate = if full_level {
            let rows: Vec<Vec<i64>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let d = gram[i][j];
                            let o = orders[j];
                            // coordinate of alpha(u_i) on psi_j
                            let s = o.trailing_zeros();
                            if d.num == 0 {
                                0
                            } else {
                                debug_assert!(d.log_den <= s);
                                ((d.num as i64) << (s - d.log_den)).rem_euclid(o as i64)
                            }
                        })
                        .collect()
                })
                .collect();
            Some((0..k).all(|j| {
                let mut e = vec![0i64; k];
                e[j] = 1;
                abelian::member(&orders, &rows, &e)
            }))
        } else {
            None
        };

        Ok(PairingMatrix {
            n,
            degree: md + 1,
            gram: Gram::Linking(gram),
            basis_orders: orders,
            skew_symmetric: skew,
            alternating,
            nondegenerate,
        })
    }

    /// The Wu classes: `v_i` is the unique degree-i class with
    /// `integral(v_i cup x) = integral(Sq^i x)` for all `x` in complementary
    /// degree.
    pub fn wu_classes(&self) -> Result<WuClassVector> {
        let dim = self.dimension();
        let cert = self.duality_certificate(Ring::Mod(2))?;
        let mut components = Vec::with_capacity(dim + 1);
        for i in 0..=dim {
            let gi = self.cohomology(Ring::Mod(2), i);
            let gx = self.cohomology(Ring::Mod(2), dim - i);
            let mut rhs = Vec::with_capacity(gx.summands());
            let mut rows: Vec<Vec<i64>> = Vec::with_capacity(gx.summands());
            for j in 0..gx.summands() {
                let mut coords = vec![0i64; gx.summands()];
                coords[j] = 1;
                let x = self.class_from_coords(&gx, &coords);
                let sqx = self.sq(i as i64, &x)?;
                rhs.push(self.integrate(&sqx, &cert)? );
                let mut row = Vec::with_capacity(gi.summands());
                for gt in gi.generators.iter() {
                    let prod = self.cup(gt, &x.rep)?;
                    row.push(self.integrate_cochain(&cert, prod)?);
                }
                rows.push(row);
            }
            // solve rows * c = rhs over GF(2)
            let mut mat = crate::snf::IntMatrix::zero(gx.summands(), gi.summands());
            for (r, row) in rows.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    if v % 2 != 0 {
                        mat.set(r, c, num_bigint::BigInt::from(1));
                    }
                }
            }
            let b: Vec<num_bigint::BigInt> =
                rhs.iter().map(|&v| num_bigint::BigInt::from(v)).collect();
            let sol = crate::snf::solve_mod(&mat, &b, Ring::Mod(2))?
                .ok_or_else(|| Error::InvalidParams("Wu system unsolvable".into()))?;
            let coords: Vec<i64> = sol
                .iter()
                .map(|v| num_traits::ToPrimitive::to_i64(v).unwrap())
                .collect();
            components.push(self.class_from_coords(&gi, &coords));
        }
        Ok(WuClassVector { components })
    }

    /// Total Stiefel-Whitney class from Wu's theorem `w = Sq v`, graded by
    /// degree.
    pub fn sw_from_wu(&self) -> Result<Vec<CohomologyClass>> {
        let dim = self.dimension();
        let v = self.wu_classes()?;
        let mut w = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let mut acc = self.zero_class(Ring::Mod(2), k);
            for i in 0..=k {
                let term = self.sq((k - i) as i64, &v.components[i])?;
                acc = self.add_classes(&acc, &term);
            }
            w.push(acc);
        }
        Ok(w)
    }

    /// The obstruction to lifting the middle Wu class: its integral
    /// Bockstein, the finite-level obstruction, and the verdict.
    pub fn wu_lift_obstruction(&self, n: u32) -> Result<WuLiftObstruction> {
        let dim = self.dimension();
        if dim % 2 == 0 {
            return Err(Error::Parity { dim });
        }
        let md = dim / 2;
        let v = self.wu_classes()?;
        let v_mid = &v.components[md];
        let beta_tilde_v = self.connecting(SesSpec::BetaTilde { n: 1 }, v_mid)?;
        let beta_2n_v = self.connecting(SesSpec::LiftObstruction { n }, v_mid)?;
        let lifts = beta_tilde_v.is_zero();
        Ok(WuLiftObstruction {
            beta_tilde_v,
            beta_2n_v,
            lifts,
        })
    }

    /// The alternation criterion for dimensions 1 mod 4: the auxiliary
    /// pairing is alternating at every level exactly when the middle Wu
    /// class lifts to integral cohomology. An inconsistent record signals an
    /// implementation bug.
    pub fn theorem73_verdict(&self, n_max: u32) -> Result<Theorem73Report> {
        let dim = self.dimension();
        if dim % 4 != 1 {
            return Err(Error::Parity { dim });
        }
        let mut levels = Vec::new();
        for n in 1..=n_max {
            let aux = self.aux_pairing(n)?;
            levels.push(LevelVerdict {
                n,
                skew_symmetric: aux.skew_symmetric,
                alternating: aux.alternating,
            });
        }
        let obstruction = self.wu_lift_obstruction(n_max)?;
        let all_alternating = levels.iter().all(|l| l.alternating);
        let consistent = all_alternating == obstruction.lifts;
        Ok(Theorem73Report {
            dimension: dim,
            levels,
            lifts: obstruction.lifts,
            consistent,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn space(k: SimplicialComplex) -> Space {
        Space::new(k)
    }

    #[test]
    fn spheres_have_certificates() {
        for n in [2usize, 3, 5] {
            let s = space(SimplicialComplex::sphere(n));
            for ring in [Ring::Z, Ring::Mod(2), Ring::Mod(4), Ring::Mod(8)] {
                let cert = s.duality_certificate(ring);
                assert!(cert.is_ok(), "S{n} over {ring}");
            }
        }
    }

    #[test]
    fn rp2_is_not_pd_over_z4_or_z() {
        let s = space(SimplicialComplex::rp_space(2).unwrap());
        assert!(s.duality_certificate(Ring::Mod(2)).is_ok());
        assert!(matches!(
            s.duality_certificate(Ring::Mod(4)),
            Err(Error::NotPoincareDuality { .. })
        ));
        assert!(matches!(
            s.duality_certificate(Ring::Z),
            Err(Error::NotPoincareDuality { .. })
        ));
    }

    #[test]
    fn orientable_fixtures_have_integral_certificates() {
        for k in [
            SimplicialComplex::rp_space(3).unwrap(),
            SimplicialComplex::lens_space(4, 1).unwrap(),
        ] {
            let s = space(k);
            for ring in [Ring::Z, Ring::Mod(2), Ring::Mod(4)] {
                assert!(s.duality_certificate(ring).is_ok(), "{ring}");
            }
        }
    }

    #[test]
    fn integrate_is_linear_and_normalized() {
        let s = space(SimplicialComplex::sphere(3));
        let cert = s.duality_certificate(Ring::Mod(4)).unwrap();
        assert_eq!(s.integrate(&cert.fundamental, &cert).unwrap(), 1);
        let twice = {
            let g = s.cohomology(Ring::Mod(4), 3);
            s.class_from_coords(&g, &[2])
        };
        assert_eq!(s.integrate(&twice, &cert).unwrap(), 2);
        let zero = s.zero_class(Ring::Mod(4), 3);
        assert_eq!(s.integrate(&zero, &cert).unwrap(), 0);
        // degree mismatch
        let wrong = s.zero_class(Ring::Mod(4), 2);
        assert!(s.integrate(&wrong, &cert).is_err());
    }

    #[test]
    fn aux_pairing_shapes() {
        // S^5: middle cohomology is zero, the matrix is empty
        let s5 = space(SimplicialComplex::sphere(5));
        let p = s5.aux_pairing(1).unwrap();
        match &p.gram {
            Gram::Aux(g) => assert!(g.is_empty()),
            _ => panic!("aux expected"),
        }
        assert!(p.alternating);
        // even dimension: parity error
        let s2 = space(SimplicialComplex::sphere(2));
        assert!(matches!(s2.aux_pairing(1), Err(Error::Parity { .. })));
    }

    #[test]
    fn lens_4_1_linking_form_is_quarter() {
        // the classical linking form of L(4,1): the generator pairs with
        // itself to an element of exact order 4 in Q/Z; symmetric (dim 3),
        // nondegenerate, not alternating
        let s = space(SimplicialComplex::lens_space(4, 1).unwrap());
        let p = s.linking_form(2).unwrap();
        let Gram::Linking(g) = &p.gram else {
            panic!()
        };
        assert_eq!(g.len(), 1);
        assert_eq!(g[0][0].log_den, 2, "self-linking has exact order 4");
        assert_eq!(g[0][0].num % 2, 1);
        assert!(p.skew_symmetric == false || g[0][0].is_zero());
        assert_eq!(p.nondegenerate, Some(true));
        assert!(!p.alternating);
    }

    #[test]
    fn rp3_linking_form_is_half() {
        let s = space(SimplicialComplex::rp_space(3).unwrap());
        let p = s.linking_form(1).unwrap();
        let Gram::Linking(g) = &p.gram else {
            panic!()
        };
        assert_eq!(g.len(), 1);
        assert_eq!((g[0][0].num, g[0][0].log_den), (1, 1), "lk = 1/2");
        assert_eq!(p.nondegenerate, Some(true));
    }

    #[test]
    fn wu_classes_of_spheres_are_trivial() {
        for n in [2usize, 3] {
            let s = space(SimplicialComplex::sphere(n));
            let v = s.wu_classes().unwrap();
            let unit = s.unit_class(Ring::Mod(2));
            assert_eq!(v.components[0].coords, unit.coords);
            for i in 1..=n {
                assert!(v.components[i].is_zero(), "v_{i} on S{n}");
            }
            let w = s.sw_from_wu().unwrap();
            for i in 1..=n {
                assert!(w[i].is_zero());
            }
        }
    }

    #[test]
    fn wu_and_sw_of_rp2() {
        // v = 1 + a, w = 1 + a + a^2
        let s = space(SimplicialComplex::rp_space(2).unwrap());
        let v = s.wu_classes().unwrap();
        assert_eq!(v.components[0].coords, vec![1]);
        assert_eq!(v.components[1].coords, vec![1]);
        assert_eq!(v.components[2].coords, vec![0]);
        let w = s.sw_from_wu().unwrap();
        assert_eq!(w[1].coords, vec![1]);
        assert_eq!(w[2].coords, vec![1]);
    }

    #[test]
    fn wu_of_rp3_is_trivial_and_w1_vanishes() {
        let s = space(SimplicialComplex::rp_space(3).unwrap());
        let v = s.wu_classes().unwrap();
        for i in 1..=3 {
            assert!(v.components[i].is_zero(), "v_{i}");
        }
        let w = s.sw_from_wu().unwrap();
        assert!(w[1].is_zero(), "orientable: w_1 = 0");
    }

    #[test]
    fn wu_consistency_example() {
        // v1 = w1 and v2 = w2 + w1^2 for the mod-2 PD fixtures
        for k in [
            SimplicialComplex::rp_space(2).unwrap(),
            SimplicialComplex::rp_space(3).unwrap(),
            SimplicialComplex::lens_space(4, 1).unwrap(),
        ] {
            let s = space(k);
            let v = s.wu_classes().unwrap();
            let w = s.sw_from_wu().unwrap();
            assert_eq!(v.components[1].coords, w[1].coords, "v1 = w1");
            let w1sq = {
                let rep = s.cup(&w[1].rep, &w[1].rep).unwrap();
                s.class_of(Ring::Mod(2), 2, rep).unwrap()
            };
            let rhs = s.add_classes(&w[2], &w1sq);
            assert_eq!(v.components[2].coords, rhs.coords, "v2 = w2 + w1^2");
        }
    }

    #[test]
    fn sphere5_verdict_consistent() {
        let s = space(SimplicialComplex::sphere(5));
        let r = s.theorem73_verdict(2).unwrap();
        assert!(r.lifts);
        assert!(r.levels.iter().all(|l| l.alternating));
        assert!(r.consistent);
    }

    #[test]
    fn verdict_requires_dim_1_mod_4() {
        let s = space(SimplicialComplex::rp_space(3).unwrap());
        assert!(matches!(s.theorem73_verdict(1), Err(Error::Parity { .. })));
    }
}
