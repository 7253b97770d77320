//! The 2^n-adic Bockstein spectral sequence of a complex, computed from the
//! exact couple of the multiplication-by-2^n sequence on integral cochains.
//!
//! Pages are presented subquotients of `H^*(K; Z/2^n)`. Every surviving
//! element carries an integral cochain witness `a` with `da` divisible by
//! `2^(nr)`; the page-r differential sends its class to `[da / 2^(nr)]`
//! reduced mod `2^n`. Witnesses are improved page by page, which is exactly
//! the iterated exact-couple construction.

use crate::abelian::{self, Subquotient};
use crate::cochain::Cochain;
use crate::cohomology::Space;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// One page of the Bockstein spectral sequence.
pub struct BssPage {
    pub n: u32,
    pub r: u32,
    pub degrees: Vec<BssDegree>,
}

/// The degree-k graded piece of a page.
pub struct BssDegree {
    /// cyclic summand orders of `E_r^k`
    pub orders: Vec<u64>,
    /// columns: images of the generators under `d_r`, in the coordinates of
    /// `E_r^(k+1)`
    pub differential: Vec<Vec<i64>>,
}

impl BssPage {
    /// Order of the graded piece in one degree.
    pub fn order(&self, k: usize) -> u64 {
        self.degrees
            .get(k)
            .map_or(1, |d| d.orders.iter().product())
    }

    /// Is `d_r` nonzero out of degree `k`?
    pub fn differential_nonzero(&self, k: usize) -> bool {
        self.degrees.get(k).is_some_and(|d| {
            d.differential
                .iter()
                .any(|col| col.iter().any(|&c| c != 0))
        })
    }
}

struct ZGen {
    coords: Vec<i64>,
    /// integral cochain lifting a representative, with `d` divisible by
    /// `2^(n r)` on page r
    witness: Cochain,
}

struct BGen {
    coords: Vec<i64>,
    /// an integral *cocycle* representing the class (the divided boundary of
    /// the source witness)
    cocycle: Cochain,
    /// degree-k source witness, and the page at which the class was hit
    source: Cochain,
    page: u32,
}

struct State {
    n: u32,
    r: u32,
    z: Vec<Vec<ZGen>>,
    b: Vec<Vec<BGen>>,
}

impl Space {
    /// The page-r Bockstein spectral sequence data at level `2^n`.
    pub fn bss_page(&self, n: u32, r: u32) -> Result<BssPage> {
        if r < 1 {
            return Err(Error::InvalidParams("page index starts at 1".into()));
        }
        let mut state = self.bss_init(n)?;
        for _ in 1..r {
            state = self.bss_advance(state)?;
        }
        self.bss_render(&state)
    }

    fn bss_init(&self, n: u32) -> Result<State> {
        let ring = Ring::mod2n(n);
        let dim = self.dimension();
        let mut z = Vec::with_capacity(dim + 2);
        for k in 0..=dim + 1 {
            let g = self.cohomology(ring, k);
            let mut gens = Vec::new();
            for i in 0..g.summands() {
                let mut coords = vec![0i64; g.summands()];
                coords[i] = 1;
                let x = self.class_from_coords(&g, &coords);
                let witness = self.integral_rep(&x);
                gens.push(ZGen { coords, witness });
            }
            z.push(gens);
        }
        let b = (0..=dim + 1).map(|_| Vec::new()).collect();
        Ok(State { n, r: 1, z, b })
    }

    fn bss_subquotients(&self, state: &State) -> Vec<Subquotient> {
        let ring = Ring::mod2n(state.n);
        (0..state.z.len())
            .map(|k| {
                let g = self.cohomology(ring, k);
                let zc: Vec<Vec<i64>> = state.z[k].iter().map(|g| g.coords.clone()).collect();
                let bc: Vec<Vec<i64>> = state.b[k].iter().map(|g| g.coords.clone()).collect();
                Subquotient::new(&g.orders(), &zc, &bc)
            })
            .collect()
    }

    /// The divided coboundary of a witness: `d w / 2^(n r)` as an integral
    /// cochain.
    fn divided_coboundary(&self, w: &Cochain, n: u32, r: u32) -> Cochain {
        let dw = self.coboundary(w);
        let div = 1i64 << (n * r).min(62);
        Cochain {
            degree: w.degree + 1,
            ring: Ring::Z,
            values: dw
                .values
                .iter()
                .map(|&v| {
                    debug_assert_eq!(v % div, 0, "witness divisibility violated");
                    v / div
                })
                .collect(),
        }
    }

    fn witness_combo(&self, gens: &[ZGen], combo: &[i64]) -> Cochain {
        let degree = gens
            .first()
            .map(|g| g.witness.degree)
            .unwrap_or(0);
        let len = self.basis(degree).len();
        let mut w = Cochain::zero(degree, Ring::Z, len);
        for (c, g) in combo.iter().zip(gens) {
            if *c != 0 {
                w = w.add(&g.witness.scale(*c));
            }
        }
        w
    }

    fn bss_render(&self, state: &State) -> Result<BssPage> {
        let ring = Ring::mod2n(state.n);
        let sq = self.bss_subquotients(state);
        let mut degrees = Vec::new();
        for k in 0..sq.len() {
            let orders = sq[k].orders.clone();
            let mut differential = Vec::new();
            for combo in sq[k].gens_as_z.iter() {
                let w = self.witness_combo(&state.z[k], combo);
                let c = self.divided_coboundary(&w, state.n, state.r);
                let c_mod = c.map_ring(ring, 1);
                let cls = self.class_of(ring, k + 1, c_mod)?;
                let target = if k + 1 < sq.len() {
                    sq[k + 1]
                        .express(&cls.coords)
                        .expect("differential lands in the surviving subgroup")
                } else {
                    Vec::new()
                };
                differential.push(target);
            }
            degrees.push(BssDegree {
                orders,
                differential,
            });
        }
        Ok(BssPage {
            n: state.n,
            r: state.r,
            degrees,
        })
    }

    fn bss_advance(&self, state: State) -> Result<State> {
        let ring = Ring::mod2n(state.n);
        let n = state.n;
        let r = state.r;
        let sq = self.bss_subquotients(&state);
        let dim_len = state.z.len();

        // differentials of the page, as raw G-coordinate classes
        let mut d_classes: Vec<Vec<(Vec<i64>, Cochain)>> = Vec::with_capacity(dim_len);
        for k in 0..dim_len {
            let mut out = Vec::new();
            for combo in sq[k].gens_as_z.iter() {
                let w = self.witness_combo(&state.z[k], combo);
                let c = self.divided_coboundary(&w, n, r);
                let cls = self.class_of(ring, k + 1, c.map_ring(ring, 1))?;
                out.push((cls.coords, c));
            }
            d_classes.push(out);
        }

        let mut new_z: Vec<Vec<ZGen>> = Vec::with_capacity(dim_len);
        let mut new_b: Vec<Vec<BGen>> = Vec::with_capacity(dim_len);
        for k in 0..dim_len {
            // next B: old B plus the images of d_r from one degree down
            let mut b_gens: Vec<BGen> = state.b[k]
                .iter()
                .map(|g| BGen {
                    coords: g.coords.clone(),
                    cocycle: g.cocycle.clone(),
                    source: g.source.clone(),
                    page: g.page,
                })
                .collect();
            if k > 0 {
                for (combo, (coords, cocycle)) in
                    sq[k - 1].gens_as_z.iter().zip(&d_classes[k - 1])
                {
                    let source = self.witness_combo(&state.z[k - 1], combo);
                    b_gens.push(BGen {
                        coords: coords.clone(),
                        cocycle: cocycle.clone(),
                        source,
                        page: r,
                    });
                }
            }

            // kernel of d_r on E_r^k
            let e_orders = &sq[k].orders;
            let target_orders: Vec<u64> = if k + 1 < dim_len {
                sq[k + 1].orders.clone()
            } else {
                Vec::new()
            };
            let d_matrix: Vec<Vec<i64>> = d_classes[k]
                .iter()
                .map(|(coords, _)| {
                    if k + 1 < dim_len {
                        sq[k + 1]
                            .express(coords)
                            .expect("differential lands in the surviving subgroup")
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            let kernel_combos =
                kernel_of_graded_map(e_orders, &target_orders, &d_matrix);

            let g = self.cohomology(ring, k);
            let mut z_gens: Vec<ZGen> = Vec::new();
            for combo_e in kernel_combos {
                // expand: combo over E-gens -> combo over old Z-gens
                let mut combo_z = vec![0i64; state.z[k].len()];
                for (ce, eg) in combo_e.iter().zip(sq[k].gens_as_z.iter()) {
                    for (cz, &v) in combo_z.iter_mut().zip(eg) {
                        *cz += ce * v;
                    }
                }
                let coords: Vec<i64> = {
                    let mut acc = vec![0i64; g.summands()];
                    for (c, zg) in combo_z.iter().zip(&state.z[k]) {
                        for (a, &v) in acc.iter_mut().zip(&zg.coords) {
                            *a += c * v;
                        }
                    }
                    g.normalize_coords(&acc)
                };
                let w = self.witness_combo(&state.z[k], &combo_z);
                let improved =
                    self.improve_witness(w, &state.b[(k + 1).min(dim_len - 1)], n, r, k, dim_len)?;
                z_gens.push(ZGen {
                    coords,
                    witness: improved,
                });
            }
            // B-elements survive with their cocycle witnesses
            for bg in &state.b[k] {
                z_gens.push(ZGen {
                    coords: bg.coords.clone(),
                    witness: bg.cocycle.clone(),
                });
            }
            new_z.push(z_gens);
            new_b.push(b_gens);
        }

        Ok(State {
            n,
            r: r + 1,
            z: new_z,
            b: new_b,
        })
    }

    /// Push the divisibility of `d(witness)` one level: given page-r
    /// divisibility and a vanishing page-r differential, produce a witness
    /// divisible at page r+1.
    fn improve_witness(
        &self,
        w: Cochain,
        b_next: &[BGen],
        n: u32,
        r: u32,
        k: usize,
        dim_len: usize,
    ) -> Result<Cochain> {
        let ring = Ring::mod2n(n);
        let m = 1i64 << n;
        let c = self.divided_coboundary(&w, n, r);
        if k + 1 >= dim_len || c.values.iter().all(|&v| v == 0) {
            return Ok(w);
        }
        let cls = self.class_of(ring, k + 1, c.map_ring(ring, 1))?;
        let g_next = self.cohomology(ring, k + 1);
        // write the obstruction class over the already-hit classes
        let b_coords: Vec<Vec<i64>> = b_next.iter().map(|b| b.coords.clone()).collect();
        let coeffs = abelian::solve_in(&g_next.orders(), &b_coords, &cls.coords)
            .expect("page obstruction lies in the boundary subgroup");
        // c - sum coeff_l c_l is a coboundary mod 2^n
        let mut residual = c.clone();
        for (coef, bg) in coeffs.iter().zip(b_next) {
            if *coef != 0 {
                residual = residual.sub(&bg.cocycle.scale(*coef));
            }
        }
        let residual_mod = residual.map_ring(ring, 1);
        let h_mod = self
            .solve_coboundary(&residual_mod)
            .expect("residual obstruction must be a coboundary");
        let h = Cochain {
            degree: h_mod.degree,
            ring: Ring::Z,
            values: h_mod.values.iter().map(|&v| v.rem_euclid(m)).collect(),
        };
        // w' = w - 2^(nr) h - sum coeff_l 2^(n (r - j_l)) src_l
        let mut improved = w.sub(&h.scale(1i64 << (n * r)));
        for (coef, bg) in coeffs.iter().zip(b_next) {
            if *coef != 0 {
                debug_assert!(bg.page <= r);
                let shift = 1i64 << (n * (r - bg.page));
                improved = improved.sub(&bg.source.scale(coef * shift));
            }
        }
        // divisibility check for the next page
        let dd = self.coboundary(&improved);
        let div = 1i64 << (n * (r + 1));
        debug_assert!(
            dd.values.iter().all(|&v| v % div == 0),
            "witness improvement failed"
        );
        Ok(improved)
    }
}

/// Kernel of a graded-group map given by columns over generator coordinate
/// systems with cyclic orders; returns combo vectors over the source
/// generators.
fn kernel_of_graded_map(
    source_orders: &[u64],
    target_orders: &[u64],
    columns: &[Vec<i64>],
) -> Vec<Vec<i64>> {
    use num_bigint::BigInt;
    let s = source_orders.len();
    let t = target_orders.len();
    debug_assert_eq!(columns.len(), s);
    // solve D t = 0 mod target orders: kernel of [D | diag(o')] over Z,
    // projected to the first block; then append source order relations
    let mut m = crate::snf::IntMatrix::zero(t, s + t);
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            if v != 0 {
                m.set(i, j, BigInt::from(v));
            }
        }
    }
    for (i, &o) in target_orders.iter().enumerate() {
        m.set(i, s + i, BigInt::from(o));
    }
    let snf = crate::snf::smith_normal_form(&m);
    let rank = snf.rank();
    let mut out = Vec::new();
    for i in rank..(s + t) {
        let col = snf.v_inv.column(i);
        let combo: Vec<i64> = col
            .iter()
            .take(s)
            .map(|v| num_traits::ToPrimitive::to_i64(v).expect("combo fits i64"))
            .collect();
        if combo.iter().any(|&c| c != 0) {
            out.push(combo);
        }
    }
    // order relations also lie in the kernel
    for (i, &o) in source_orders.iter().enumerate() {
        let mut combo = vec![0i64; s];
        combo[i] = o as i64;
        out.push(combo);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    #[test]
    fn torsion_free_fixtures_have_no_differentials() {
        for k in [SimplicialComplex::sphere(2), {
            let s1 = SimplicialComplex::sphere(1);
            SimplicialComplex::product(&s1, &s1)
        }] {
            let s = Space::new(k);
            for r in 1..=3 {
                let page = s.bss_page(1, r).unwrap();
                for deg in 0..=s.dimension() {
                    assert!(!page.differential_nonzero(deg), "page {r} degree {deg}");
                }
                // E_r = E_1 throughout
                let first = s.bss_page(1, 1).unwrap();
                for deg in 0..=s.dimension() {
                    assert_eq!(page.order(deg), first.order(deg));
                }
            }
        }
    }

    #[test]
    fn lens_8_degree_2_dies_at_page_3() {
        let s = Space::new(SimplicialComplex::lens_space(8, 1).unwrap());
        // torsion order confirmed independently by integer SNF cohomology
        assert_eq!(s.cohomology(Ring::Z, 2).torsion_orders, vec![8]);
        for r in 1..=4u32 {
            let page = s.bss_page(1, r).unwrap();
            let o2 = page.order(2);
            let d_into = page.differential_nonzero(1);
            match r {
                1 | 2 => {
                    assert_eq!(o2, 2, "page {r}");
                    assert!(!d_into, "no differential into degree 2 before page 3");
                }
                3 => {
                    assert_eq!(o2, 2);
                    assert!(d_into, "page 3 differential kills the class");
                }
                _ => {
                    assert_eq!(o2, 1, "class is dead on page 4");
                }
            }
        }
    }

    #[test]
    fn lens_4_degree_2_dies_at_page_2() {
        let s = Space::new(SimplicialComplex::lens_space(4, 1).unwrap());
        assert_eq!(s.cohomology(Ring::Z, 2).torsion_orders, vec![4]);
        let p1 = s.bss_page(1, 1).unwrap();
        assert!(!p1.differential_nonzero(1), "d_1 zero in degree 1 -> 2");
        let p2 = s.bss_page(1, 2).unwrap();
        assert!(p2.differential_nonzero(1), "d_2 nonzero into degree 2");
        assert_eq!(s.bss_page(1, 3).unwrap().order(2), 1);
    }

    #[test]
    fn rp3_mod_2_dies_at_page_1() {
        let s = Space::new(SimplicialComplex::lens_space(2, 1).unwrap());
        let p1 = s.bss_page(1, 1).unwrap();
        assert_eq!(p1.order(2), 2);
        assert!(p1.differential_nonzero(1));
        let p2 = s.bss_page(1, 2).unwrap();
        assert_eq!(p2.order(2), 1);
        assert_eq!(p2.order(1), 1);
    }

    #[test]
    fn d_squared_is_zero_and_ranks_match() {
        let s = Space::new(SimplicialComplex::lens_space(4, 1).unwrap());
        for n in [1u32, 2] {
            for r in 1..=3u32 {
                let page = s.bss_page(n, r).unwrap();
                let next = s.bss_page(n, r + 1).unwrap();
                for k in 0..=s.dimension() {
                    // |E_(r+1)^k| = |ker d_r^k| / |im d_r^(k-1)|
                    let e_orders = &page.degrees[k].orders;
                    let t_orders = page
                        .degrees
                        .get(k + 1)
                        .map(|d| d.orders.clone())
                        .unwrap_or_default();
                    let im_gens: Vec<Vec<i64>> = page.degrees[k]
                        .differential
                        .iter()
                        .cloned()
                        .collect();
                    let im_order = if t_orders.is_empty() {
                        1
                    } else {
                        crate::abelian::subgroup_order(&t_orders, &im_gens)
                    };
                    let e_order: u64 = e_orders.iter().product();
                    let ker_order = e_order / im_order;
                    let im_below: u64 = if k == 0 {
                        1
                    } else {
                        let below = &page.degrees[k - 1].differential;
                        if e_orders.is_empty() {
                            1
                        } else {
                            crate::abelian::subgroup_order(e_orders, below)
                        }
                    };
                    assert_eq!(
                        next.order(k),
                        ker_order / im_below,
                        "n={n} r={r} k={k}"
                    );

                    // d_r . d_r = 0: push each generator image through again
                    for col in &page.degrees[k].differential {
                        if t_orders.is_empty() {
                            continue;
                        }
                        // express col in E^{k+1} then apply its differential
                        let mut acc =
                            vec![
                                0i64;
                                page.degrees.get(k + 2).map_or(0, |d| d.orders.len())
                            ];
                        for (c, target_col) in
                            col.iter().zip(&page.degrees[k + 1].differential)
                        {
                            for (a, &v) in acc.iter_mut().zip(target_col) {
                                *a += c * v;
                            }
                        }
                        let orders2 = page
                            .degrees
                            .get(k + 2)
                            .map(|d| d.orders.clone())
                            .unwrap_or_default();
                        for (a, o) in acc.iter().zip(&orders2) {
                            assert_eq!(a.rem_euclid(*o as i64), 0, "d.d != 0");
                        }
                    }
                }
            }
        }
    }
}
