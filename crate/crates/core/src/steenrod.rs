//! Cochain-level cup and cup-i products, classical Steenrod squares,
//! generalized squares mod 2^n, and the higher Bockstein.
//!
//! The cup-i products are built as an equivariant chain map from the minimal
//! free resolution of the symmetric group on two letters into the doubled
//! cochain functor, solved degree by degree against an explicit cone
//! contraction of the standard simplex. The construction is deterministic
//! and natural (it is a table of structure constants per simplex dimension),
//! and it satisfies the coboundary formula
//!
//! ```text
//! d(u ~i v) = (-1)^i du ~i v + (-1)^(i+r) u ~i dv
//!             - (-1)^i u ~(i-1) v - (-1)^(rs) v ~(i-1) u
//! ```
//!
//! on the nose, which is the contract every operation here depends on.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};

use crate::cochain::Cochain;
use crate::cohomology::{CohomologyClass, SesSpec, Space};
use crate::error::{Error, Result};
use crate::ring::Ring;

// ---------------------------------------------------------------------------
// cup-i structure constants
// ---------------------------------------------------------------------------

/// A chain in N(simplex) (x) N(simplex): face-mask pairs with coefficients.
type Chain2 = HashMap<(u32, u32), i64>;

fn dim_of(mask: u32) -> i64 {
    mask.count_ones() as i64 - 1
}

fn add_into(acc: &mut Chain2, key: (u32, u32), c: i64) {
    let e = acc.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&key);
    }
}

/// Boundary of a single face mask: alternating sum over deleting set bits.
fn mask_boundary(mask: u32) -> Vec<(u32, i64)> {
    if mask.count_ones() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut j = 0i64;
    for bit in 0..32 {
        if mask >> bit & 1 == 1 {
            out.push((mask & !(1 << bit), if j % 2 == 0 { 1 } else { -1 }));
            j += 1;
        }
    }
    out
}

fn tensor_boundary(x: &Chain2) -> Chain2 {
    let mut out = Chain2::new();
    for (&(a, b), &c) in x {
        for (fa, s) in mask_boundary(a) {
            add_into(&mut out, (fa, b), c * s);
        }
        let sign = if dim_of(a) % 2 == 0 { 1 } else { -1 };
        for (fb, s) in mask_boundary(b) {
            add_into(&mut out, (a, fb), c * sign * s);
        }
    }
    out
}

/// Swap with the Koszul sign.
fn twist(x: &Chain2) -> Chain2 {
    let mut out = Chain2::new();
    for (&(a, b), &c) in x {
        let sign = if (dim_of(a) * dim_of(b)) % 2 == 0 { 1 } else { -1 };
        add_into(&mut out, (b, a), c * sign);
    }
    out
}

/// Tensor contraction built from the cone contraction onto vertex 0.
fn contraction(x: &Chain2) -> Chain2 {
    let mut out = Chain2::new();
    for (&(a, b), &c) in x {
        if a & 1 == 0 {
            add_into(&mut out, (a | 1, b), c);
        }
        if a.count_ones() == 1 && b & 1 == 0 {
            add_into(&mut out, (1, b | 1), c);
        }
    }
    out
}

/// Push a chain over the (q-1)-simplex forward along the face inclusion
/// that skips vertex `skip` of the q-simplex.
fn push_forward(x: &Chain2, skip: u32) -> Chain2 {
    let reindex = |mask: u32| -> u32 {
        let low = mask & ((1 << skip) - 1);
        let high = (mask >> skip) << (skip + 1);
        low | high
    };
    x.iter()
        .map(|(&(a, b), &c)| ((reindex(a), reindex(b)), c))
        .collect()
}

fn alexander_whitney(q: u32) -> Chain2 {
    let mut out = Chain2::new();
    for r in 0..=q {
        let front = (1u32 << (r + 1)) - 1;
        let back = (((1u64 << (q + 1)) - 1) as u32) & !((1u32 << r) - 1);
        add_into(&mut out, (front, back), 1);
    }
    out
}

/// Structure constants of the cup-i coproduct on the standard q-simplex,
/// grouped by the first factor's vertex count for fast evaluation.
struct CupTable {
    /// by_size[c] holds entries whose first face has c+1 vertices
    by_size: Vec<Vec<(u32, u32, i64)>>,
}

fn build_chain(i: u32, q: u32, memo: &mut HashMap<(u32, u32), Chain2>) -> Chain2 {
    if let Some(c) = memo.get(&(i, q)) {
        return c.clone();
    }
    let result = if i == 0 {
        alexander_whitney(q)
    } else {
        let prev = build_chain(i - 1, q, memo);
        let sign_i = if i % 2 == 0 { 1 } else { -1 };
        let mut r = prev.clone();
        for (&k, &c) in &twist(&prev) {
            add_into(&mut r, k, sign_i * c);
        }
        if q > 0 {
            let lower = build_chain(i, q - 1, memo);
            for j in 0..=q {
                let s = if j % 2 == 0 { 1 } else { -1 };
                for (&k, &c) in &push_forward(&lower, j) {
                    add_into(&mut r, k, sign_i * s * c);
                }
            }
        }
        debug_assert!(
            tensor_boundary(&r).is_empty(),
            "cup-{i} obstruction on the {q}-simplex is not a cycle"
        );
        contraction(&r)
    };
    memo.insert((i, q), result.clone());
    result
}

fn cup_table(i: u32, q: u32) -> Arc<CupTable> {
    static TABLES: OnceLock<Mutex<HashMap<(u32, u32), Arc<CupTable>>>> = OnceLock::new();
    static MEMO: OnceLock<Mutex<HashMap<(u32, u32), Chain2>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().unwrap().get(&(i, q)) {
        return t.clone();
    }
    let chain = {
        let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
        let mut memo = memo.lock().unwrap();
        build_chain(i, q, &mut memo)
    };
    let mut by_size: Vec<Vec<(u32, u32, i64)>> = vec![Vec::new(); q as usize + 2];
    for (&(a, b), &c) in &chain {
        by_size[a.count_ones() as usize - 1].push((a, b, c));
    }
    for bucket in &mut by_size {
        bucket.sort_unstable();
    }
    let table = Arc::new(CupTable { by_size });
    tables.lock().unwrap().insert((i, q), table.clone());
    table
}

/// Structure constants whose first face has `r + 1` vertices, for callers
/// that evaluate on a subset of simplices.
pub(crate) fn cup_table_entries(i: u32, q: u32, r: usize) -> Vec<(u32, u32, i64)> {
    let table = cup_table(i, q);
    table
        .by_size
        .get(r)
        .map(|b| b.clone())
        .unwrap_or_default()
}

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

impl Space {
    fn check_pair(&self, u: &Cochain, v: &Cochain) -> Result<Ring> {
        if u.ring != v.ring {
            return Err(Error::RingMismatch {
                expected: u.ring,
                got: v.ring,
            });
        }
        if u.values.len() != self.basis(u.degree).len()
            || v.values.len() != self.basis(v.degree).len()
        {
            return Err(Error::Dimension("cochain does not match complex".into()));
        }
        Ok(u.ring)
    }

    /// Cup product at the cochain level (front face / back face).
    pub fn cup(&self, u: &Cochain, v: &Cochain) -> Result<Cochain> {
        self.cup_i(u, v, 0)
    }

    /// Steenrod's cup-i product at the cochain level. `cup_0` is the cup
    /// product; negative `i` or a negative target degree gives zero.
    pub fn cup_i(&self, u: &Cochain, v: &Cochain, i: i64) -> Result<Cochain> {
        let ring = self.check_pair(u, v)?;
        let (r, s) = (u.degree as i64, v.degree as i64);
        if i < 0 || r + s - i < 0 {
            let deg = (r + s - i).max(0) as usize;
            return Ok(self.zero_cochain(ring, deg));
        }
        let q = (r + s - i) as usize;
        if q > self.dimension() {
            return Ok(self.zero_cochain(ring, q));
        }
        let table = cup_table(i as u32, q as u32);
        let bucket = table
            .by_size
            .get(r as usize)
            .map(|b| b.as_slice())
            .unwrap_or(&[]);
        let mut out = vec![0i64; self.basis(q).len()];
        let mut face = Vec::with_capacity(q + 1);
        for (idx, sigma) in self.basis(q).iter().enumerate() {
            let verts = sigma.vertices();
            let mut acc = 0i64;
            for &(a, b, c) in bucket {
                face.clear();
                for (pos, &vtx) in verts.iter().enumerate() {
                    if a >> pos & 1 == 1 {
                        face.push(vtx);
                    }
                }
                let ui = self.simplex_index(r as usize, &face).expect("face in basis");
                let uval = u.values[ui as usize];
                if ring.is_zero(uval) {
                    continue;
                }
                face.clear();
                for (pos, &vtx) in verts.iter().enumerate() {
                    if b >> pos & 1 == 1 {
                        face.push(vtx);
                    }
                }
                let vi = self.simplex_index(s as usize, &face).expect("face in basis");
                acc += c * uval * v.values[vi as usize];
            }
            out[idx] = ring.normalize(acc);
        }
        Ok(Cochain {
            degree: q,
            ring,
            values: out,
        })
    }

    /// The defect of the cup-i coboundary formula; identically zero for a
    /// correct implementation. Exposed so verification suites can assert it
    /// on arbitrary cochains.
    pub fn cup_i_coboundary_defect(&self, u: &Cochain, v: &Cochain, i: i64) -> Result<Cochain> {
        let ring = self.check_pair(u, v)?;
        let (r, s) = (u.degree as i64, v.degree as i64);
        let target = r + s - i + 1;
        if target < 0 {
            return Ok(self.zero_cochain(ring, 0));
        }
        let target = target as usize;
        // degree-correct term builder: the clamped zero cochains from out of
        // range cup-i calls are re-shaped to the common target degree
        let shape = |c: Cochain| -> Cochain {
            if c.degree == target && c.values.len() == self.basis(target).len() {
                c
            } else {
                debug_assert!(c.is_zero());
                self.zero_cochain(ring, target)
            }
        };
        let lhs = shape(self.coboundary(&self.cup_i(u, v, i)?));
        let du = self.coboundary(u);
        let dv = self.coboundary(v);
        let sign = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut rhs = shape(self.cup_i(&du, v, i)?).scale(sign(i));
        rhs = rhs.add(&shape(self.cup_i(u, &dv, i)?).scale(sign(i + r)));
        rhs = rhs.add(&shape(self.cup_i(u, v, i - 1)?).scale(-sign(i)));
        rhs = rhs.add(&shape(self.cup_i(v, u, i - 1)?).scale(-sign(r * s)));
        Ok(lhs.sub(&rhs))
    }

    /// Classical Steenrod square on mod-2 cohomology.
    pub fn sq(&self, i: i64, x: &CohomologyClass) -> Result<CohomologyClass> {
        if x.ring != Ring::Mod(2) {
            return Err(Error::RingMismatch {
                expected: Ring::Mod(2),
                got: x.ring,
            });
        }
        let r = x.degree as i64;
        let target = r + i;
        if i < 0 || target < 0 {
            return Ok(self.zero_class(Ring::Mod(2), x.degree));
        }
        let w = self.cup_i(&x.rep, &x.rep, r - i)?;
        self.class_of(Ring::Mod(2), target as usize, w)
    }

    /// Total Steenrod square `Sq = sum_i Sq^i`, returned per degree.
    pub fn sq_total(&self, x: &CohomologyClass) -> Result<Vec<CohomologyClass>> {
        (0..=(self.dimension() as i64))
            .map(|d| {
                if d < x.degree as i64 {
                    Ok(self.zero_class(Ring::Mod(2), d as usize))
                } else {
                    self.sq(d - x.degree as i64, x)
                }
            })
            .collect()
    }

    /// Generalized Steenrod square on mod-2^n cohomology: for even `i` the
    /// class of `2^(n-1) (u ~(r-i) u)`, for odd `i` the class of
    /// `u ~(r-i) u`.
    pub fn gen_sq(&self, i: i64, x: &CohomologyClass) -> Result<CohomologyClass> {
        let m = x.ring.modulus().ok_or(Error::RingMismatch {
            expected: Ring::Mod(2),
            got: x.ring,
        })?;
        if !m.is_power_of_two() || m < 2 {
            return Err(Error::InvalidParams(format!(
                "generalized squares need a 2-power modulus, got {m}"
            )));
        }
        let n = m.trailing_zeros();
        let r = x.degree as i64;
        let target = r + i;
        if target < 0 {
            return Ok(self.zero_class(x.ring, 0));
        }
        let raw = self.cup_i(&x.rep, &x.rep, r - i)?;
        let w = if i % 2 == 0 {
            raw.scale(1i64 << (n - 1))
        } else {
            raw
        };
        self.class_of(x.ring, target as usize, w)
    }

    /// Image of the Bockstein on degree-k cohomology, as coordinate vectors
    /// in degree k+1.
    pub fn bockstein_image(&self, ring: Ring, k: usize) -> Result<Vec<Vec<i64>>> {
        let n = ring
            .modulus()
            .filter(|m| m.is_power_of_two())
            .map(|m| m.trailing_zeros())
            .ok_or(Error::InvalidParams("Bockstein needs ring Z/2^n".into()))?;
        let g = self.cohomology(ring, k);
        let mut out = Vec::new();
        for i in 0..g.summands() {
            let mut coords = vec![0i64; g.summands()];
            coords[i] = 1;
            let x = self.class_from_coords(&g, &coords);
            let bx = self.connecting(SesSpec::BetaMod { n }, &x)?;
            out.push(bx.coords);
        }
        Ok(out)
    }

    /// Higher Bockstein of Definition-4.2 shape: defined on the kernel of
    /// the Bockstein, valued modulo its image.
    ///
    /// The computation runs twice with perturbed lift choices and asserts
    /// that the two cosets agree.
    pub fn beta2(&self, x: &CohomologyClass) -> Result<Beta2Coset> {
        let m = x.ring.modulus().ok_or(Error::RingMismatch {
            expected: Ring::Mod(2),
            got: x.ring,
        })?;
        if !m.is_power_of_two() {
            return Err(Error::InvalidParams("beta2 needs ring Z/2^n".into()));
        }
        let n = m.trailing_zeros();
        let beta_x = self.connecting(SesSpec::BetaMod { n }, x)?;
        if !beta_x.is_zero() {
            return Err(Error::NotInBocksteinKernel);
        }

        let first = self.beta2_witness(x, n, None)?;
        // well-definedness probe: perturb the representative and the lift
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xB2);
        let second = self.beta2_witness(x, n, Some(&mut rng))?;
        let coset = self.beta2_coset(first, n, x.degree)?;
        let coset2 = self.beta2_coset(second, n, x.degree)?;
        debug_assert!(
            self.cosets_equal(&coset, &coset2),
            "beta2 depends on the lift choice"
        );
        if !self.cosets_equal(&coset, &coset2) {
            return Err(Error::InvalidParams(
                "beta2 coset depends on lift choices (implementation bug)".into(),
            ));
        }
        Ok(coset)
    }

    fn beta2_witness(
        &self,
        x: &CohomologyClass,
        n: u32,
        perturb: Option<&mut rand_chacha::ChaCha8Rng>,
    ) -> Result<Cochain> {
        let m = 1i64 << n;
        let mm = 1i64 << (2 * n);
        // representative (optionally shifted by a coboundary) and its
        // canonical integral lift (optionally shifted by 2^n)
        let mut rep = x.rep.clone();
        let mut extra = vec![0i64; rep.values.len()];
        if let Some(rng) = perturb {
            if x.degree > 0 {
                let eta: Vec<i64> = (0..self.basis(x.degree - 1).len())
                    .map(|_| rng.gen_range(0..m))
                    .collect();
                let deta = self.coboundary(&Cochain::from_values(x.degree - 1, x.ring, eta));
                rep = rep.add(&deta);
            }
            for e in extra.iter_mut() {
                *e = rng.gen_range(0..4) * m;
            }
        }
        let mut a = Cochain {
            degree: x.degree,
            ring: Ring::Z,
            values: rep.values.iter().map(|&v| v.rem_euclid(m)).collect(),
        };
        for (av, e) in a.values.iter_mut().zip(&extra) {
            *av += e;
        }
        let da = self.coboundary(&a);
        debug_assert!(da.values.iter().all(|&v| v % m == 0));
        // first obstruction is a coboundary mod 2^n since beta(x) = 0
        let c1 = Cochain::from_values(
            x.degree + 1,
            x.ring,
            da.values.iter().map(|&v| (v / m).rem_euclid(m)).collect(),
        );
        let y = self
            .solve_coboundary(&c1)
            .expect("beta(x) = 0 makes the first obstruction a coboundary");
        let b = Cochain {
            degree: x.degree,
            ring: Ring::Z,
            values: y.values.iter().map(|&v| v.rem_euclid(m)).collect(),
        };
        let db = self.coboundary(&b);
        // (da - 2^n db) / 2^(2n), reduced mod 2^n
        let values: Vec<i64> = da
            .values
            .iter()
            .zip(&db.values)
            .map(|(&u, &w)| {
                let num = u - m * w;
                debug_assert_eq!(num % mm, 0, "beta2 witness not divisible");
                (num / mm).rem_euclid(m)
            })
            .collect();
        Ok(Cochain {
            degree: x.degree + 1,
            ring: x.ring,
            values,
        })
    }

    fn beta2_coset(&self, w: Cochain, n: u32, source_degree: usize) -> Result<Beta2Coset> {
        let ring = Ring::mod2n(n);
        let class = self.class_of(ring, source_degree + 1, w)?;
        let modulo = self.bockstein_image(ring, source_degree)?;
        Ok(Beta2Coset { class, modulo })
    }

    /// Equality of two cosets modulo the Bockstein image.
    pub fn cosets_equal(&self, a: &Beta2Coset, b: &Beta2Coset) -> bool {
        if a.class.degree != b.class.degree || a.class.ring != b.class.ring {
            return false;
        }
        let group = self.cohomology(a.class.ring, a.class.degree);
        let diff: Vec<i64> = a
            .class
            .coords
            .iter()
            .zip(&b.class.coords)
            .map(|(&x, &y)| x - y)
            .collect();
        let diff = group.normalize_coords(&diff);
        crate::abelian::member(&group.orders(), &a.modulo, &diff)
    }

    /// Build the coset of a plain class modulo the Bockstein image out of
    /// degree `source_degree`.
    pub fn coset_of(
        &self,
        class: CohomologyClass,
        source_degree: usize,
    ) -> Result<Beta2Coset> {
        let modulo = self.bockstein_image(class.ring, source_degree)?;
        Ok(Beta2Coset { class, modulo })
    }
}

/// A cohomology class known only up to the image of the Bockstein.
#[derive(Clone, Debug)]
pub struct Beta2Coset {
    pub class: CohomologyClass,
    modulo: Vec<Vec<i64>>,
}

impl Beta2Coset {
    pub fn is_zero(&self, space: &Space) -> bool {
        let group = space.cohomology(self.class.ring, self.class.degree);
        crate::abelian::member(
            &group.orders(),
            &self.modulo,
            &group.normalize_coords(&self.class.coords),
        )
    }
}

// ---------------------------------------------------------------------------
// auxiliary cochain maps used by the axiom checks
// ---------------------------------------------------------------------------

/// Suspension of a cocycle: the degree-(k+1) cochain on the suspension
/// complex supported on the cones, realizing the suspension isomorphism on
/// reduced cohomology.
pub fn suspend_cochain(base: &Space, suspended: &Space, z: &Cochain) -> Cochain {
    let apex_a = base.complex().vertex_count();
    let apex_b = apex_a + 1;
    let k = z.degree;
    let mut out = suspended.zero_cochain(z.ring, k + 1);
    let _ = apex_b;
    let mut stripped = Vec::with_capacity(k + 1);
    for (i, tau) in suspended.basis(k + 1).iter().enumerate() {
        let verts = tau.vertices();
        // support on one cone realizes the connecting isomorphism of the
        // (cone, base) pair; the apexes are never adjacent
        if !verts.contains(&apex_a) {
            continue;
        }
        stripped.clear();
        stripped.extend(verts.iter().copied().filter(|&v| v < apex_a));
        if stripped.len() != k + 1 {
            continue;
        }
        if let Some(idx) = base.simplex_index(k, &stripped) {
            out.values[i] = z.values[idx as usize];
        }
    }
    out
}

/// Pull a cochain back along a simplicial map given by a vertex map
/// (orientation signs from sorting the image; degenerate images give 0).
pub fn pullback_cochain(
    source: &Space,
    target: &Space,
    vertex_map: &[u32],
    u: &Cochain,
) -> Cochain {
    let k = u.degree;
    let mut out = source.zero_cochain(u.ring, k);
    let mut image: Vec<u32> = Vec::with_capacity(k + 1);
    for (i, sigma) in source.basis(k).iter().enumerate() {
        image.clear();
        image.extend(sigma.vertices().iter().map(|&v| vertex_map[v as usize]));
        // sorting parity by insertion sort
        let mut sign = 1i64;
        let mut ok = true;
        for a in 1..image.len() {
            let mut b = a;
            while b > 0 && image[b - 1] >= image[b] {
                if image[b - 1] == image[b] {
                    ok = false;
                    break;
                }
                image.swap(b - 1, b);
                sign = -sign;
                b -= 1;
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        if let Some(idx) = target.simplex_index(k, &image) {
            out.values[i] = u.ring.mul(sign, u.values[idx as usize]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn space(k: SimplicialComplex) -> Space {
        Space::new(k)
    }

    fn random_cochain(s: &Space, k: usize, ring: Ring, rng: &mut impl Rng) -> Cochain {
        let values = (0..s.basis(k).len())
            .map(|_| match ring {
                Ring::Z => rng.gen_range(-4i64..=4),
                Ring::Mod(m) => rng.gen_range(0..m as i64),
            })
            .collect();
        Cochain::from_values(k, ring, values)
    }

    #[test]
    fn unit_law() {
        let s = space(SimplicialComplex::rp_space(2).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let one = Cochain::from_values(0, Ring::Mod(4), vec![1; s.basis(0).len()]);
        for k in 0..=2 {
            let v = random_cochain(&s, k, Ring::Mod(4), &mut rng);
            assert_eq!(s.cup(&one, &v).unwrap().values, v.values);
        }
    }

    #[test]
    fn cup_is_associative_at_cochain_level() {
        let s = space(SimplicialComplex::sphere(2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for ring in [Ring::Z, Ring::Mod(4)] {
            let u = random_cochain(&s, 1, ring, &mut rng);
            let v = random_cochain(&s, 0, ring, &mut rng);
            let w = random_cochain(&s, 1, ring, &mut rng);
            let left = s.cup(&s.cup(&u, &v).unwrap(), &w).unwrap();
            let right = s.cup(&u, &s.cup(&v, &w).unwrap()).unwrap();
            assert_eq!(left.values, right.values);
        }
    }

    #[test]
    fn leibniz_rule() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let s = space(SimplicialComplex::rp_space(2).unwrap());
        for ring in [Ring::Z, Ring::Mod(2), Ring::Mod(8)] {
            for (r, deg_s) in [(0usize, 1usize), (1, 1), (1, 0)] {
                for _ in 0..10 {
                    let u = random_cochain(&s, r, ring, &mut rng);
                    let v = random_cochain(&s, deg_s, ring, &mut rng);
                    let lhs = s.coboundary(&s.cup(&u, &v).unwrap());
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    let rhs = s
                        .cup(&s.coboundary(&u), &v)
                        .unwrap()
                        .add(&s.cup(&u, &s.coboundary(&v)).unwrap().scale(sign));
                    assert_eq!(lhs.values, rhs.values, "{ring} ({r},{deg_s})");
                }
            }
        }
    }

    /// The exact coboundary formula for all cup-i, the load-bearing
    /// contract of this module.
    #[test]
    fn cup_i_coboundary_formula() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for k in [
            SimplicialComplex::sphere(2),
            SimplicialComplex::rp_space(2).unwrap(),
            SimplicialComplex::lens_space(2, 1).unwrap(),
        ] {
            let s = space(k);
            for ring in [Ring::Z, Ring::Mod(2), Ring::Mod(4), Ring::Mod(8)] {
                for r in 0..=s.dimension() {
                    for t in 0..=s.dimension() {
                        for i in 0..=4i64 {
                            for _ in 0..3 {
                                let u = random_cochain(&s, r, ring, &mut rng);
                                let v = random_cochain(&s, t, ring, &mut rng);
                                let defect = s.cup_i_coboundary_defect(&u, &v, i).unwrap();
                                assert!(
                                    defect.is_zero(),
                                    "{} {ring} r={r} s={t} i={i}",
                                    s.complex().name()
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cup_0_equals_cup() {
        let s = space(SimplicialComplex::sphere(2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let u = random_cochain(&s, 1, Ring::Mod(8), &mut rng);
        let v = random_cochain(&s, 1, Ring::Mod(8), &mut rng);
        assert_eq!(
            s.cup(&u, &v).unwrap().values,
            s.cup_i(&u, &v, 0).unwrap().values
        );
    }

    #[test]
    fn sq_on_rp2() {
        let s = space(SimplicialComplex::rp_space(2).unwrap());
        let g1 = s.cohomology(Ring::Mod(2), 1);
        let a = s.class_from_coords(&g1, &[1]);
        // Sq^0 = id
        assert_eq!(s.sq(0, &a).unwrap().coords, a.coords);
        // Sq^1 a = a^2 (top square axiom in degree 1)
        let sq1 = s.sq(1, &a).unwrap();
        let a2 = s
            .class_of(Ring::Mod(2), 2, s.cup(&a.rep, &a.rep).unwrap())
            .unwrap();
        assert_eq!(sq1.coords, a2.coords);
        assert!(!sq1.is_zero());
        // Sq^1 agrees with the connecting map of 0 -> Z/2 -> Z/4 -> Z/2 -> 0
        let beta = s.connecting(SesSpec::Sq1, &a).unwrap();
        assert_eq!(beta.coords, sq1.coords);
        // vanishing above the degree
        assert!(s.sq(2, &a).unwrap().is_zero());
        assert!(s.sq(-1, &a).unwrap().is_zero());
    }

    #[test]
    fn sq_binomial_table_on_rp3() {
        // Sq^i(a^j) = binom(j, i) a^(i+j) mod 2
        let s = space(SimplicialComplex::rp_space(3).unwrap());
        let g1 = s.cohomology(Ring::Mod(2), 1);
        let a = s.class_from_coords(&g1, &[1]);
        let mut powers = vec![s.unit_class(Ring::Mod(2)), a.clone()];
        for j in 2..=3usize {
            let prev = &powers[j - 1];
            let rep = s.cup(&prev.rep, &a.rep).unwrap();
            powers.push(s.class_of(Ring::Mod(2), j, rep).unwrap());
        }
        for j in 1..=3usize {
            for i in 0..=3i64 {
                if i as usize + j > 3 {
                    continue;
                }
                let lhs = s.sq(i, &powers[j]).unwrap();
                let binom = crate::verify::binom_mod2(j as u64, i as u64);
                let expect = if binom == 1 {
                    powers[i as usize + j].clone()
                } else {
                    s.zero_class(Ring::Mod(2), i as usize + j)
                };
                assert_eq!(lhs.coords, expect.coords, "Sq^{i}(a^{j})");
            }
        }
    }

    #[test]
    fn gen_sq_reduces_to_sq_at_n_1() {
        let s = space(SimplicialComplex::rp_space(3).unwrap());
        for deg in 0..=3usize {
            let g = s.cohomology(Ring::Mod(2), deg);
            for gi in 0..g.summands() {
                let mut coords = vec![0i64; g.summands()];
                coords[gi] = 1;
                let x = s.class_from_coords(&g, &coords);
                for i in 0..=3i64 {
                    assert_eq!(
                        s.gen_sq(i, &x).unwrap().coords,
                        s.sq(i, &x).unwrap().coords,
                        "deg {deg} i {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn gen_sq_factorizations() {
        // even i: gen_sq = [2^(n-1)] . Sq^i . red_2
        // odd i:  gen_sq = beta_(2,2^n) . Sq^(i-1) . red_2
        let s = space(SimplicialComplex::lens_space(4, 1).unwrap());
        for n in [2u32, 3] {
            let ring = Ring::mod2n(n);
            for deg in 0..=3usize {
                let g = s.cohomology(ring, deg);
                for gi in 0..g.summands() {
                    let mut coords = vec![0i64; g.summands()];
                    coords[gi] = 1;
                    let x = s.class_from_coords(&g, &coords);
                    let red = s.change_coeffs(&x, Ring::Mod(2)).unwrap();
                    for i in 0..=3i64 {
                        let lhs = s.gen_sq(i, &x).unwrap();
                        let rhs = if i % 2 == 0 {
                            let sq = s.sq(i, &red).unwrap();
                            s.change_coeffs(&sq, ring).unwrap()
                        } else {
                            let sq = s.sq(i - 1, &red).unwrap();
                            s.connecting(SesSpec::LiftObstruction { n }, &sq).unwrap()
                        };
                        assert_eq!(lhs.coords, rhs.coords, "n={n} deg={deg} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn beta2_of_reduction_is_zero() {
        // a class reduced from an honest integral cocycle has beta2 = 0
        let s = space(SimplicialComplex::lens_space(4, 1).unwrap());
        let hz3 = s.cohomology(Ring::Z, 3);
        let t = s.class_from_coords(&hz3, &[1]);
        let x = s.change_coeffs(&t, Ring::Mod(4)).unwrap();
        let coset = s.beta2(&x).unwrap();
        assert!(coset.is_zero(&s));
    }

    #[test]
    fn beta2_requires_kernel() {
        let s = space(SimplicialComplex::rp_space(2).unwrap());
        let g1 = s.cohomology(Ring::Mod(2), 1);
        let a = s.class_from_coords(&g1, &[1]);
        // beta(a) = a^2 != 0 on RP2
        assert!(matches!(s.beta2(&a), Err(Error::NotInBocksteinKernel)));
    }

    #[test]
    fn suspension_commutes_with_sq() {
        let base = space(SimplicialComplex::rp_space(2).unwrap());
        let susp = space(base.complex().suspension());
        for deg in 1..=2usize {
            let g = base.cohomology(Ring::Mod(2), deg);
            for gi in 0..g.summands() {
                let mut coords = vec![0i64; g.summands()];
                coords[gi] = 1;
                let x = base.class_from_coords(&g, &coords);
                let sx_rep = suspend_cochain(&base, &susp, &x.rep);
                let sx = susp.class_of(Ring::Mod(2), deg + 1, sx_rep).unwrap();
                assert!(!sx.is_zero(), "suspension map must be injective");
                for i in 0..=3i64 {
                    let lhs = {
                        let sq = base.sq(i, &x).unwrap();
                        let rep = suspend_cochain(&base, &susp, &sq.rep);
                        susp.class_of(Ring::Mod(2), sq.degree + 1, rep).unwrap()
                    };
                    let rhs = susp.sq(i, &sx).unwrap();
                    assert_eq!(lhs.coords, rhs.coords, "deg {deg} i {i}");
                }
            }
        }
    }

    #[test]
    fn naturality_under_covering_map() {
        let (rp, cover, vmap) = SimplicialComplex::rp_space_with_covering(2).unwrap();
        let rp = space(rp);
        let cover = space(cover);
        // pullback is a chain map
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for k in 0..2 {
            let u = random_cochain(&rp, k, Ring::Mod(2), &mut rng);
            let lhs = cover.coboundary(&pullback_cochain(&cover, &rp, &vmap, &u));
            let rhs = pullback_cochain(&cover, &rp, &vmap, &rp.coboundary(&u));
            assert_eq!(lhs.values, rhs.values);
        }
        // f* Sq^i = Sq^i f* on classes
        for deg in 0..=2usize {
            let g = rp.cohomology(Ring::Mod(2), deg);
            for gi in 0..g.summands() {
                let mut coords = vec![0i64; g.summands()];
                coords[gi] = 1;
                let x = rp.class_from_coords(&g, &coords);
                let fx_rep = pullback_cochain(&cover, &rp, &vmap, &x.rep);
                let fx = cover.class_of(Ring::Mod(2), deg, fx_rep).unwrap();
                for i in 0..=2i64 {
                    let lhs = {
                        let sq = rp.sq(i, &x).unwrap();
                        let rep = pullback_cochain(&cover, &rp, &vmap, &sq.rep);
                        cover.class_of(Ring::Mod(2), sq.degree, rep).unwrap()
                    };
                    let rhs = cover.sq(i, &fx).unwrap();
                    assert_eq!(lhs.coords, rhs.coords, "deg {deg} i {i}");
                }
            }
        }
    }
}
