//! Integral Chevalley structure constants.
//!
//! Basis: `e_φ` for every root and the simple coroots `h₁…hℓ`, with
//! `[e_φ, e_{−φ}] = h_φ`, `[h, e_φ] = ⟨φ, h⟩ e_φ` and
//! `[e_φ, e_χ] = N_{φ,χ} e_{φ+χ}`, `N_{φ,χ} = ±(p+1)` where `p` is the
//! largest integer with `χ − pφ` a root.
//!
//! Signs: every extraspecial pair gets `N > 0` (positive roots are ordered
//! by height, then lexicographically), and `N_{−φ,−χ} = −N_{φ,χ}`, which
//! makes `θ(e_φ) = −e_{−φ}`, `θ|_h = −1` an automorphism. All remaining
//! constants follow from the standard relations
//!
//! * `N_{φ,χ} = −N_{χ,φ}`
//! * `N_{φ,χ}/(ξ,ξ) = N_{χ,ξ}/(φ,φ) = N_{ξ,φ}/(χ,χ)` when `φ+χ+ξ = 0`
//! * for `φ+χ+ξ+η = 0` with no opposite pair,
//!   `N_{φ,χ}N_{ξ,η}/(φ+χ)² + N_{χ,ξ}N_{φ,η}/(χ+ξ)² + N_{ξ,φ}N_{χ,η}/(ξ+φ)² = 0`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::par;
use crate::rootsystem::{Coords, Rational, RootSystem};

/// Sparse integer vector over the Chevalley basis (roots first, then
/// coroots).
pub type IntVec = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct ChevalleyTable {
    roots: Vec<Coords>,
    rank: usize,
    /// `sum[a·R + b]`: index of `φ_a + φ_b` if it is a root.
    sum: Vec<Option<u32>>,
    /// `N_{a,b}`, zero unless `φ_a + φ_b` is a root.
    n: Vec<i64>,
    /// Coroot `h_φ` in the basis of simple coroots.
    coroots: Vec<Vec<i64>>,
    /// `⟨φ, αᵢ∨⟩`.
    pairing: Vec<Vec<i64>>,
}

struct Builder<'a> {
    rs: &'a RootSystem,
    sum: &'a [Option<u32>],
    norms: Vec<Rational>,
    special: HashMap<(usize, usize), i64>,
}

impl Builder<'_> {
    fn r(&self) -> usize {
        self.rs.roots().len()
    }

    fn is_positive(&self, a: usize) -> bool {
        a >= self.r() / 2
    }

    fn neg(&self, a: usize) -> usize {
        self.rs.negative_index(a)
    }

    fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a * self.r() + b].map(|s| s as usize)
    }

    /// `N_{a,b}` reduced to special pairs already in the table.
    fn n(&self, a: usize, b: usize) -> Rational {
        let Some(c) = self.sum(a, b) else {
            return Rational::zero();
        };
        match (self.is_positive(a), self.is_positive(b)) {
            (true, true) => {
                let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                let v = self.special.get(&(lo, hi)).copied().unwrap_or_else(|| {
                    panic!("special pair ({lo}, {hi}) used before it was computed")
                });
                Rational::from_integer(sign * v)
            }
            (false, false) => -self.n(self.neg(a), self.neg(b)),
            (false, true) => -self.n(b, a),
            (true, false) => {
                let t = self.neg(c);
                if self.is_positive(c) {
                    // t < 0: N_{a,b} = (t,t)/(a,a) · N_{b,t}
                    self.norms[t] / self.norms[a] * self.n(b, t)
                } else {
                    // t > 0: N_{a,b} = (t,t)/(b,b) · N_{t,a}
                    self.norms[t] / self.norms[b] * self.n(t, a)
                }
            }
        }
    }

    /// Largest `p` with `φ_b − p φ_a` a root.
    fn string_below(&self, a: usize, b: usize) -> i64 {
        let (pa, pb) = (&self.rs.roots()[a], &self.rs.roots()[b]);
        let mut p = 0;
        loop {
            let v: Coords = pb.iter().zip(pa).map(|(y, x)| y - (p + 1) * x).collect();
            if !self.rs.contains(&v) {
                return p;
            }
            p += 1;
        }
    }
}

/// Computes the full table of `N_{φ,χ}` for `rs`.
pub fn chevalley_constants(rs: &RootSystem) -> Result<ChevalleyTable> {
    let roots = rs.roots().to_vec();
    let r = roots.len();
    let l = rs.rank();
    let sum: Vec<Option<u32>> = par::map_range(r * r, |k| {
        let (a, b) = (k / r, k % r);
        rs.index_of(&RootSystem::add(&roots[a], &roots[b]))
            .map(|s| s as u32)
    });

    let mut b = Builder {
        rs,
        sum: &sum,
        norms: roots.iter().map(|x| rs.norm(x)).collect(),
        special: HashMap::new(),
    };

    let first_pos = r / 2;
    for z in first_pos..r {
        // special pairs (a, b), a ≺ b, summing to z; the first is extraspecial
        let pairs: Vec<(usize, usize)> = (first_pos..z)
            .filter_map(|a| {
                let s = b.sum(z, b.neg(a))?;
                (s > a && s >= first_pos).then_some((a, s))
            })
            .collect();
        let Some(&(r1, s1)) = pairs.first() else {
            continue;
        };
        let n1 = b.string_below(r1, s1) + 1;
        b.special.insert((r1, s1), n1);
        let z_norm = b.norms[z];
        for &(x, y) in &pairs[1..] {
            let nr1 = b.neg(r1);
            let ns1 = b.neg(s1);
            let mut acc = Rational::zero();
            if let Some(d) = b.sum(y, nr1) {
                acc += b.n(y, nr1) * b.n(x, ns1) / b.norms[d];
            }
            if let Some(d) = b.sum(x, nr1) {
                acc += b.n(nr1, x) * b.n(y, ns1) / b.norms[d];
            }
            let v = z_norm / n1 * acc;
            if !v.is_integer() {
                return Err(Error::Consistency(format!(
                    "N for special pair ({x}, {y}) is not integral: {v}"
                )));
            }
            b.special.insert((x, y), v.to_integer());
        }
    }

    let n: Vec<i64> = (0..r * r)
        .map(|k| {
            let v = b.n(k / r, k % r);
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();

    for a in 0..r {
        for c in 0..r {
            if sum[a * r + c].is_some() {
                let want = b.string_below(a, c) + 1;
                if n[a * r + c].abs() != want {
                    return Err(Error::Consistency(format!(
                        "|N| = {} for roots {:?} + {:?}, expected {want}",
                        n[a * r + c],
                        roots[a],
                        roots[c]
                    )));
                }
            }
        }
    }

    let coroots = roots
        .iter()
        .enumerate()
        .map(|(a, phi)| {
            (0..l)
                .map(|i| {
                    let c = rs.base_form()[i][i] * phi[i] / b.norms[a];
                    debug_assert!(c.is_integer());
                    c.to_integer()
                })
                .collect()
        })
        .collect();
    let pairing = roots
        .iter()
        .map(|phi| (0..l).map(|i| rs.coroot_pairing(phi, i)).collect())
        .collect();

    Ok(ChevalleyTable {
        roots,
        rank: l,
        sum,
        n,
        coroots,
        pairing,
    })
}

impl ChevalleyTable {
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank
    }

    pub fn neg(&self, a: usize) -> usize {
        self.roots.len() - 1 - a
    }

    /// `N_{a,b}` (zero when `φ_a + φ_b` is not a root).
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n[a * self.roots.len() + b]
    }

    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a * self.roots.len() + b].map(|s| s as usize)
    }

    pub fn coroot(&self, a: usize) -> &[i64] {
        &self.coroots[a]
    }

    /// `⟨φ_a, αᵢ∨⟩`.
    pub fn pairing(&self, a: usize, i: usize) -> i64 {
        self.pairing[a][i]
    }

    /// Bracket of two basis elements.
    pub fn bracket_basis(&self, x: usize, y: usize) -> IntVec {
        let r = self.roots.len();
        match (x < r, y < r) {
            (true, true) => {
                if y == self.neg(x) {
                    self.coroots[x]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (r + i, c))
                        .collect()
                } else if let Some(s) = self.sum_index(x, y) {
                    vec![(s, self.n(x, y))]
                } else {
                    Vec::new()
                }
            }
            (true, false) => vec![(x, -self.pairing[x][y - r])],
            (false, true) => vec![(y, self.pairing[y][x - r])],
            (false, false) => Vec::new(),
        }
    }

    /// `[basis_x, v]` for a sparse vector `v`.
    pub fn bracket_with(&self, x: usize, v: &IntVec) -> IntVec {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(y, c) in v {
            for (z, d) in self.bracket_basis(x, y) {
                *acc.entry(z).or_default() += c * d;
            }
        }
        let mut out: IntVec = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        out
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` on basis elements, exactly.
    pub fn jacobiator(&self, x: usize, y: usize, z: usize) -> IntVec {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            for (k, v) in self.bracket_with(a, &self.bracket_basis(b, c)) {
                *acc.entry(k).or_default() += v;
            }
        }
        let mut out: IntVec = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        out
    }

    /// Checks the Jacobi identity on `samples` seeded random basis triples;
    /// returns the first violating triple.
    pub fn check_jacobi_sample(&self, samples: usize, seed: u64) -> Result<()> {
        let d = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<(usize, usize, usize)> = (0..samples)
            .map(|_| {
                (
                    rng.gen_range(0..d),
                    rng.gen_range(0..d),
                    rng.gen_range(0..d),
                )
            })
            .collect();
        let bad = par::map_slice(&triples, |&(x, y, z)| {
            (!self.jacobiator(x, y, z).is_empty()).then_some((x, y, z))
        });
        match bad.into_iter().flatten().next() {
            Some(t) => Err(Error::Consistency(format!(
                "Jacobi identity fails on basis triple {t:?}"
            ))),
            None => Ok(()),
        }
    }

    /// Checks antisymmetry on every pair of basis elements.
    pub fn check_antisymmetry(&self) -> Result<()> {
        let d = self.dim();
        for x in 0..d {
            for y in x..d {
                let a = self.bracket_basis(x, y);
                let mut b: IntVec = self
                    .bracket_basis(y, x)
                    .into_iter()
                    .map(|(k, c)| (k, -c))
                    .collect();
                b.sort_unstable();
                let mut a = a;
                a.sort_unstable();
                if a != b {
                    return Err(Error::Consistency(format!("[{x},{y}] != -[{y},{x}]")));
                }
            }
        }
        Ok(())
    }

    /// `ad(element)·v` over the integers.
    pub fn ad_apply_big(&self, element: &IntVec, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim()];
        for &(x, c) in element {
            for (y, vy) in v.iter().enumerate().filter(|(_, vy)| !vy.is_zero()) {
                for (z, d) in self.bracket_basis(x, y) {
                    out[z] += vy * (c * d);
                }
            }
        }
        out
    }

    /// `κ(e_φ, e_{−φ}) = tr(ad e_φ ad e_{−φ})`, exactly.
    pub fn killing_pairing(&self, a: usize) -> i64 {
        let na = self.neg(a);
        (0..self.dim())
            .map(|b| {
                let inner = self.bracket_basis(na, b);
                self.bracket_with(a, &inner)
                    .into_iter()
                    .filter(|&(k, _)| k == b)
                    .map(|(_, c)| c)
                    .sum::<i64>()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{build_root_system, killing_gram, LieType};

    fn table(s: &str) -> (RootSystem, ChevalleyTable) {
        let rs = build_root_system(s.parse().unwrap());
        let t = chevalley_constants(&rs).unwrap();
        (rs, t)
    }

    #[test]
    fn a2_constant_is_unit() {
        let (rs, t) = table("A2");
        let a1 = rs.simple_index(0);
        let a2 = rs.simple_index(1);
        let s = rs.index_of(&[1, 1]).unwrap();
        // (0,1) precedes (1,0), so (α₂, α₁) is the extraspecial pair
        assert!(a2 < a1);
        assert_eq!(t.bracket_basis(a2, a1), vec![(s, 1)]);
        assert_eq!(t.bracket_basis(a1, a2), vec![(s, -1)]);
    }

    #[test]
    fn g2_longest_string() {
        let (_, t) = table("G2");
        let r = t.num_roots();
        let max = (0..r * r).map(|k| t.n(k / r, k % r).abs()).max().unwrap();
        assert_eq!(max, 3);
    }

    #[test]
    fn full_jacobi_on_small_types() {
        for s in ["A2", "A3", "B2", "C2", "B3", "C3", "G2", "D4"] {
            let (_, t) = table(s);
            t.check_antisymmetry().unwrap();
            let d = t.dim();
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        assert!(t.jacobiator(x, y, z).is_empty(), "{s}: ({x},{y},{z})");
                    }
                }
            }
        }
    }

    #[test]
    fn sampled_jacobi_on_large_types() {
        for s in ["F4", "E6", "E7", "E8", "B5", "C6", "D6"] {
            let (_, t) = table(s);
            t.check_jacobi_sample(600, 7).unwrap();
        }
    }

    #[test]
    fn theta_sign_convention() {
        for tp in LieType::sweep(6) {
            let (_, t) = table(&tp.to_string());
            let r = t.num_roots();
            for a in 0..r {
                for b in 0..r {
                    assert_eq!(t.n(t.neg(a), t.neg(b)), -t.n(a, b));
                }
            }
        }
    }

    #[test]
    fn killing_pairing_matches_transported_form() {
        for tp in LieType::sweep(5) {
            let (rs, t) = table(&tp.to_string());
            let kd = killing_gram(&rs);
            for a in 0..t.num_roots() {
                let want = kd.scale * 2 / rs.norm(&rs.roots()[a]);
                assert_eq!(Rational::from_integer(t.killing_pairing(a)), want, "{tp}");
            }
        }
    }
}
