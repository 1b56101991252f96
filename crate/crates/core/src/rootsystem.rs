//! Exact root systems of the simple Lie algebras of rank at least two.
//!
//! Simple roots follow the Bourbaki numbering:
//!
//! | type | diagram (1-based)              | short simple roots |
//! |------|--------------------------------|--------------------|
//! | Aℓ   | 1–2–…–ℓ                        | none               |
//! | Bℓ   | 1–…–(ℓ−1)⇒ℓ                    | αℓ                 |
//! | Cℓ   | 1–…–(ℓ−1)⇐ℓ                    | α1…αℓ−1            |
//! | Dℓ   | 1–…–(ℓ−2)–(ℓ−1), (ℓ−2)–ℓ       | none               |
//! | Eℓ   | 1–3–4–…–ℓ, 2–4                 | none               |
//! | F4   | 1–2⇒3–4                        | α3, α4             |
//! | G2   | 1⇚2                            | α1                 |
//!
//! A root `φ = Σ kᵢαᵢ` is stored as its coordinate vector `(k₁,…,kℓ)`. The
//! base form `B₀` gives long roots squared length 2 (so short roots have
//! length 1, or 2/3 in G2); the Cartan matrix follows
//! `C[i][j] = ⟨αᵢ∨, αⱼ⟩ = 2 B₀(αᵢ,αⱼ) / B₀(αᵢ,αᵢ)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Coordinates of a root in the basis of simple roots.
pub type Coords = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple Lie type `Xℓ` with `ℓ ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bad = |reason| Error::InvalidType {
            family: family.letter(),
            rank,
            reason,
        };
        if rank < 2 {
            return Err(bad("rank must be at least 2"));
        }
        match family {
            Family::A | Family::B | Family::C => {}
            Family::D if rank < 4 => return Err(bad("D requires rank >= 4 (D3 is A3)")),
            Family::D => {}
            Family::E if !(6..=8).contains(&rank) => return Err(bad("E requires rank 6, 7 or 8")),
            Family::E => {}
            Family::F if rank != 4 => return Err(bad("F requires rank 4")),
            Family::F => {}
            Family::G if rank != 2 => return Err(bad("G requires rank 2")),
            Family::G => {}
        }
        Ok(LieType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every admissible type of rank `2..=max_rank`, in a fixed order.
    pub fn sweep(max_rank: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D] {
            for rank in 2..=max_rank {
                if let Ok(t) = LieType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        for (family, rank) in [
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            if rank <= max_rank {
                out.push(LieType { family, rank });
            }
        }
        out
    }

    /// Dual Coxeter number from the classical table.
    pub fn dual_coxeter_table(&self) -> i64 {
        let l = self.rank as i64;
        match self.family {
            Family::A => l + 1,
            Family::B => 2 * l - 1,
            Family::C => l + 1,
            Family::D => 2 * l - 2,
            Family::E => match l {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 9,
            Family::G => 4,
        }
    }

    /// Squared lengths of the simple roots and the edges of the Dynkin
    /// diagram (0-based, undirected).
    fn diagram(&self) -> (Vec<Rational>, Vec<(usize, usize)>) {
        let l = self.rank;
        let two = Rational::from_integer(2);
        let one = Rational::one();
        let chain = |n: usize| (0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A => (vec![two; l], chain(l)),
            Family::B => {
                let mut norms = vec![two; l];
                norms[l - 1] = one;
                (norms, chain(l))
            }
            Family::C => {
                let mut norms = vec![one; l];
                norms[l - 1] = two;
                (norms, chain(l))
            }
            Family::D => {
                let mut edges = chain(l - 1);
                edges.push((l - 3, l - 1));
                (vec![two; l], edges)
            }
            Family::E => {
                let mut edges = vec![(0, 2), (1, 3)];
                edges.extend((2..l - 1).map(|i| (i, i + 1)));
                (vec![two; l], edges)
            }
            Family::F => (vec![two, two, one, one], chain(4)),
            Family::G => (vec![Rational::new(2, 3), two], chain(2)),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::ParseType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::ParseType(s.to_string()))?;
        LieType::new(family, rank)
    }
}

/// Exact realization of the roots of a simple Lie algebra.
#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    base_form: Vec<Vec<Rational>>,
    roots: Vec<Coords>,
    index: HashMap<Coords, usize>,
}

/// Builds the root system of `t` by closing the simple roots under the
/// simple reflections.
pub fn build_root_system(t: LieType) -> RootSystem {
    let (norms, edges) = t.diagram();
    let l = t.rank();
    let mut base_form = vec![vec![Rational::zero(); l]; l];
    for i in 0..l {
        base_form[i][i] = norms[i];
    }
    for &(i, j) in &edges {
        // every bond has (αi, αj) = -(longer length)/2
        let v = -std::cmp::max(norms[i], norms[j]) / 2;
        base_form[i][j] = v;
        base_form[j][i] = v;
    }
    RootSystem::from_form(t, base_form)
}

impl RootSystem {
    fn from_form(lie_type: LieType, base_form: Vec<Vec<Rational>>) -> RootSystem {
        let l = base_form.len();
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let c = base_form[i][j] * 2 / base_form[i][i];
                        assert!(c.is_integer(), "non-integral Cartan entry");
                        c.to_integer()
                    })
                    .collect()
            })
            .collect();

        let simple: Vec<Coords> = (0..l)
            .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut seen: HashSet<Coords> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Coords> = simple.into_iter().collect();
        while let Some(phi) = queue.pop_front() {
            for i in 0..l {
                // s_i(φ) = φ - ⟨φ, αi∨⟩ αi
                let pairing: i64 = (0..l).map(|j| phi[j] * cartan[i][j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut img = phi.clone();
                img[i] -= pairing;
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }

        let mut roots: Vec<Coords> = seen.into_iter().collect();
        roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
        let index = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        RootSystem {
            lie_type,
            cartan,
            base_form,
            roots,
            index,
        }
    }

    /// The same root system with the simple roots renumbered: new simple
    /// root `i` is old simple root `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> RootSystem {
        let l = self.rank();
        assert_eq!(perm.len(), l);
        let form = (0..l)
            .map(|i| (0..l).map(|j| self.base_form[perm[i]][perm[j]]).collect())
            .collect();
        RootSystem::from_form(self.lie_type, form)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn base_form(&self) -> &[Vec<Rational>] {
        &self.base_form
    }

    /// All roots, sorted by height and then lexicographically; the negative
    /// roots form the first half.
    pub fn roots(&self) -> &[Coords] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Coords] {
        &self.roots[self.roots.len() / 2..]
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn contains(&self, coords: &[i64]) -> bool {
        self.index.contains_key(coords)
    }

    /// Index of `-roots[i]`.
    pub fn negative_index(&self, i: usize) -> usize {
        self.roots.len() - 1 - i
    }

    /// Index of the simple root `αᵢ`.
    pub fn simple_index(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.index[&e]
    }

    /// `B₀(a, b)` for coordinate vectors.
    pub fn form(&self, a: &[i64], b: &[i64]) -> Rational {
        let l = self.rank();
        let mut s = Rational::zero();
        for i in 0..l {
            if a[i] == 0 {
                continue;
            }
            for j in 0..l {
                if b[j] != 0 {
                    s += self.base_form[i][j] * (a[i] * b[j]);
                }
            }
        }
        s
    }

    pub fn norm(&self, a: &[i64]) -> Rational {
        self.form(a, a)
    }

    /// `⟨φ, αᵢ∨⟩`.
    pub fn coroot_pairing(&self, phi: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| phi[j] * self.cartan[i][j]).sum()
    }

    /// Sum of two coordinate vectors.
    pub fn add(a: &[i64], b: &[i64]) -> Coords {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn neg(a: &[i64]) -> Coords {
        a.iter().map(|x| -x).collect()
    }

    /// Coxeter number `|Δ| / ℓ`.
    pub fn coxeter_number(&self) -> i64 {
        (self.roots.len() / self.rank()) as i64
    }
}

/// Height `o(φ) = ⟨φ, w⟩`, the coordinate sum.
pub fn height(phi: &[i64]) -> i64 {
    phi.iter().sum()
}

/// Heights of all roots, aligned with [`RootSystem::roots`].
pub fn heights(rs: &RootSystem) -> Vec<i64> {
    rs.roots().iter().map(|r| height(r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HighestRootData {
    pub psi: Coords,
    pub marks: Vec<i64>,
    pub n0: i64,
    pub coxeter_number: i64,
    pub height_of_psi: i64,
}

/// The highest root `ψ = Σ nᵢαᵢ`, its marks and `h = 1 + Σ nᵢ`.
pub fn highest_root(rs: &RootSystem) -> HighestRootData {
    let psi = rs.roots().last().expect("root system is nonempty").clone();
    let height_of_psi = height(&psi);
    HighestRootData {
        marks: psi.clone(),
        psi,
        n0: 1,
        coxeter_number: 1 + height_of_psi,
        height_of_psi,
    }
}

/// Killing-form data on `h*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingData {
    /// `K[i][j] = (αᵢ, αⱼ)_κ`.
    pub gram: Vec<Vec<Rational>>,
    /// The scale `I` with `K = B₀ / I`.
    pub scale: Rational,
    pub dual_coxeter: i64,
}

impl KillingData {
    pub fn gram_f64(&self) -> crate::linalg::Mat {
        let l = self.gram.len();
        crate::linalg::Mat::from_fn(l, l, |i, j| to_f64(self.gram[i][j]))
    }
}

/// Killing Gram matrix via the trace identity `I = Σ_φ B₀(φ,φ) / ℓ`.
///
/// Panics if `I ≠ 2h∨`, which would mean the root data is corrupt.
pub fn killing_gram(rs: &RootSystem) -> KillingData {
    let l = rs.rank();
    let total: Rational = rs.roots().iter().map(|r| rs.norm(r)).sum();
    let scale = total / (l as i64);
    let hr = highest_root(rs);
    // comarks: h∨ = 1 + Σ nᵢ |αᵢ|²/|ψ|²
    let psi_norm = rs.norm(&hr.psi);
    let dual: Rational = Rational::one()
        + (0..l)
            .map(|i| rs.base_form()[i][i] * hr.marks[i] / psi_norm)
            .sum::<Rational>();
    assert!(dual.is_integer(), "dual Coxeter number is not integral");
    let dual_coxeter = dual.to_integer();
    assert_eq!(
        scale,
        Rational::from_integer(2 * dual_coxeter),
        "Killing scale I differs from 2h∨"
    );
    let gram = rs
        .base_form()
        .iter()
        .map(|row| row.iter().map(|&b| b / scale).collect())
        .collect();
    KillingData {
        gram,
        scale,
        dual_coxeter,
    }
}

pub fn to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_rejects_types() {
        assert_eq!(ty("E8").to_string(), "E8");
        assert_eq!(ty(" b3 ").to_string(), "B3");
        for bad in ["D3", "A1", "E9", "F3", "G3", "X2", "E", "", "A-2"] {
            assert!(bad.parse::<LieType>().is_err(), "{bad} accepted");
        }
        assert!(matches!(
            "D3".parse::<LieType>(),
            Err(Error::InvalidType { .. })
        ));
        assert!(ty("B2") != ty("C2"));
    }

    #[test]
    fn a2_roots_by_hand() {
        let rs = build_root_system(ty("A2"));
        let mut got: Vec<Coords> = rs.roots().to_vec();
        got.sort();
        let mut want = vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![-1, 0],
            vec![0, -1],
            vec![-1, -1],
        ];
        want.sort();
        assert_eq!(got, want);
        let hr = highest_root(&rs);
        assert_eq!(hr.psi, vec![1, 1]);
        assert_eq!(hr.coxeter_number, 3);
    }

    /// Brute-force closure of G2 under its two reflections, written out on
    /// explicit 2D vectors rather than through the Cartan matrix.
    #[test]
    fn g2_against_planar_closure() {
        // short α1 = (1, 0), long α2 = (-3/2, √3/2) in a plane; coordinates
        // tracked exactly as pairs (a, b) meaning a·α1 + b·α2
        let simple = [(1i64, 0i64), (0, 1)];
        let form = |x: (i64, i64), y: (i64, i64)| {
            // Gram in units of 1/3: [[1, -3/2], [-3/2, 3]] * 2/3 = [[2/3, -1], [-1, 2]]
            Rational::new(2, 3) * (x.0 * y.0) - Rational::from_integer(x.0 * y.1 + x.1 * y.0)
                + Rational::from_integer(2 * x.1 * y.1)
        };
        let mut seen: HashSet<(i64, i64)> = simple.iter().copied().collect();
        let mut queue: Vec<(i64, i64)> = simple.to_vec();
        while let Some(v) = queue.pop() {
            for s in simple {
                let c = form(v, s) * 2 / form(s, s);
                let c = c.to_integer();
                let img = (v.0 - c * s.0, v.1 - c * s.1);
                if seen.insert(img) {
                    queue.push(img);
                }
            }
        }
        assert_eq!(seen.len(), 12);
        let rs = build_root_system(ty("G2"));
        let ours: HashSet<(i64, i64)> = rs.roots().iter().map(|r| (r[0], r[1])).collect();
        assert_eq!(ours, seen);
        assert_eq!(rs.coxeter_number(), 6);
        let hr = highest_root(&rs);
        assert_eq!(hr.marks, vec![3, 2]);
        assert_eq!(hr.coxeter_number, 6);
    }

    #[test]
    fn e8_counts() {
        let rs = build_root_system(ty("E8"));
        assert_eq!(rs.roots().len(), 240);
        let hr = highest_root(&rs);
        assert_eq!(hr.coxeter_number, 30);
        assert_eq!(hr.marks, vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn heights_of_examples() {
        let rs = build_root_system(ty("A2"));
        assert_eq!(height(&[1, 1]), 2);
        for t in LieType::sweep(8) {
            let rs = build_root_system(t);
            let hr = highest_root(&rs);
            assert_eq!(height(&hr.psi), hr.coxeter_number - 1);
            assert_eq!(height(&RootSystem::neg(&hr.psi)), -(hr.coxeter_number - 1));
        }
        let hs = heights(&rs);
        assert_eq!(hs.len(), 6);
    }

    #[test]
    fn killing_examples() {
        let kd = killing_gram(&build_root_system(ty("A2")));
        assert_eq!(kd.scale, Rational::from_integer(6));
        assert_eq!(
            kd.gram,
            vec![
                vec![Rational::new(1, 3), Rational::new(-1, 6)],
                vec![Rational::new(-1, 6), Rational::new(1, 3)]
            ]
        );
        assert_eq!(
            killing_gram(&build_root_system(ty("G2"))).scale,
            Rational::from_integer(8)
        );
        let e8 = killing_gram(&build_root_system(ty("E8")));
        assert_eq!(e8.scale, Rational::from_integer(60));
        assert_eq!(e8.dual_coxeter, 30);
    }

    #[test]
    fn dual_coxeter_matches_table() {
        for t in LieType::sweep(8) {
            let kd = killing_gram(&build_root_system(t));
            assert_eq!(kd.dual_coxeter, t.dual_coxeter_table(), "{t}");
        }
    }

    #[test]
    fn structural_invariants_over_sweep() {
        for t in LieType::sweep(8) {
            let rs = build_root_system(t);
            let l = rs.rank() as i64;
            let hr = highest_root(&rs);
            assert_eq!(rs.roots().len() as i64, l * hr.coxeter_number, "{t}");
            assert_eq!(hr.coxeter_number, rs.coxeter_number());
            assert!(hr.marks.iter().all(|&n| n >= 1));
            for i in 0..rs.rank() {
                let mut up = hr.psi.clone();
                up[i] += 1;
                assert!(!rs.contains(&up));
            }
            let pos = rs.positive_roots();
            assert_eq!(pos.len() * 2, rs.roots().len());
            assert!(pos.iter().all(|r| r.iter().all(|&k| k >= 0)));
            for r in rs.roots() {
                assert!(r.iter().all(|&k| k >= 0) || r.iter().all(|&k| k <= 0));
                assert!(rs.contains(&RootSystem::neg(r)));
            }
            for (i, r) in rs.roots().iter().enumerate() {
                assert_eq!(rs.roots()[rs.negative_index(i)], RootSystem::neg(r));
            }
            // at most two root lengths, long roots have length 2
            let lengths: HashSet<Rational> = rs.roots().iter().map(|r| rs.norm(r)).collect();
            assert!(lengths.len() <= 2 && lengths.contains(&Rational::from_integer(2)));
            // height histogram is symmetric
            let mut hist: HashMap<i64, usize> = HashMap::new();
            for h in heights(&rs) {
                *hist.entry(h).or_default() += 1;
            }
            for (&k, &c) in &hist {
                assert_eq!(hist.get(&-k), Some(&c));
            }
            // K is B0 / (2h∨) and positive definite
            let kd = killing_gram(&rs);
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    assert_eq!(kd.gram[i][j], rs.base_form()[i][j] / (2 * kd.dual_coxeter));
                    assert_eq!(kd.gram[i][j], kd.gram[j][i]);
                }
            }
            assert!(crate::linalg::cholesky(&kd.gram_f64()).is_ok());
        }
    }
}
