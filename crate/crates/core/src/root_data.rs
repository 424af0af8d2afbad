//! Split adjoint root data, coweights, and the finite Weyl group.
//!
//! Coweights are stored in fundamental-coweight coordinates: entry `i` of a
//! coweight `μ` is the pairing `⟨α_i, μ⟩` with the `i`-th simple root. In
//! these coordinates `μ` is dominant when every entry is non-negative and
//! `ρ = (1, …, 1)`.
//!
//! The Cartan matrix is stored as `cartan[i][j] = ⟨α_i, α_j^∨⟩`, so column
//! `j` is the coweight-coordinate vector of the simple coroot `α_j^∨`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
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
    fn letter(self) -> char {
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
}

/// Cartan–Killing type of an irreducible reduced root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let constraint = match family {
            Family::A if rank < 1 => Some("type A requires rank >= 1"),
            Family::B | Family::C if rank < 2 => Some("types B and C require rank >= 2"),
            Family::D if rank < 3 => Some("type D requires rank >= 3"),
            Family::E if !(6..=8).contains(&rank) => Some("type E requires rank 6, 7 or 8"),
            Family::F if rank != 4 => Some("type F requires rank 4"),
            Family::G if rank != 2 => Some("type G requires rank 2"),
            _ => None,
        };
        match constraint {
            Some(constraint) => Err(Error::InvalidCartanType {
                family: family.letter(),
                rank,
                constraint,
            }),
            None => Ok(CartanType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots from the classification tables.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Order of the Weyl group from the classification tables.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => [51_840, 2_903_040, 696_729_600][n as usize - 6],
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Squared root lengths of the simple roots (Bourbaki numbering), scaled
    /// so that short roots have norm 2.
    fn root_norms(&self) -> Vec<i32> {
        let n = self.rank;
        match self.family {
            Family::A | Family::D | Family::E => vec![2; n],
            Family::B => (0..n).map(|i| if i + 1 == n { 2 } else { 4 }).collect(),
            Family::C => (0..n).map(|i| if i + 1 == n { 4 } else { 2 }).collect(),
            Family::F => vec![4, 4, 2, 2],
            Family::G => vec![2, 6],
        }
    }

    /// Edges of the Dynkin diagram (zero-based, Bourbaki numbering).
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        let chain = |len: usize| (1..len).map(|i| (i - 1, i)).collect::<Vec<_>>();
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => chain(n),
            Family::D => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // 1 - 3 - 4 - 5 - 6 (- 7 - 8), with 2 attached to 4.
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Parse(format!("unknown Cartan type {s:?}"))),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank = rest
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("invalid rank in Cartan type {s:?}")))?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of the coweight lattice in fundamental-coweight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(Vec<i32>);

impl Coweight {
    pub fn new(coords: Vec<i32>) -> Self {
        Coweight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Coweight(vec![0; rank])
    }

    /// `ρ`, the half-sum of positive coroots.
    pub fn rho(rank: usize) -> Self {
        Coweight(vec![1; rank])
    }

    /// The fundamental coweight `ω_i^∨` (zero-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Coweight(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Membership in `Λ⁺ + ρ`.
    pub fn is_strictly_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 1)
    }

    pub fn coordinate_sum(&self) -> i64 {
        self.0.iter().map(|&c| c as i64).sum()
    }

    /// Parses a comma-separated coordinate list such as `1,-1`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("invalid coweight coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Coweight)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Coweight {
    type Output = Coweight;
    fn add(self, rhs: &Coweight) -> Coweight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Coweight {
    type Output = Coweight;
    fn sub(self, rhs: &Coweight) -> Coweight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Coweight {
    type Output = Coweight;
    fn neg(self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<i32> for &Coweight {
    type Output = Coweight;
    fn mul(self, k: i32) -> Coweight {
        Coweight(self.0.iter().map(|a| a * k).collect())
    }
}

/// An element of the finite Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub id: usize,
    /// Action on coweight coordinates.
    pub matrix: Vec<Vec<i32>>,
    pub length: usize,
    /// Zero-based simple reflection indices, leftmost factor first.
    pub reduced_word: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, mu: &Coweight) -> Coweight {
        Coweight(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&mu.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `(-1)^{l(w)}`.
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// The enumerated Weyl group together with its right multiplication table.
#[derive(Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    right_mul: Vec<Vec<usize>>,
    by_rho_image: HashMap<Coweight, usize>,
}

impl WeylGroup {
    fn enumerate(datum: &RootDatum) -> WeylGroup {
        let rank = datum.rank();
        let rho = Coweight::rho(rank);
        let identity: Vec<Vec<i32>> = (0..rank)
            .map(|k| (0..rank).map(|l| i32::from(k == l)).collect())
            .collect();
        let mut elements = vec![WeylElement {
            id: 0,
            matrix: identity,
            length: 0,
            reduced_word: Vec::new(),
        }];
        let mut by_rho_image = HashMap::from([(rho.clone(), 0)]);
        let mut right_mul: Vec<Vec<usize>> = Vec::new();
        let mut cursor = 0;
        while cursor < elements.len() {
            let mut row = Vec::with_capacity(rank);
            for i in 0..rank {
                let w = &elements[cursor];
                // (w s_i)(ρ) = w(ρ - α_i^∨)
                let key = w.apply(&(&rho - &datum.simple_coroots[i]));
                let id = match by_rho_image.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        let matrix = datum.right_multiply_reflection(&w.matrix, i);
                        let mut reduced_word = w.reduced_word.clone();
                        reduced_word.push(i);
                        let length = w.length + 1;
                        elements.push(WeylElement {
                            id,
                            matrix,
                            length,
                            reduced_word,
                        });
                        by_rho_image.insert(key, id);
                        id
                    }
                };
                row.push(id);
            }
            right_mul.push(row);
            cursor += 1;
        }
        WeylGroup {
            elements,
            right_mul,
            by_rho_image,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All elements, sorted by `(length, id)`.
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &WeylElement {
        &self.elements[id]
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    /// The unique element of maximal length.
    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("Weyl group is never empty")
    }

    /// Id of `w · s_i`.
    pub fn right_mul(&self, w: usize, i: usize) -> usize {
        self.right_mul[w][i]
    }

    /// Id of the product of simple reflections along `word`.
    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        let rank = self.right_mul[0].len();
        word.iter().try_fold(0, |w, &i| {
            if i >= rank {
                Err(Error::IndexOutOfRange { index: i, rank })
            } else {
                Ok(self.right_mul(w, i))
            }
        })
    }

    /// Looks up an element by its matrix.
    pub fn find(&self, matrix: &[Vec<i32>]) -> Option<usize> {
        let rank = matrix.len();
        let probe = WeylElement {
            id: usize::MAX,
            matrix: matrix.to_vec(),
            length: 0,
            reduced_word: Vec::new(),
        };
        let id = *self.by_rho_image.get(&probe.apply(&Coweight::rho(rank)))?;
        (self.elements[id].matrix == matrix).then_some(id)
    }
}

/// A split adjoint root datum built from its Cartan type.
#[derive(Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: Vec<Vec<i32>>,
    symmetrizers: Vec<i32>,
    dual_symmetrizers: Vec<i64>,
    positive_roots: Vec<Vec<i32>>,
    positive_coroots: Vec<Vec<i32>>,
    coroot_coweights: Vec<Coweight>,
    simple_coroots: Vec<Coweight>,
    two_rho_weights: Vec<i64>,
    cartan_inverse: Vec<Vec<Rational64>>,
    weyl: OnceLock<WeylGroup>,
}

impl RootDatum {
    pub fn new(cartan_type: CartanType) -> RootDatum {
        let rank = cartan_type.rank();
        let norms = cartan_type.root_norms();
        let mut form = vec![vec![0i32; rank]; rank];
        for i in 0..rank {
            form[i][i] = norms[i];
        }
        for (i, j) in cartan_type.edges() {
            let ip = -norms[i].max(norms[j]) / 2;
            form[i][j] = ip;
            form[j][i] = ip;
        }
        let cartan: Vec<Vec<i32>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * form[i][j] / norms[j]).collect())
            .collect();
        let min_norm = *norms.iter().min().unwrap();
        let max_norm = *norms.iter().max().unwrap();
        let symmetrizers = norms.iter().map(|n| n / min_norm).collect();
        let dual_symmetrizers = norms.iter().map(|n| (max_norm / n) as i64).collect();

        let transpose: Vec<Vec<i32>> = (0..rank)
            .map(|i| (0..rank).map(|j| cartan[j][i]).collect())
            .collect();
        // ⟨β, α_i^∨⟩ = Σ_j β_j cartan[j][i]
        let positive_roots = root_closure(rank, |beta, i| {
            beta.iter().zip(&cartan).map(|(b, row)| b * row[i]).sum()
        });
        // ⟨α_i, γ^∨⟩ = Σ_j γ_j cartan[i][j]
        let positive_coroots = root_closure(rank, |gamma, i| {
            gamma.iter().zip(&transpose).map(|(g, row)| g * row[i]).sum()
        });
        let simple_coroots: Vec<Coweight> = (0..rank)
            .map(|j| Coweight((0..rank).map(|k| cartan[k][j]).collect()))
            .collect();
        let coroot_coweights = positive_coroots
            .iter()
            .map(|c| {
                Coweight(
                    (0..rank)
                        .map(|k| (0..rank).map(|j| c[j] * cartan[k][j]).sum())
                        .collect(),
                )
            })
            .collect();
        let two_rho_weights = (0..rank)
            .map(|j| positive_roots.iter().map(|r| r[j] as i64).sum())
            .collect();

        let cartan_inverse = invert(&cartan);
        RootDatum {
            cartan_type,
            cartan,
            symmetrizers,
            dual_symmetrizers,
            positive_roots,
            positive_coroots,
            coroot_coweights,
            simple_coroots,
            two_rho_weights,
            cartan_inverse,
            weyl: OnceLock::new(),
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    /// `cartan[i][j] = ⟨α_i, α_j^∨⟩`.
    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Positive integers `d_j` with `cartan[i][j] · d_j` symmetric.
    pub fn symmetrizers(&self) -> &[i32] {
        &self.symmetrizers
    }

    /// The symmetric matrix `cartan[i][j] · d_j`.
    pub fn symmetrized_cartan(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| self.cartan[i][j] as i64 * self.symmetrizers[j] as i64)
                    .collect()
            })
            .collect()
    }

    /// Integers `ε_j` proportional to `(α_j^∨, α_j^∨) / 2` for a
    /// Weyl-invariant form on the coweight lattice; `(μ, α_j^∨) = ε_j μ_j`.
    pub fn dual_symmetrizers(&self) -> &[i64] {
        &self.dual_symmetrizers
    }

    /// Positive roots in simple-root coordinates, in closure order.
    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    /// Positive coroots in simple-coroot coordinates, in closure order.
    pub fn positive_coroots(&self) -> &[Vec<i32>] {
        &self.positive_coroots
    }

    /// Positive coroots as coweights, aligned with [`Self::positive_coroots`].
    pub fn positive_coroot_coweights(&self) -> &[Coweight] {
        &self.coroot_coweights
    }

    pub fn simple_coroot(&self, i: usize) -> &Coweight {
        &self.simple_coroots[i]
    }

    pub fn rho(&self) -> Coweight {
        Coweight::rho(self.rank())
    }

    pub fn zero(&self) -> Coweight {
        Coweight::zero(self.rank())
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    pub fn check_rank(&self, mu: &Coweight) -> Result<()> {
        if mu.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank(),
                found: mu.coords().to_vec(),
            })
        }
    }

    /// `s_i(μ) = μ − ⟨α_i, μ⟩ α_i^∨`.
    pub fn simple_reflection_apply(&self, i: usize, mu: &Coweight) -> Result<Coweight> {
        self.check_index(i)?;
        self.check_rank(mu)?;
        Ok(self.reflect(i, mu))
    }

    /// Unchecked variant of [`Self::simple_reflection_apply`].
    pub(crate) fn reflect(&self, i: usize, mu: &Coweight) -> Coweight {
        let k = mu.0[i];
        Coweight(
            mu.0.iter()
                .enumerate()
                .map(|(row, c)| c - k * self.cartan[row][i])
                .collect(),
        )
    }

    fn right_multiply_reflection(&self, m: &[Vec<i32>], i: usize) -> Vec<Vec<i32>> {
        // (M S_i)[k][l] = M[k][l] - δ_{l,i} Σ_r M[k][r] cartan[r][i]
        m.iter()
            .map(|row| {
                let t: i32 = row.iter().zip(&self.cartan).map(|(a, c)| a * c[i]).sum();
                let mut out = row.clone();
                out[i] -= t;
                out
            })
            .collect()
    }

    /// `⟨2ρ_G, μ⟩ = Σ_{α > 0} ⟨α, μ⟩` where `ρ_G` is the half-sum of
    /// positive roots.
    pub fn pairing_two_rho(&self, mu: &Coweight) -> i64 {
        self.two_rho_weights
            .iter()
            .zip(mu.coords())
            .map(|(h, &c)| h * c as i64)
            .sum()
    }

    /// The Weyl group, enumerated on first use.
    pub fn weyl_group(&self) -> &WeylGroup {
        self.weyl.get_or_init(|| WeylGroup::enumerate(self))
    }

    /// All pairs `(w, wμ)`, one per group element.
    pub fn orbit(&self, mu: &Coweight) -> Vec<(&WeylElement, Coweight)> {
        self.weyl_group()
            .elements()
            .iter()
            .map(|w| (w, w.apply(mu)))
            .collect()
    }

    /// The distinct elements of `W·μ`.
    pub fn orbit_set(&self, mu: &Coweight) -> HashSet<Coweight> {
        let mut seen = HashSet::from([mu.clone()]);
        let mut queue = VecDeque::from([mu.clone()]);
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// The dominant element of `W·μ`, together with the parity of the number
    /// of simple reflections used to reach it.
    pub fn dominant_conjugate(&self, mu: &Coweight) -> (Coweight, usize) {
        let mut x = mu.clone();
        let mut steps = 0;
        while let Some(i) = x.0.iter().position(|&c| c < 0) {
            x = self.reflect(i, &x);
            steps += 1;
        }
        (x, steps)
    }

    /// Coordinates of `μ` in the basis of simple coroots, when `μ` lies in
    /// the coroot lattice.
    pub fn coroot_coordinates(&self, mu: &Coweight) -> Option<Vec<i64>> {
        self.cartan_inverse
            .iter()
            .map(|row| {
                let x: Rational64 = row
                    .iter()
                    .zip(mu.coords())
                    .map(|(a, &c)| a * Rational64::from_integer(c as i64))
                    .sum();
                x.is_integer().then(|| x.to_integer())
            })
            .collect()
    }

    /// Rational coroot coordinates; exact for any coweight.
    pub fn coroot_coordinates_rational(&self, mu: &Coweight) -> Vec<Rational64> {
        self.cartan_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(mu.coords())
                    .map(|(a, &c)| a * Rational64::from_integer(c as i64))
                    .sum()
            })
            .collect()
    }

    /// Dominance order `ν ≤ λ`: `λ − ν` is a non-negative integer
    /// combination of simple coroots.
    pub fn dominated_by(&self, nu: &Coweight, lambda: &Coweight) -> bool {
        self.coroot_coordinates(&(lambda - nu))
            .is_some_and(|b| b.iter().all(|&x| x >= 0))
    }

    /// Number of positive coroots sent to negative coroots by `w`.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        let positives: HashSet<&Coweight> = self.coroot_coweights.iter().collect();
        self.coroot_coweights
            .iter()
            .filter(|c| !positives.contains(&w.apply(c)))
            .count()
    }
}

fn invert(m: &[Vec<i32>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x as i64)).collect();
            r.extend((0..n).map(|j| Rational64::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != Rational64::from_integer(0))
            .expect("Cartan matrices are invertible");
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != Rational64::from_integer(0) {
                    for c in 0..2 * n {
                        let t = a[col][c] * f;
                        a[r][c] -= t;
                    }
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Positive roots of a reduced root system by closure under simple
/// reflections, in simple coordinates. `pairing(β, i)` is `⟨β, α_i^∨⟩`
/// for the system being closed.
fn root_closure(rank: usize, pairing: impl Fn(&[i32], usize) -> i32) -> Vec<Vec<i32>> {
    let simple: Vec<Vec<i32>> = (0..rank)
        .map(|i| (0..rank).map(|j| i32::from(i == j)).collect())
        .collect();
    let mut seen: HashSet<Vec<i32>> = simple.iter().cloned().collect();
    let mut roots = simple.clone();
    let mut queue: VecDeque<Vec<i32>> = simple.into();
    while let Some(beta) = queue.pop_front() {
        for i in 0..rank {
            let p = pairing(&beta, i);
            let mut image = beta.clone();
            image[i] -= p;
            if image.iter().all(|&c| c >= 0) && image.iter().any(|&c| c > 0) && seen.insert(image.clone()) {
                roots.push(image.clone());
                queue.push_back(image);
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap())
    }

    #[test]
    fn rejects_inadmissible_types() {
        for bad in ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3"] {
            let err = bad.parse::<CartanType>().unwrap_err();
            assert!(matches!(err, Error::InvalidCartanType { .. }), "{bad}: {err}");
        }
        assert!(matches!("X2".parse::<CartanType>(), Err(Error::Parse(_))));
        assert!(matches!("A".parse::<CartanType>(), Err(Error::Parse(_))));
    }

    #[test]
    fn small_types() {
        let a1 = datum("A1");
        assert_eq!(a1.cartan_matrix(), &[vec![2]]);
        assert_eq!(a1.positive_roots().len(), 1);

        let a2 = datum("A2");
        let mut roots = a2.positive_roots().to_vec();
        roots.sort();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);

        assert_eq!(datum("G2").positive_roots().len(), 6);
        assert_eq!(datum("B2").cartan_matrix(), &[vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn root_counts_match_classification() {
        for t in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let d = datum(t);
            assert_eq!(d.positive_roots().len(), d.cartan_type().positive_root_count(), "{t}");
            assert_eq!(d.positive_coroots().len(), d.positive_roots().len(), "{t}");
        }
    }

    #[test]
    fn symmetrized_cartan_is_positive_definite() {
        for t in ["A3", "B3", "C3", "D4", "E6", "F4", "G2"] {
            let d = datum(t);
            let b = d.symmetrized_cartan();
            let r = d.rank();
            for i in 0..r {
                for j in 0..r {
                    assert_eq!(b[i][j], b[j][i], "{t}");
                }
            }
            for k in 1..=r {
                let minor: Vec<Vec<i64>> = (0..k).map(|i| b[i][..k].to_vec()).collect();
                assert!(determinant(minor) > 0, "{t} minor {k}");
            }
        }
    }

    fn determinant(mut m: Vec<Vec<i64>>) -> i64 {
        // Bareiss fraction-free elimination.
        let n = m.len();
        let mut sign = 1;
        let mut prev = 1;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                    return 0;
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    #[test]
    fn reflections() {
        let a1 = datum("A1");
        let w = Coweight::new(vec![1]);
        assert_eq!(a1.simple_reflection_apply(0, &w).unwrap(), Coweight::new(vec![-1]));
        let a2 = datum("A2");
        let w1 = Coweight::fundamental(2, 0);
        let w2 = Coweight::fundamental(2, 1);
        assert_eq!(a2.simple_reflection_apply(0, &w1).unwrap().coords(), &[-1, 1]);
        assert_eq!(a2.simple_reflection_apply(0, &w2).unwrap(), w2);
        assert!(matches!(
            a2.simple_reflection_apply(2, &w1),
            Err(Error::IndexOutOfRange { index: 2, rank: 2 })
        ));
        for i in 0..2 {
            let x = Coweight::new(vec![3, -5]);
            assert_eq!(a2.reflect(i, &a2.reflect(i, &x)), x);
        }
    }

    #[test]
    fn weyl_group_orders() {
        for t in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "F4", "G2"] {
            let d = datum(t);
            assert_eq!(d.weyl_group().len() as u64, d.cartan_type().weyl_order(), "{t}");
        }
    }

    #[test]
    fn weyl_elements_are_consistent() {
        for t in ["A1", "A2", "B2", "G2", "A3"] {
            let d = datum(t);
            let group = d.weyl_group();
            let grid: Vec<Coweight> = [vec![1, -2, 3], vec![0, 4, -1], vec![-3, 1, 2]]
                .into_iter()
                .map(|c| Coweight::new(c[..d.rank()].to_vec()))
                .collect();
            let mut prev = (0, 0);
            for w in group.elements() {
                assert!((w.length, w.id) >= prev);
                prev = (w.length, w.id);
                assert_eq!(w.length, w.reduced_word.len());
                assert_eq!(d.inversion_count(w), w.length, "{t} {:?}", w.reduced_word);
                assert_eq!(group.from_word(&w.reduced_word).unwrap(), w.id);
                assert_eq!(group.find(&w.matrix), Some(w.id));
                for mu in &grid {
                    let letterwise = w
                        .reduced_word
                        .iter()
                        .rev()
                        .fold(mu.clone(), |x, &i| d.reflect(i, &x));
                    assert_eq!(w.apply(mu), letterwise);
                }
            }
            let signs: i64 = group.elements().iter().map(WeylElement::sign).sum();
            assert_eq!(signs, 0);
            assert_eq!(group.longest().length, d.positive_roots().len());
        }
    }

    #[test]
    fn two_rho_pairing() {
        let a1 = datum("A1");
        assert_eq!(a1.pairing_two_rho(&Coweight::new(vec![0])), 0);
        assert_eq!(a1.pairing_two_rho(&Coweight::new(vec![1])), 1);
        let a2 = datum("A2");
        assert_eq!(a2.pairing_two_rho(&a2.rho()), 4);
        // ⟨2ρ_G, α_i^∨⟩ = 2 for every simple coroot
        for t in ["A3", "B2", "C3", "G2", "F4"] {
            let d = datum(t);
            for i in 0..d.rank() {
                assert_eq!(d.pairing_two_rho(d.simple_coroot(i)), 2, "{t}");
            }
        }
    }

    #[test]
    fn dominance() {
        let zero = Coweight::zero(2);
        assert!(zero.is_dominant() && !zero.is_strictly_dominant());
        let rho = Coweight::rho(3);
        assert!(rho.is_strictly_dominant());
        let x = Coweight::new(vec![1, -1]);
        assert!(!x.is_dominant() && !x.is_strictly_dominant());
    }

    #[test]
    fn orbits() {
        let a2 = datum("A2");
        let zero = a2.zero();
        assert!(a2.orbit(&zero).iter().all(|(_, x)| x.is_zero()));
        let a1 = datum("A1");
        let pairs: Vec<(usize, Coweight)> = a1
            .orbit(&Coweight::new(vec![1]))
            .into_iter()
            .map(|(w, x)| (w.id, x))
            .collect();
        assert_eq!(pairs, vec![(0, Coweight::new(vec![1])), (1, Coweight::new(vec![-1]))]);
        let orbit = a2.orbit(&Coweight::fundamental(2, 0));
        assert_eq!(orbit.len(), 6);
        let distinct: HashSet<_> = orbit.iter().map(|(_, x)| x.clone()).collect();
        assert_eq!(distinct.len(), 3);
        for x in &distinct {
            assert_eq!(orbit.iter().filter(|(_, y)| y == x).count(), 2);
        }
        assert_eq!(a2.orbit_set(&Coweight::fundamental(2, 0)), distinct);
    }
}
