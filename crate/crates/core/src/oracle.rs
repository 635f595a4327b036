//! Brute-force reference implementations over explicit set families.
//!
//! Subsets of a ground set of at most [`ORACLE_LIMIT`] elements are encoded
//! as bitmasks, bit `i` standing for the `i`-th ground element.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::labels::Labels;
use crate::repr::{ContractionRep, DeltaMatroid, Graph};
use crate::skew::GeneralMatrix;
use crate::solve::{parity_value, PairPartition};

pub const ORACLE_LIMIT: usize = 16;

/// Positions of the set bits of `mask`.
pub fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn mask(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

fn require_small(n: usize) -> Result<()> {
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// Keeps the bits of `m` outside `removed` and packs them to the bottom.
fn compress(m: u32, removed: u32, n: usize) -> u32 {
    let mut out = 0;
    let mut k = 0;
    for i in 0..n {
        if removed >> i & 1 == 1 {
            continue;
        }
        out |= (m >> i & 1) << k;
        k += 1;
    }
    out
}

/// An explicit family of subsets of a labeled ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleFamily {
    ground: Labels,
    sets: Vec<u32>,
}

impl FeasibleFamily {
    pub fn new(ground: Labels, sets: impl IntoIterator<Item = u32>) -> Result<Self> {
        require_small(ground.len())?;
        let full = if ground.len() == 32 {
            u32::MAX
        } else {
            (1u32 << ground.len()) - 1
        };
        let sets: BTreeSet<u32> = sets.into_iter().collect();
        if let Some(bad) = sets.iter().find(|&&s| s & !full != 0) {
            return Err(Error::DimensionMismatch(format!(
                "set {bad:#b} exceeds a ground set of {} elements",
                ground.len()
            )));
        }
        Ok(FeasibleFamily {
            ground,
            sets: sets.into_iter().collect(),
        })
    }

    pub fn from_label_sets<I, J, S>(ground: Labels, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut masks = Vec::new();
        for set in sets {
            let mut m = 0u32;
            for l in set {
                let i = ground
                    .position(l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
                m |= 1 << i;
            }
            masks.push(m);
        }
        FeasibleFamily::new(ground, masks)
    }

    pub fn ground(&self) -> &Labels {
        &self.ground
    }

    /// The member sets as sorted bitmasks.
    pub fn sets(&self) -> &[u32] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, m: u32) -> bool {
        self.sets.binary_search(&m).is_ok()
    }

    pub fn label_set(&self, m: u32) -> Vec<String> {
        self.ground.select(&bits(m))
    }

    pub fn label_sets(&self) -> Vec<Vec<String>> {
        self.sets.iter().map(|&m| self.label_set(m)).collect()
    }

    /// Whether all members have the same cardinality parity.
    pub fn is_even(&self) -> bool {
        self.sets
            .windows(2)
            .all(|w| w[0].count_ones() % 2 == w[1].count_ones() % 2)
    }

    /// `{F Δ S}`.
    pub fn twist(&self, s: u32) -> FeasibleFamily {
        FeasibleFamily {
            ground: self.ground.clone(),
            sets: self
                .sets
                .iter()
                .map(|&m| m ^ s)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        }
    }

    pub fn dual(&self) -> FeasibleFamily {
        self.twist(((1u64 << self.ground.len()) - 1) as u32)
    }

    fn without(&self, removed: u32, keep: impl Fn(u32) -> bool) -> FeasibleFamily {
        let n = self.ground.len();
        let ground = Labels::new(
            (0..n)
                .filter(|&i| removed >> i & 1 == 0)
                .map(|i| self.ground.get(i).to_string()),
        )
        .expect("subset of distinct labels");
        let sets: BTreeSet<u32> = self
            .sets
            .iter()
            .filter(|&&m| keep(m))
            .map(|&m| compress(m, removed, n))
            .collect();
        FeasibleFamily {
            ground,
            sets: sets.into_iter().collect(),
        }
    }

    /// Members avoiding `s`, on the ground set without `s`.
    pub fn delete(&self, s: u32) -> FeasibleFamily {
        self.without(s, |m| m & s == 0)
    }

    /// `{F \ S : S ⊆ F}` on the ground set without `s`.
    pub fn contract(&self, s: u32) -> FeasibleFamily {
        self.without(s, |m| m & s == s)
    }

    /// `{F \ X}` on the ground set without `x`.
    pub fn project(&self, x: u32) -> FeasibleFamily {
        self.without(x, |_| true)
    }

    /// The same family on `full ⊇ ground`, in the order of `full`.
    pub fn pad(&self, full: &Labels) -> Result<FeasibleFamily> {
        let map = self
            .ground
            .iter()
            .map(|l| {
                full.position(l)
                    .ok_or_else(|| Error::LabelMismatch(format!("`{l}` is missing")))
            })
            .collect::<Result<Vec<_>>>()?;
        FeasibleFamily::new(
            full.clone(),
            self.sets
                .iter()
                .map(|&m| bits(m).into_iter().map(|i| 1u32 << map[i]).sum()),
        )
    }

    pub fn weight(m: u32, w: &[i64]) -> i64 {
        bits(m).into_iter().map(|i| w[i]).sum()
    }

    /// A member of maximum weight and its weight.
    pub fn max_weight(&self, w: &[i64]) -> Option<(u32, i64)> {
        self.sets
            .iter()
            .map(|&m| (m, FeasibleFamily::weight(m, w)))
            .max_by_key(|&(_, x)| x)
    }

    fn membership(&self) -> Vec<bool> {
        let mut member = vec![false; 1 << self.ground.len()];
        for &m in &self.sets {
            member[m as usize] = true;
        }
        member
    }
}

/// The feasible sets of `d`, by testing every subset of its ground set.
pub fn enumerate_family<D: DeltaMatroid + ?Sized>(d: &D) -> Result<FeasibleFamily> {
    let n = d.ground().len();
    require_small(n)?;
    let sets = (0u32..1 << n).filter(|&m| d.is_feasible_idx(&bits(m)));
    FeasibleFamily::new(d.ground().clone(), sets.collect::<Vec<_>>())
}

fn same_ground(a: &FeasibleFamily, b: &FeasibleFamily) -> Result<()> {
    if a.ground != b.ground {
        return Err(Error::LabelMismatch(
            "families must share a ground set".into(),
        ));
    }
    Ok(())
}

/// `{F1 ∪ F2 : F1 ∩ F2 = ∅}`.
pub fn family_union(a: &FeasibleFamily, b: &FeasibleFamily) -> Result<FeasibleFamily> {
    same_ground(a, b)?;
    let mut out = BTreeSet::new();
    for &x in &a.sets {
        for &y in &b.sets {
            if x & y == 0 {
                out.insert(x | y);
            }
        }
    }
    FeasibleFamily::new(a.ground.clone(), out)
}

/// `{F1 Δ F2}`.
pub fn family_delta_sum(a: &FeasibleFamily, b: &FeasibleFamily) -> Result<FeasibleFamily> {
    same_ground(a, b)?;
    let mut out = BTreeSet::new();
    for &x in &a.sets {
        for &y in &b.sets {
            out.insert(x ^ y);
        }
    }
    FeasibleFamily::new(a.ground.clone(), out)
}

/// `{F \ X}` on `V \ X`.
pub fn family_projection<S: AsRef<str>>(f: &FeasibleFamily, x: &[S]) -> Result<FeasibleFamily> {
    Ok(f.project(mask(&f.ground.positions(x)?)))
}

/// `{F Δ S}`.
pub fn family_twist<S: AsRef<str>>(f: &FeasibleFamily, s: &[S]) -> Result<FeasibleFamily> {
    Ok(f.twist(mask(&f.ground.positions(s)?)))
}

/// A failure of the symmetric exchange axiom: no `y ∈ F1 Δ F2` makes
/// `F1 Δ {x, y}` a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeViolation {
    pub f1: Vec<String>,
    pub f2: Vec<String>,
    pub x: String,
}

impl fmt::Display for ExchangeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "symmetric exchange fails for F1 = {{{}}}, F2 = {{{}}}, x = {}",
            self.f1.join(","),
            self.f2.join(","),
            self.x
        )
    }
}

/// For all members `F1, F2` and `x ∈ F1 Δ F2` there is `y ∈ F1 Δ F2` with
/// `F1 Δ {x, y}` a member. `y = x` is allowed.
pub fn check_symmetric_exchange(f: &FeasibleFamily) -> std::result::Result<(), ExchangeViolation> {
    let member = f.membership();
    for &a in &f.sets {
        for &b in &f.sets {
            let d = a ^ b;
            for x in bits(d) {
                let ok = bits(d)
                    .into_iter()
                    .any(|y| member[(a ^ ((1 << x) | (1 << y))) as usize]);
                if !ok {
                    return Err(ExchangeViolation {
                        f1: f.label_set(a),
                        f2: f.label_set(b),
                        x: f.ground.get(x).to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Basis exchange: for bases `B1, B2` and `x ∈ B1 \ B2` some `y ∈ B2 \ B1`
/// makes `B1 - x + y` a basis.
pub fn check_basis_exchange(f: &FeasibleFamily) -> Result<bool> {
    if let Some(w) = f
        .sets
        .windows(2)
        .find(|w| w[0].count_ones() != w[1].count_ones())
    {
        return Err(Error::MixedCardinality(
            w[0].count_ones() as usize,
            w[1].count_ones() as usize,
        ));
    }
    let member = f.membership();
    for &a in &f.sets {
        for &b in &f.sets {
            for x in bits(a & !b) {
                if !bits(b & !a)
                    .into_iter()
                    .any(|y| member[(a ^ (1 << x) ^ (1 << y)) as usize])
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Vertex sets of `g` that have a perfect matching.
pub fn matching_family(g: &Graph) -> Result<FeasibleFamily> {
    let n = g.vertices().len();
    require_small(n)?;
    let mut adj = vec![0u32; n];
    for &(i, j) in g.edges() {
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let mut perfect = vec![false; 1 << n];
    perfect[0] = true;
    for m in 1u32..1 << n {
        if m.count_ones() % 2 == 1 {
            continue;
        }
        let low = m.trailing_zeros() as usize;
        let rest = m & !(1 << low);
        perfect[m as usize] = bits(adj[low] & rest)
            .into_iter()
            .any(|j| perfect[(rest & !(1 << j)) as usize]);
    }
    FeasibleFamily::new(
        g.vertices().clone(),
        (0u32..1 << n).filter(|&m| perfect[m as usize]).collect::<Vec<_>>(),
    )
}

/// Column bases of `m`.
pub fn basis_family(m: &GeneralMatrix) -> Result<FeasibleFamily> {
    let n = m.col_labels().len();
    require_small(n)?;
    let r = m.rank();
    let rows: Vec<usize> = (0..m.row_labels().len()).collect();
    let sets = (0u32..1 << n).filter(|&s| {
        s.count_ones() as usize == r && m.matrix().submatrix(&rows, &bits(s)).rank() == r
    });
    FeasibleFamily::new(m.col_labels().clone(), sets.collect::<Vec<_>>())
}

/// Independent column sets of `m`.
pub fn independent_family(m: &GeneralMatrix) -> Result<FeasibleFamily> {
    let n = m.col_labels().len();
    require_small(n)?;
    let sets = (0u32..1 << n).filter(|&s| m.matrix().columns_independent(&bits(s)));
    FeasibleFamily::new(m.col_labels().clone(), sets.collect::<Vec<_>>())
}

/// Minimum number of pairs of `pairs` broken by a member of `f`.
pub fn parity_bruteforce(f: &FeasibleFamily, pairs: &PairPartition) -> Option<usize> {
    f.sets.iter().map(|&m| pairs.broken(&bits(m))).min()
}

/// One part of a claimed block decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub ground: Vec<String>,
    pub contracted: Vec<String>,
}

/// Checks a claimed min-max certificate for parity on `d`:
///
/// 1. `A[V ∪ (T \ T0)]` is the direct sum of the blocks `A[Vi ∪ Ti]`;
/// 2. every pair lies inside a single `Vi`;
/// 3. the number of parts with `|Ti|` odd equals `δ(D, Π) + |T0|`, with
///    `δ` computed by [`parity_value`].
///
/// The parts must partition `V` and, together with `T0`, the contraction set.
pub fn check_minmax_certificate<R: Rng + ?Sized>(
    d: &ContractionRep,
    pairs: &PairPartition,
    t0: &[String],
    parts: &[Part],
    rng: &mut R,
    eps: f64,
) -> Result<bool> {
    let labels = d.matrix().labels();
    let n = labels.len();
    let v = d.ground_len();
    let malformed = |m: String| Error::MalformedDecomposition(m);
    let mut part_of = vec![usize::MAX; n];
    let mut claim = |l: &str, part: usize, want_ground: bool| -> Result<()> {
        let i = labels
            .position(l)
            .ok_or_else(|| malformed(format!("unknown element `{l}`")))?;
        if (i < v) != want_ground {
            return Err(malformed(format!("`{l}` is in the wrong set")));
        }
        if part_of[i] != usize::MAX {
            return Err(malformed(format!("`{l}` is listed twice")));
        }
        part_of[i] = part;
        Ok(())
    };
    for l in t0 {
        claim(l, parts.len(), false)?;
    }
    for (k, p) in parts.iter().enumerate() {
        for l in &p.ground {
            claim(l, k, true)?;
        }
        for l in &p.contracted {
            claim(l, k, false)?;
        }
    }
    if let Some(i) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(malformed(format!("`{}` is not covered", labels.get(i))));
    }
    let a = d.matrix().matrix();
    for i in 0..n {
        for j in i + 1..n {
            let (pi, pj) = (part_of[i], part_of[j]);
            if pi == parts.len() || pj == parts.len() || pi == pj {
                continue;
            }
            if !a.get(i, j).is_zero() {
                return Ok(false);
            }
        }
    }
    if pairs
        .pairs()
        .iter()
        .any(|&(x, y)| part_of[x] != part_of[y])
    {
        return Ok(false);
    }
    let odd = parts.iter().filter(|p| p.contracted.len() % 2 == 1).count();
    let delta = parity_value(&d.clone().into(), pairs, rng, eps)?;
    Ok(odd == delta + t0.len())
}
