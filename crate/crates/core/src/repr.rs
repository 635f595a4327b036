//! Representations of linear and projected linear delta-matroids.
//!
//! Three forms are supported:
//!
//! * [`TwistRep`]: `D(A) Δ S`, where `F` is feasible iff `A[F Δ S]` is
//!   nonsingular.
//! * [`ContractionRep`]: `D(A) / T`, where `F ⊆ V` is feasible iff
//!   `A[F ∪ T]` is nonsingular.
//! * [`ProjectedRep`]: a contraction representation over `V ∪ X` whose
//!   feasible sets are restricted to `V`, i.e. `F` is feasible iff some
//!   `Y ⊆ X` makes `F ∪ Y` feasible in the inner representation.
//!
//! Feasibility in all three forms is decided exactly by rank computations.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::labels::{normalize, sym_diff, Labels, AUX_PREFIX};
use crate::skew::{GeneralMatrix, SkewMatrix};

/// Common interface of every representation: a ground set and a
/// feasibility test on subsets of it, given as positions into the ground.
pub trait DeltaMatroid {
    fn ground(&self) -> &Labels;

    fn field(&self) -> PrimeField;

    fn is_feasible_idx(&self, set: &[usize]) -> bool;

    fn feasible<S: AsRef<str>>(&self, set: &[S]) -> Result<bool>
    where
        Self: Sized,
    {
        Ok(self.is_feasible_idx(&ground_positions(self.ground(), set)?))
    }
}

/// Positions of `set` in `ground`, reporting unknown names as a label mismatch.
pub fn ground_positions<S: AsRef<str>>(ground: &Labels, set: &[S]) -> Result<Vec<usize>> {
    let idx = ground.positions(set).map_err(|e| match e {
        Error::UnknownLabel(l) => Error::LabelMismatch(format!("`{l}` is not in the ground set")),
        e => e,
    })?;
    let n = normalize(&idx);
    if n.len() != idx.len() {
        return Err(Error::DuplicateLabel(
            "a set lists the same element twice".into(),
        ));
    }
    Ok(n)
}

/// `n` auxiliary labels that do not occur in `existing`.
pub(crate) fn fresh_aux<'a>(existing: impl IntoIterator<Item = &'a str>, n: usize) -> Vec<String> {
    let start = existing
        .into_iter()
        .filter_map(|l| l.strip_prefix(AUX_PREFIX)?.parse::<usize>().ok())
        .max()
        .map_or(0, |m| m + 1);
    Labels::aux(start, n)
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    let mut mark = vec![false; n];
    for &i in set {
        mark[i] = true;
    }
    (0..n).filter(|&i| !mark[i]).collect()
}

/// `D(A) Δ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistRep {
    matrix: SkewMatrix,
    twist: Vec<usize>,
}

impl TwistRep {
    pub fn new<S: AsRef<str>>(matrix: SkewMatrix, twist: &[S]) -> Result<Self> {
        let twist = ground_positions(matrix.labels(), twist)?;
        Ok(TwistRep { matrix, twist })
    }

    /// `D(A)` itself.
    pub fn direct(matrix: SkewMatrix) -> Self {
        TwistRep {
            matrix,
            twist: Vec::new(),
        }
    }

    pub fn from_idx(matrix: SkewMatrix, twist: &[usize]) -> Self {
        TwistRep {
            matrix,
            twist: normalize(twist),
        }
    }

    pub fn matrix(&self) -> &SkewMatrix {
        &self.matrix
    }

    pub fn twist_idx(&self) -> &[usize] {
        &self.twist
    }

    pub fn twist_set(&self) -> Vec<String> {
        self.matrix.labels().select(&self.twist)
    }

    /// `D Δ S`, by updating the twisting set.
    pub fn twist<S: AsRef<str>>(&self, s: &[S]) -> Result<TwistRep> {
        let s = ground_positions(self.ground(), s)?;
        Ok(self.twist_by_idx(&s))
    }

    pub fn twist_by_idx(&self, s: &[usize]) -> TwistRep {
        TwistRep {
            matrix: self.matrix.clone(),
            twist: sym_diff(&self.twist, s),
        }
    }

    pub fn dual(&self) -> TwistRep {
        let all: Vec<usize> = (0..self.matrix.len()).collect();
        self.twist_by_idx(&all)
    }

    pub fn to_contraction(&self) -> ContractionRep {
        twist_to_contraction(self)
    }
}

impl DeltaMatroid for TwistRep {
    fn ground(&self) -> &Labels {
        self.matrix.labels()
    }

    fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    fn is_feasible_idx(&self, set: &[usize]) -> bool {
        self.matrix
            .principal_nonsingular(&sym_diff(set, &self.twist))
    }
}

/// `D(A) / T`: the matrix is indexed by the ground set followed by the
/// contraction set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionRep {
    matrix: SkewMatrix,
    ground: Labels,
}

impl ContractionRep {
    /// Builds `D(A) / T`. The labels of `matrix` not in `contract` form the
    /// ground set, in their original order.
    pub fn new<S: AsRef<str>>(matrix: SkewMatrix, contract: &[S]) -> Result<Self> {
        let t = matrix.labels().positions(contract)?;
        if normalize(&t).len() != t.len() {
            return Err(Error::DuplicateLabel(
                "contraction set lists an element twice".into(),
            ));
        }
        let mut order = complement(matrix.len(), &t);
        let ground_len = order.len();
        order.extend(&t);
        let rep = ContractionRep::from_ordered(matrix.reorder(&order), ground_len);
        let t_cols: Vec<usize> = (ground_len..rep.matrix.len()).collect();
        if !rep.matrix.matrix().columns_independent(&t_cols) {
            return Err(Error::EmptyDeltaMatroid);
        }
        Ok(rep)
    }

    /// `D(A)` with an empty contraction set.
    pub fn direct(matrix: SkewMatrix) -> Self {
        let n = matrix.len();
        ContractionRep::from_ordered(matrix, n)
    }

    /// The representation of `{∅}` on `ground`.
    pub fn empty_set_only(field: PrimeField, ground: Labels) -> Self {
        ContractionRep::direct(SkewMatrix::zeros(field, ground))
    }

    /// Wraps a matrix whose first `ground_len` labels are the ground set.
    /// The caller guarantees that the remaining columns are independent.
    pub(crate) fn from_ordered(matrix: SkewMatrix, ground_len: usize) -> Self {
        let ground = Labels::new(matrix.labels().names()[..ground_len].iter().cloned())
            .expect("labels are distinct");
        ContractionRep { matrix, ground }
    }

    pub fn matrix(&self) -> &SkewMatrix {
        &self.matrix
    }

    pub fn ground_len(&self) -> usize {
        self.ground.len()
    }

    pub fn contracted(&self) -> &[String] {
        &self.matrix.labels().names()[self.ground.len()..]
    }

    /// Matrix positions of the contraction set.
    pub fn contracted_idx(&self) -> std::ops::Range<usize> {
        self.ground.len()..self.matrix.len()
    }

    fn with_contracted(&self, set: &[usize]) -> Vec<usize> {
        let mut idx = normalize(set);
        idx.extend(self.contracted_idx());
        idx
    }

    /// Whether some feasible set contains `s` and avoids `avoid`: the
    /// columns `s ∪ T` must be independent in `A[(V \ avoid) ∪ T]`.
    pub fn separable_idx(&self, s: &[usize], avoid: &[usize]) -> bool {
        let rows = complement(self.matrix.len(), avoid);
        let cols = self.with_contracted(s);
        let sub = self.matrix.matrix().submatrix(&rows, &cols);
        sub.rank() == cols.len()
    }

    pub fn separable<S: AsRef<str>>(&self, s: &[S], avoid: &[S]) -> Result<bool> {
        let s = ground_positions(&self.ground, s)?;
        let avoid = ground_positions(&self.ground, avoid)?;
        if let Some(&x) = s.iter().find(|x| avoid.contains(x)) {
            return Err(Error::OverlappingSets(self.ground.get(x).into()));
        }
        Ok(self.separable_idx(&s, &avoid))
    }

    /// `D Δ S`. Each element of `S` is moved into the contraction set under
    /// a fresh name, and a new ground element coupled to it by an identity
    /// entry takes its place.
    pub fn twist_by_idx(&self, s: &[usize]) -> ContractionRep {
        let s = normalize(s);
        if s.is_empty() {
            return self.clone();
        }
        let f = self.field();
        let n_old = self.matrix.len();
        let copies = fresh_aux(self.matrix.labels().iter(), s.len());
        let labels = Labels::new(
            self.matrix
                .labels()
                .iter()
                .map(str::to_string)
                .chain(copies),
        )
        .expect("fresh labels");
        let mut in_s = vec![usize::MAX; n_old];
        for (k, &x) in s.iter().enumerate() {
            in_s[x] = k;
        }
        let old_of = |i: usize| -> Option<usize> {
            if i >= n_old {
                Some(s[i - n_old])
            } else if in_s[i] != usize::MAX {
                None
            } else {
                Some(i)
            }
        };
        let a = self.matrix.matrix();
        let matrix = SkewMatrix::from_upper(f, labels, |i, j| match (old_of(i), old_of(j)) {
            (Some(x), Some(y)) => a.get(x, y),
            (None, _) if j >= n_old && s[j - n_old] == i => FieldElement::ONE,
            _ => FieldElement::ZERO,
        });
        ContractionRep::from_ordered(matrix, self.ground.len())
    }

    pub fn twist<S: AsRef<str>>(&self, s: &[S]) -> Result<ContractionRep> {
        Ok(self.twist_by_idx(&ground_positions(&self.ground, s)?))
    }

    pub fn dual(&self) -> ContractionRep {
        let all: Vec<usize> = (0..self.ground.len()).collect();
        self.twist_by_idx(&all)
    }

    /// `D \ S`: drops `S` from the matrix.
    pub fn delete_idx(&self, s: &[usize]) -> Result<ContractionRep> {
        if !self.separable_idx(&[], s) {
            return Err(Error::InfeasibleMinor(
                "every feasible set meets the deleted elements".into(),
            ));
        }
        let keep = complement(self.matrix.len(), s);
        Ok(ContractionRep::from_ordered(
            self.matrix.reorder(&keep),
            self.ground.len() - normalize(s).len(),
        ))
    }

    pub fn delete<S: AsRef<str>>(&self, s: &[S]) -> Result<ContractionRep> {
        self.delete_idx(&ground_positions(&self.ground, s)?)
    }

    /// `D / S`: moves `S` into the contraction set.
    pub fn contract_idx(&self, s: &[usize]) -> Result<ContractionRep> {
        if !self.separable_idx(s, &[]) {
            return Err(Error::InfeasibleMinor(
                "no feasible set contains the contracted elements".into(),
            ));
        }
        let s = normalize(s);
        let mut order = complement(self.ground.len(), &s);
        let ground_len = order.len();
        order.extend(self.contracted_idx());
        order.extend(&s);
        Ok(ContractionRep::from_ordered(
            self.matrix.reorder(&order),
            ground_len,
        ))
    }

    pub fn contract<S: AsRef<str>>(&self, s: &[S]) -> Result<ContractionRep> {
        self.contract_idx(&ground_positions(&self.ground, s)?)
    }

    /// Re-expresses the representation over `full ⊇ V`, in the order of
    /// `full`; new elements are loops.
    pub fn pad_ground(&self, full: &Labels) -> Result<ContractionRep> {
        for l in &self.ground {
            if !full.contains(l) {
                return Err(Error::LabelMismatch(format!(
                    "`{l}` is missing from the padded ground set"
                )));
            }
        }
        let clash: Vec<&str> = self.contracted().iter().map(String::as_str).collect();
        let rename = fresh_aux(full.iter().chain(clash.iter().copied()), clash.len());
        let rep = if clash.iter().any(|l| full.contains(l)) {
            self.rename_contracted(rename)
        } else {
            self.clone()
        };
        let target = Labels::new(
            full.iter()
                .map(str::to_string)
                .chain(rep.contracted().iter().cloned()),
        )?;
        Ok(ContractionRep::from_ordered(
            rep.matrix.embed(&target),
            full.len(),
        ))
    }

    fn rename_contracted(&self, names: Vec<String>) -> ContractionRep {
        let labels = Labels::new(self.ground.iter().map(str::to_string).chain(names))
            .expect("fresh labels");
        ContractionRep::from_ordered(
            self.matrix.relabel(labels).expect("same length"),
            self.ground.len(),
        )
    }

    pub fn to_twist(&self) -> Result<TwistRep> {
        contraction_to_twist(self)
    }

    pub fn reduce(&self) -> ContractionRep {
        reduce_contraction_set(self)
    }
}

impl DeltaMatroid for ContractionRep {
    fn ground(&self) -> &Labels {
        &self.ground
    }

    fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    fn is_feasible_idx(&self, set: &[usize]) -> bool {
        self.matrix.principal_nonsingular(&self.with_contracted(set))
    }
}

/// Contraction representation of `D(A) Δ S` with one new contracted
/// element per element of `S`, coupled to it by identity blocks:
///
/// ```text
///            V∖S      S        T
/// V∖S   [ A[V∖S]      0    A[V∖S,S] ]
/// S     [    0        0        I    ]
/// T     [ A[S,V∖S]   -I      A[S]   ]
/// ```
///
/// Each `s ∈ F ∩ S` can only be matched with its copy, which leaves
/// `A[F Δ S]` on the rest.
pub fn twist_to_contraction(d: &TwistRep) -> ContractionRep {
    let s = d.twist_idx();
    let n = d.matrix.len();
    if s.is_empty() {
        return ContractionRep::direct(d.matrix.clone());
    }
    let f = d.field();
    let mut copy_of = vec![usize::MAX; n];
    for (k, &x) in s.iter().enumerate() {
        copy_of[x] = k;
    }
    let in_s = |i: usize| copy_of[i] != usize::MAX;
    let t_labels = fresh_aux(d.matrix.labels().iter(), s.len());
    let labels = Labels::new(
        d.matrix
            .labels()
            .iter()
            .map(str::to_string)
            .chain(t_labels),
    )
    .expect("fresh labels");
    let a = d.matrix.matrix();
    let matrix = SkewMatrix::from_upper(f, labels, |i, j| {
        if i >= n {
            a.get(s[i - n], s[j - n])
        } else if j < n {
            if in_s(i) || in_s(j) {
                FieldElement::ZERO
            } else {
                a.get(i, j)
            }
        } else {
            let sj = s[j - n];
            if in_s(i) {
                if i == sj {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                }
            } else {
                a.get(i, sj)
            }
        }
    });
    ContractionRep::from_ordered(matrix, n)
}

/// Twist representation of `D(A) / T`: pivots on a basis `S ∪ T` of `A`
/// chosen greedily with `T` first, then deletes `T`.
pub fn contraction_to_twist(d: &ContractionRep) -> Result<TwistRep> {
    let n = d.matrix.len();
    let v = d.ground_len();
    let order: Vec<usize> = (v..n).chain(0..v).collect();
    let basis = d.matrix.matrix().lexmin_column_basis(&order);
    if basis.iter().filter(|&&b| b >= v).count() != n - v {
        return Err(Error::EmptyDeltaMatroid);
    }
    let s: Vec<usize> = normalize(&basis.iter().copied().filter(|&b| b < v).collect::<Vec<_>>());
    let pivoted = d.matrix.pivot_idx(&basis)?;
    let ground: Vec<usize> = (0..v).collect();
    Ok(TwistRep::from_idx(pivoted.reorder(&ground), &s))
}

/// Shrinks the contraction set to at most `|V|` elements by pivoting on a
/// column basis `B` of `A[T]` and deleting `B`.
pub fn reduce_contraction_set(d: &ContractionRep) -> ContractionRep {
    let v = d.ground_len();
    let n = d.matrix.len();
    if n == v {
        return d.clone();
    }
    let t: Vec<usize> = d.contracted_idx().collect();
    let at = d.matrix.matrix().principal(&t);
    let local: Vec<usize> = (0..t.len()).collect();
    let basis: Vec<usize> = at
        .lexmin_column_basis(&local)
        .into_iter()
        .map(|i| t[i])
        .collect();
    if basis.is_empty() {
        return d.clone();
    }
    let pivoted = d
        .matrix
        .pivot_idx(&basis)
        .expect("a column basis of a skew matrix spans a nonsingular principal block");
    let keep = complement(n, &basis);
    ContractionRep::from_ordered(pivoted.reorder(&keep), v)
}

/// `D' | X`: an inner contraction representation over `V ∪ X` whose
/// ground lists `V` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedRep {
    inner: ContractionRep,
    ground: Labels,
}

impl ProjectedRep {
    /// Projects the elements `project` of `inner`'s ground set away.
    pub fn new<S: AsRef<str>>(inner: ContractionRep, project: &[S]) -> Result<Self> {
        let x = ground_positions(inner.ground(), project)?;
        let mut order = complement(inner.ground_len(), &x);
        let visible = order.len();
        order.extend(&x);
        order.extend(inner.contracted_idx());
        let inner = ContractionRep::from_ordered(inner.matrix.reorder(&order), inner.ground_len());
        Ok(ProjectedRep::from_ordered(inner, visible))
    }

    pub(crate) fn from_ordered(inner: ContractionRep, visible_len: usize) -> Self {
        let ground = Labels::new(inner.ground.names()[..visible_len].iter().cloned())
            .expect("labels are distinct");
        ProjectedRep { inner, ground }
    }

    pub fn inner(&self) -> &ContractionRep {
        &self.inner
    }

    pub fn visible_len(&self) -> usize {
        self.ground.len()
    }

    pub fn projected(&self) -> &[String] {
        &self.inner.ground.names()[self.ground.len()..]
    }

    /// Inner ground positions of the projection set.
    pub fn projected_idx(&self) -> std::ops::Range<usize> {
        self.ground.len()..self.inner.ground_len()
    }

    pub fn twist_by_idx(&self, s: &[usize]) -> ProjectedRep {
        ProjectedRep::from_ordered(self.inner.twist_by_idx(s), self.ground.len())
    }

    pub fn twist<S: AsRef<str>>(&self, s: &[S]) -> Result<ProjectedRep> {
        Ok(self.twist_by_idx(&ground_positions(&self.ground, s)?))
    }

    pub fn dual(&self) -> ProjectedRep {
        let all: Vec<usize> = (0..self.ground.len()).collect();
        self.twist_by_idx(&all)
    }

    pub fn delete_idx(&self, s: &[usize]) -> Result<ProjectedRep> {
        let visible = self.ground.len() - normalize(s).len();
        Ok(ProjectedRep::from_ordered(self.inner.delete_idx(s)?, visible))
    }

    pub fn delete<S: AsRef<str>>(&self, s: &[S]) -> Result<ProjectedRep> {
        self.delete_idx(&ground_positions(&self.ground, s)?)
    }

    pub fn contract_idx(&self, s: &[usize]) -> Result<ProjectedRep> {
        let visible = self.ground.len() - normalize(s).len();
        Ok(ProjectedRep::from_ordered(self.inner.contract_idx(s)?, visible))
    }

    pub fn contract<S: AsRef<str>>(&self, s: &[S]) -> Result<ProjectedRep> {
        self.contract_idx(&ground_positions(&self.ground, s)?)
    }

    /// Whether some feasible set contains `s` and avoids `avoid`.
    pub fn separable_idx(&self, s: &[usize], avoid: &[usize]) -> bool {
        self.inner.separable_idx(s, avoid)
    }

    /// Additionally projects away the ground elements `s`.
    pub fn project_idx(&self, s: &[usize]) -> ProjectedRep {
        let s = normalize(s);
        let mut order = complement(self.ground.len(), &s);
        let visible = order.len();
        order.extend(&s);
        order.extend(self.ground.len()..self.inner.matrix.len());
        let inner = ContractionRep::from_ordered(
            self.inner.matrix.reorder(&order),
            self.inner.ground_len(),
        );
        ProjectedRep::from_ordered(inner, visible)
    }

    /// Re-expresses the representation over `full ⊇ V`; new elements are
    /// loops. Projection elements are renamed if they clash with `full`.
    pub fn pad_ground(&self, full: &Labels) -> Result<ProjectedRep> {
        if let Some(l) = self.ground.iter().find(|l| !full.contains(l)) {
            return Err(Error::LabelMismatch(format!(
                "`{l}` is missing from the padded ground set"
            )));
        }
        let x = self.projected();
        let inner = if x.iter().any(|l| full.contains(l)) {
            let renamed = fresh_aux(
                full.iter().chain(self.inner.matrix.labels().iter()),
                x.len(),
            );
            let labels = Labels::new(
                self.ground
                    .iter()
                    .map(str::to_string)
                    .chain(renamed)
                    .chain(self.inner.contracted().iter().cloned()),
            )?;
            ContractionRep::from_ordered(
                self.inner.matrix.relabel(labels)?,
                self.inner.ground_len(),
            )
        } else {
            self.inner.clone()
        };
        let ground = Labels::new(
            full.iter()
                .map(str::to_string)
                .chain(inner.ground.names()[self.ground.len()..].iter().cloned()),
        )?;
        Ok(ProjectedRep::from_ordered(inner.pad_ground(&ground)?, full.len()))
    }
}

impl From<ContractionRep> for ProjectedRep {
    fn from(inner: ContractionRep) -> Self {
        let v = inner.ground_len();
        ProjectedRep::from_ordered(inner, v)
    }
}

impl DeltaMatroid for ProjectedRep {
    fn ground(&self) -> &Labels {
        &self.ground
    }

    fn field(&self) -> PrimeField {
        self.inner.field()
    }

    /// `F` is feasible iff the columns `F ∪ T` are independent in
    /// `A[F ∪ X ∪ T]`: any such set extends to a column basis `B`, and
    /// `A[B]` is then nonsingular.
    fn is_feasible_idx(&self, set: &[usize]) -> bool {
        let set = normalize(set);
        let mut rows = set.clone();
        rows.extend(self.projected_idx());
        rows.extend(self.inner.contracted_idx());
        let mut cols: Vec<usize> = (0..set.len()).collect();
        cols.extend(set.len() + self.projected_idx().len()..rows.len());
        let sub = self.inner.matrix.matrix().principal(&rows);
        sub.columns_independent(&cols)
    }
}

/// Any of the three representation forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    Twist(TwistRep),
    Contraction(ContractionRep),
    Projected(ProjectedRep),
}

impl Representation {
    pub fn is_projected(&self) -> bool {
        matches!(self, Representation::Projected(_))
    }

    /// The contraction form, or `None` for projected representations.
    pub fn to_contraction(&self) -> Option<ContractionRep> {
        match self {
            Representation::Twist(t) => Some(twist_to_contraction(t)),
            Representation::Contraction(c) => Some(c.clone()),
            Representation::Projected(_) => None,
        }
    }

    /// Every form viewed as a projected representation (with `X = ∅` for
    /// the non-projected ones).
    pub fn to_projected(&self) -> ProjectedRep {
        match self {
            Representation::Projected(p) => p.clone(),
            other => other.to_contraction().expect("not projected").into(),
        }
    }

    pub fn twist_by_idx(&self, s: &[usize]) -> Representation {
        match self {
            Representation::Twist(t) => Representation::Twist(t.twist_by_idx(s)),
            Representation::Contraction(c) => Representation::Contraction(c.twist_by_idx(s)),
            Representation::Projected(p) => Representation::Projected(p.twist_by_idx(s)),
        }
    }

    pub fn dual(&self) -> Representation {
        let all: Vec<usize> = (0..self.ground().len()).collect();
        self.twist_by_idx(&all)
    }

    pub fn delete_idx(&self, s: &[usize]) -> Result<Representation> {
        Ok(match self {
            Representation::Projected(p) => Representation::Projected(p.delete_idx(s)?),
            other => Representation::Contraction(other.to_contraction().unwrap().delete_idx(s)?),
        })
    }

    pub fn contract_idx(&self, s: &[usize]) -> Result<Representation> {
        Ok(match self {
            Representation::Projected(p) => Representation::Projected(p.contract_idx(s)?),
            other => {
                Representation::Contraction(other.to_contraction().unwrap().contract_idx(s)?)
            }
        })
    }

    pub fn separable_idx(&self, s: &[usize], avoid: &[usize]) -> bool {
        match self {
            Representation::Projected(p) => p.separable_idx(s, avoid),
            other => other.to_contraction().unwrap().separable_idx(s, avoid),
        }
    }

    /// Projects away the ground elements `s`.
    pub fn project_idx(&self, s: &[usize]) -> Representation {
        if s.is_empty() {
            return self.clone();
        }
        Representation::Projected(self.to_projected().project_idx(s))
    }

    pub fn pad_ground(&self, full: &Labels) -> Result<Representation> {
        Ok(match self {
            Representation::Projected(p) => Representation::Projected(p.pad_ground(full)?),
            other => Representation::Contraction(other.to_contraction().unwrap().pad_ground(full)?),
        })
    }
}

impl DeltaMatroid for Representation {
    fn ground(&self) -> &Labels {
        match self {
            Representation::Twist(t) => t.ground(),
            Representation::Contraction(c) => c.ground(),
            Representation::Projected(p) => p.ground(),
        }
    }

    fn field(&self) -> PrimeField {
        match self {
            Representation::Twist(t) => t.field(),
            Representation::Contraction(c) => c.field(),
            Representation::Projected(p) => p.field(),
        }
    }

    fn is_feasible_idx(&self, set: &[usize]) -> bool {
        match self {
            Representation::Twist(t) => t.is_feasible_idx(set),
            Representation::Contraction(c) => c.is_feasible_idx(set),
            Representation::Projected(p) => p.is_feasible_idx(set),
        }
    }
}

impl From<TwistRep> for Representation {
    fn from(r: TwistRep) -> Self {
        Representation::Twist(r)
    }
}

impl From<ContractionRep> for Representation {
    fn from(r: ContractionRep) -> Self {
        Representation::Contraction(r)
    }
}

impl From<ProjectedRep> for Representation {
    fn from(r: ProjectedRep) -> Self {
        Representation::Projected(r)
    }
}

/// A simple undirected graph on labeled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Labels,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(vertices: Labels, edges: &[(S, S)]) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = vertices
                .position(a)
                .ok_or_else(|| Error::UnknownLabel(a.into()))?;
            let j = vertices
                .position(b)
                .ok_or_else(|| Error::UnknownLabel(b.into()))?;
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at `{a}`")));
            }
            let e = (i.min(j), i.max(j));
            if out.contains(&e) {
                return Err(Error::InvalidGraph(format!("parallel edge `{a}`-`{b}`")));
            }
            out.push(e);
        }
        Ok(Graph {
            vertices,
            edges: out,
        })
    }

    pub fn vertices(&self) -> &Labels {
        &self.vertices
    }

    /// Edges as vertex positions `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Matching delta-matroid of `g`: the Tutte matrix with every edge variable
/// replaced by a uniform field element. Infeasible sets are never
/// feasible; a set with a perfect matching is feasible with probability at
/// least `1 - eps`.
pub fn matching_dm<R: Rng + ?Sized>(
    field: PrimeField,
    g: &Graph,
    rng: &mut R,
    eps: f64,
) -> Result<ContractionRep> {
    field.require_for_eps(g.vertices.len(), eps)?;
    let mut m = SkewMatrix::zeros(field, g.vertices.clone());
    for &(i, j) in &g.edges {
        m.set_pair(i, j, field.sample_uniform(rng));
    }
    Ok(ContractionRep::direct(m))
}

/// `[[O, A], [-Aᵀ, O]]` over `V ∪ R`, `R` fresh names for the rows of `m`.
fn matroid_matrix(m: &GeneralMatrix) -> (SkewMatrix, usize) {
    let f = m.field();
    let v = m.col_labels().len();
    let rows = fresh_aux(m.col_labels().iter(), m.row_labels().len());
    let labels = Labels::new(m.col_labels().iter().map(str::to_string).chain(rows))
        .expect("fresh labels");
    let a = m.matrix();
    let skew = SkewMatrix::from_upper(f, labels, |i, j| {
        if i < v && j >= v {
            f.neg(a.get(j - v, i))
        } else {
            FieldElement::ZERO
        }
    });
    (skew, v)
}

/// Bases of the column matroid of a full-row-rank matrix.
pub fn matroid_bases_dm(m: &GeneralMatrix) -> Result<ContractionRep> {
    let k = m.row_labels().len();
    let rank = m.rank();
    if rank < k {
        return Err(Error::RankDeficient { rank, rows: k });
    }
    let (skew, v) = matroid_matrix(m);
    Ok(ContractionRep::from_ordered(skew, v))
}

/// Independent sets of the column matroid of `m`.
pub fn matroid_independent_dm(m: &GeneralMatrix) -> ProjectedRep {
    let (skew, v) = matroid_matrix(m);
    let n = skew.len();
    ProjectedRep::from_ordered(ContractionRep::from_ordered(skew, n), v)
}
