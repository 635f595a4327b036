//! Seeded random instances for tests and benchmarks.
//!
//! Sparse matrices give families with a mix of feasible and infeasible
//! sets; dense random skew matrices make almost every even set feasible.

use rand::Rng;

use crate::field::{FieldElement, PrimeField};
use crate::labels::Labels;
use crate::repr::{ContractionRep, ProjectedRep, TwistRep};
use crate::skew::SkewMatrix;

/// Skew matrix whose upper-triangle entries are nonzero with probability
/// `density`, uniform when nonzero.
pub fn random_skew<R: Rng + ?Sized>(
    field: PrimeField,
    labels: Labels,
    density: f64,
    rng: &mut R,
) -> SkewMatrix {
    SkewMatrix::from_upper(field, labels, |_, _| {
        if rng.gen_bool(density) {
            field.sample_nonzero(rng)
        } else {
            FieldElement::ZERO
        }
    })
}

/// `D(A) Δ S` on `v0..v{n-1}` with each element in `S` with probability 1/2.
pub fn random_twist<R: Rng + ?Sized>(
    field: PrimeField,
    n: usize,
    density: f64,
    rng: &mut R,
) -> TwistRep {
    let a = random_skew(field, Labels::numbered("v", n), density, rng);
    let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    TwistRep::from_idx(a, &s)
}

/// `D(A) / T` on `v0..v{n-1}` with `t` contracted elements. Matrices whose
/// contraction columns are dependent are redrawn, slowly raising the
/// density.
pub fn random_contraction<R: Rng + ?Sized>(
    field: PrimeField,
    n: usize,
    t: usize,
    density: f64,
    rng: &mut R,
) -> ContractionRep {
    let labels = Labels::new(
        Labels::numbered("v", n)
            .iter()
            .map(str::to_string)
            .chain(Labels::aux(0, t)),
    )
    .expect("distinct labels");
    let contracted = Labels::aux(0, t);
    let mut density = density;
    loop {
        let a = random_skew(field, labels.clone(), density, rng);
        if let Ok(rep) = ContractionRep::new(a, &contracted) {
            return rep;
        }
        density = (density + 0.05).min(1.0);
    }
}

/// Projection of a random contraction representation on `n + x` elements
/// onto its first `n`.
pub fn random_projected<R: Rng + ?Sized>(
    field: PrimeField,
    n: usize,
    x: usize,
    t: usize,
    density: f64,
    rng: &mut R,
) -> ProjectedRep {
    let inner = random_contraction(field, n + x, t, density, rng);
    let projected: Vec<String> = (n..n + x).map(|i| format!("v{i}")).collect();
    ProjectedRep::new(inner, &projected).expect("labels exist")
}
