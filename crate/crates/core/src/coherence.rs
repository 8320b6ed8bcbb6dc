//! The copying endofunctor `δ = 𝟚 ⊗ (−)` and executable checks of the
//! commuting diagrams it satisfies.
//!
//! Each check evaluates both legs of a diagram at a concrete instance, using
//! the permutation matrices of the canonical isomorphisms and ordinary
//! composition, and reports the largest entrywise discrepancy.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::morphisms::{Mor, Semiring};
use crate::random::{rng_for, RandomMor};
use crate::shapes::{dl_many, dl_perm, dr_perm, s_perm, sigma_perm, ObjExpr, Perm};

/// Outcome of evaluating one diagram at one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub diagram: String,
    pub instance: String,
    pub semiring: String,
    pub seed: Option<u64>,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl DiagramReport {
    pub fn new(
        diagram: impl Into<String>,
        instance: impl Into<String>,
        semiring: impl Into<String>,
        discrepancy: f64,
        tolerance: f64,
    ) -> Self {
        DiagramReport {
            diagram: diagram.into(),
            instance: instance.into(),
            semiring: semiring.into(),
            seed: None,
            discrepancy,
            tolerance,
            // NaN never passes
            pass: discrepancy <= tolerance,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Re-judge against a different tolerance. Exact checks (tolerance 0)
    /// keep theirs.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        if self.tolerance > 0.0 {
            self.tolerance = tolerance;
            self.pass = self.discrepancy <= tolerance;
        }
        self
    }
}

/// `δ(f) = 1_𝟚 ⊗ f`.
pub fn delta<S: Semiring>(f: &Mor<S>) -> Mor<S> {
    Mor::identity(&ObjExpr::two()).mtensor(f)
}

fn iso<S: Semiring>(p: &Perm) -> Mor<S> {
    Mor::from_perm(p)
}

/// Composite of arrows listed in the order they are applied.
fn path<S: Semiring>(arrows: &[Mor<S>]) -> Result<Mor<S>> {
    let (first, rest) = arrows.split_first().expect("non-empty path");
    rest.iter().try_fold(first.clone(), |acc, next| next.compose(&acc))
}

fn compare<S: Semiring>(lhs: &Mor<S>, rhs: &Mor<S>) -> Result<f64> {
    lhs.dom().expect_equiv(rhs.dom())?;
    lhs.cod().expect_equiv(rhs.cod())?;
    lhs.max_discrepancy(rhs)
}

fn copy_iso(x: &ObjExpr) -> Perm {
    dr_perm(&ObjExpr::Unit, &ObjExpr::Unit, x)
}

fn describe<S: Semiring>(f: &Mor<S>) -> String {
    format!("f: {} -> {}", f.dom(), f.cod())
}

/// `dr_{I,I,Y} ∘ (1_𝟚 ⊗ f) ∘ dr⁻¹_{I,I,X} = f ⊕ f`.
pub fn check_copy<S: Semiring>(f: &Mor<S>) -> Result<DiagramReport> {
    let (x, y) = (f.dom(), f.cod());
    let lhs = path(&[iso(&copy_iso(x).invert()), delta(f), iso(&copy_iso(y))])?;
    let rhs = f.dsum(f);
    Ok(DiagramReport::new("copy", describe(f), S::NAME, compare(&lhs, &rhs)?, S::TOLERANCE))
}

/// Naturality of `𝟚 ⊗ X ≅ X ⊕ X` in `X`. The component typed `𝟚 ⊗ X → X ⊕ X`
/// is the right distributor `dr_{I,I,X}`; the square is also checked for the
/// component `dl_{X,I,I} ∘ σ_{𝟚,X}` that goes through the left distributor.
pub fn check_diagonal_nat<S: Semiring>(f: &Mor<S>) -> Result<DiagramReport> {
    let (x, y) = (f.dom(), f.cod());
    let ff = f.dsum(f);
    let by_dr = compare(
        &path(&[delta(f), iso(&copy_iso(y))])?,
        &path(&[iso(&copy_iso(x)), ff.clone()])?,
    )?;
    let via_dl = |z: &ObjExpr| -> Result<Perm> {
        dl_perm(z, &ObjExpr::Unit, &ObjExpr::Unit).compose(&sigma_perm(&ObjExpr::two(), z))
    };
    let by_dl = compare(
        &path(&[delta(f), iso(&via_dl(y)?)])?,
        &path(&[iso(&via_dl(x)?), ff])?,
    )?;
    Ok(DiagramReport::new("diagonal_nat", describe(f), S::NAME, by_dr.max(by_dl), S::TOLERANCE))
}

/// Additive monoidality of `δ` and the multiplicative obstruction.
///
/// For `f : A → A'` and `g : B → B'` this checks
/// `dl_{𝟚,A',B'} ∘ δ(f ⊕ g) = (δf ⊕ δg) ∘ dl_{𝟚,A,B}`, that `δ(0)` is
/// zero-dimensional, and that `P = 1_𝟚 ⊗ σ_{A,𝟚} ⊗ 1_B` carries `δ(A) ⊗ δ(B)`
/// onto `δ²(A ⊗ B)` with `P ∘ (δf ⊗ δg) = δ²(f ⊗ g) ∘ P`.
pub fn check_monoidality<S: Semiring>(
    a: &ObjExpr,
    b: &ObjExpr,
    f: &Mor<S>,
    g: &Mor<S>,
) -> Result<DiagramReport> {
    a.expect_equiv(f.dom())?;
    b.expect_equiv(g.dom())?;
    let two = ObjExpr::two();
    let (a2, b2) = (f.cod(), g.cod());

    let additive = compare(
        &path(&[delta(&f.dsum(g)), iso(&dl_perm(&two, a2, b2))])?,
        &path(&[iso(&dl_perm(&two, a, b)), delta(f).dsum(&delta(g))])?,
    )?;
    let zero_ok = delta(&Mor::<S>::identity(&ObjExpr::Zero)).rows() == 0;

    let shuffle = |x: &ObjExpr, y: &ObjExpr| {
        Perm::identity(&two).mtensor(&sigma_perm(x, &two)).mtensor(&Perm::identity(y))
    };
    let p = shuffle(a, b);
    let objects_ok = p.source().equiv(&ObjExpr::prod_all([two.clone(), a.clone(), two.clone(), b.clone()]))
        && p.target().equiv(&ObjExpr::prod_all([two.clone(), two.clone(), a.clone(), b.clone()]));
    let multiplicative = compare(
        &path(&[delta(f).mtensor(&delta(g)), iso(&shuffle(a2, b2))])?,
        &path(&[iso(&p), delta(&delta(&f.mtensor(g)))])?,
    )?;

    let discrepancy = if zero_ok && objects_ok { additive.max(multiplicative) } else { f64::INFINITY };
    Ok(DiagramReport::new(
        "monoidality",
        format!("A={a} B={b} {} {}", describe(f), describe(g)),
        S::NAME,
        discrepancy,
        S::TOLERANCE,
    ))
}

/// Left leg of the δ/symmetry diagram, `𝟚⊗A⊗(B⊕C) → AB ⊕ AB ⊕ AC ⊕ AC`, as
/// its four factors in order of application.
fn deltasym_left(a: &ObjExpr, b: &ObjExpr, c: &ObjExpr) -> [Perm; 4] {
    let (two, unit) = (ObjExpr::two(), ObjExpr::Unit);
    let bc = ObjExpr::sum(b.clone(), c.clone());
    [
        sigma_perm(&two, a).mtensor(&Perm::identity(&bc)),
        Perm::identity(a).mtensor(&dl_perm(&two, b, c)),
        Perm::identity(a).mtensor(&dr_perm(&unit, &unit, b).dsum(&dr_perm(&unit, &unit, c))),
        dl_many(a, &[b.clone(), b.clone(), c.clone(), c.clone()]),
    ]
}

fn deltasym_right(a: &ObjExpr, b: &ObjExpr, c: &ObjExpr) -> [Perm; 3] {
    let unit = ObjExpr::Unit;
    let ab = ObjExpr::prod(a.clone(), b.clone());
    let ac = ObjExpr::prod(a.clone(), c.clone());
    [
        Perm::identity(&ObjExpr::two()).mtensor(&dl_perm(a, b, c)),
        dr_perm(&unit, &unit, &ObjExpr::sum(ab.clone(), ac.clone())),
        Perm::identity(&ab).dsum(&s_perm(&ac, &ab)).dsum(&Perm::identity(&ac)),
    ]
}

fn compose_perms(perms: &[Perm]) -> Result<Perm> {
    let (first, rest) = perms.split_first().expect("non-empty path");
    rest.iter().try_fold(first.clone(), |acc, next| next.compose(&acc))
}

/// The two legs of the δ/symmetry diagram as raw index maps.
pub fn deltasym_paths(a: &ObjExpr, b: &ObjExpr, c: &ObjExpr) -> Result<(Perm, Perm)> {
    let left = compose_perms(&deltasym_left(a, b, c))?;
    let right = compose_perms(&deltasym_right(a, b, c))?;
    left.source().expect_equiv(right.source())?;
    left.target().expect_equiv(right.target())?;
    Ok((left, right))
}

/// δ and the symmetries: both legs agree as permutations. The discrepancy is
/// the number of indices on which they differ.
pub fn check_deltasym(a: &ObjExpr, b: &ObjExpr, c: &ObjExpr) -> Result<DiagramReport> {
    let (left, right) = deltasym_paths(a, b, c)?;
    let mismatches = left.map().iter().zip(right.map()).filter(|(l, r)| l != r).count();
    Ok(DiagramReport::new(
        "deltasym",
        format!("A={a} B={b} C={c}"),
        "permutation",
        mismatches as f64,
        0.0,
    ))
}

/// The naturality ladder: the left leg of the δ/symmetry diagram at `(B, C)`
/// and at `(Y, Z)`, joined by the five horizontal arrows induced by
/// `f : B → Y` and `g : C → Z`. Every rung and the outer rectangle are checked.
pub fn check_naturality_fig1<S: Semiring>(a: &ObjExpr, f: &Mor<S>, g: &Mor<S>) -> Result<DiagramReport> {
    let two = ObjExpr::two();
    let id_a = Mor::<S>::identity(a);
    let id_2 = Mor::<S>::identity(&two);
    let fg = f.dsum(g);

    let left: Vec<Mor<S>> = deltasym_left(a, f.dom(), g.dom()).iter().map(iso).collect();
    let right: Vec<Mor<S>> = deltasym_left(a, f.cod(), g.cod()).iter().map(iso).collect();
    let id_a_f = id_a.mtensor(f);
    let id_a_g = id_a.mtensor(g);
    let rungs = [
        id_2.mtensor(&id_a).mtensor(&fg),
        id_a.mtensor(&id_2).mtensor(&fg),
        id_a.mtensor(&delta(f).dsum(&delta(g))),
        id_a.mtensor(&Mor::dsum_all([f, f, g, g])),
        Mor::dsum_all([&id_a_f, &id_a_f, &id_a_g, &id_a_g]),
    ];

    let mut worst: f64 = 0.0;
    for k in 0..4 {
        let d = compare(&path(&[rungs[k].clone(), right[k].clone()])?, &path(&[left[k].clone(), rungs[k + 1].clone()])?)?;
        worst = worst.max(d);
    }
    let mut outer_top = vec![rungs[0].clone()];
    outer_top.extend(right.iter().cloned());
    let mut outer_bottom = left.clone();
    outer_bottom.push(rungs[4].clone());
    worst = worst.max(compare(&path(&outer_top)?, &path(&outer_bottom)?)?);

    Ok(DiagramReport::new(
        "naturality_fig1",
        format!("A={a} {} {}", describe(f), describe(g)),
        S::NAME,
        worst,
        S::TOLERANCE,
    ))
}

/// One random instance of every diagram per trial. Trials run in parallel;
/// reports come back in trial order.
pub fn run_suite<S: RandomMor>(root_seed: u64, trials: usize, max_dim: usize) -> Result<Vec<DiagramReport>> {
    let label = format!("coherence/{}", S::NAME);
    let per_trial: Vec<Result<Vec<DiagramReport>>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_for(root_seed, &label, t);
            let seed = crate::random::derive_seed(root_seed, &label, t);
            let mut atom = |name: &str| {
                use rand::Rng;
                ObjExpr::atom(name, rng.random_range(1..=max_dim))
            };
            let (a, b, c, y, z) = (atom("A"), atom("B"), atom("C"), atom("Y"), atom("Z"));
            let f = S::random_mor(&b, &y, &mut rng);
            let g = S::random_mor(&c, &z, &mut rng);
            let u = S::random_iso(&a, &mut rng);
            let v = S::random_iso(&b, &mut rng);
            Ok(vec![
                check_copy(&f)?.with_seed(seed),
                check_diagonal_nat(&g)?.with_seed(seed),
                check_monoidality(&a, &b, &u, &v)?.with_seed(seed),
                check_deltasym(&a, &b, &c)?.with_seed(seed),
                check_naturality_fig1(&a, &f, &g)?.with_seed(seed),
            ])
        })
        .collect();
    let mut out = Vec::with_capacity(trials * 5);
    for r in per_trial {
        out.extend(r?);
    }
    Ok(out)
}
