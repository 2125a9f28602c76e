//! Height pairing on sections and the search for torsion sections.
//!
//! A candidate section is described by the simple component it meets in
//! each reducible fiber (component indices as in [`crate::kodaira`]) and
//! its intersection number with the zero section. On a K3 surface
//! `chi = 2`, so `<P,P> = 4 + 2(P.O) - sum contr(P)`.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{fmt_rat, rat, rat_int, Rat};
use crate::config::Configuration;
use crate::group::AbelianGroup;
use crate::kodaira::FiberType;
use crate::lattice::matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MwError {
    #[error("assignment has {found} components, the configuration has {expected} reducible fibers")]
    AssignmentLength { expected: usize, found: usize },
    #[error("{fiber} has no simple component {component}")]
    BadComponent { fiber: FiberType, component: usize },
    #[error("configuration {0} is not extremal")]
    NotExtremal(String),
    #[error("fiber lattice of {0} is degenerate")]
    Degenerate(String),
}

/// A candidate section: one simple component per reducible fiber (`0` is
/// the identity component) and `po = (P.O)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SectionAssignment {
    pub components: Vec<usize>,
    pub po: u32,
}

impl SectionAssignment {
    pub fn new(components: Vec<usize>, po: u32) -> Self {
        Self { components, po }
    }

    pub fn zero(len: usize) -> Self {
        Self { components: vec![0; len], po: 0 }
    }
}

fn check_component(f: FiberType, c: usize) -> Result<(), MwError> {
    if f.component_group().contains(c) {
        Ok(())
    } else {
        Err(MwError::BadComponent { fiber: f, component: c })
    }
}

/// Local correction `contr(P)` for a section meeting component `c` of `f`.
pub fn contribution(f: FiberType, c: usize) -> Result<Rat, MwError> {
    check_component(f, c)?;
    if c == 0 {
        return Ok(Rat::zero());
    }
    Ok(match f {
        FiberType::III => rat(1, 2),
        FiberType::IIIStar => rat(3, 2),
        FiberType::IV => rat(2, 3),
        FiberType::IVStar => rat(4, 3),
        FiberType::I(b) => {
            let (b, i) = (i64::from(b), c as i64);
            rat(i * (b - i), b)
        }
        FiberType::IStar(_) if c == 1 => Rat::one(),
        FiberType::IStar(b) => rat(4 + i64::from(b), 4),
        // irreducible fibers only have the identity component
        _ => unreachable!("checked above"),
    })
}

/// Local correction `contr(P,Q)` for sections meeting components `i`, `j`.
pub fn pair_contribution(f: FiberType, i: usize, j: usize) -> Result<Rat, MwError> {
    check_component(f, i)?;
    check_component(f, j)?;
    if i == 0 || j == 0 {
        return Ok(Rat::zero());
    }
    if i == j {
        return contribution(f, i);
    }
    Ok(match f {
        FiberType::IV => rat(1, 3),
        FiberType::IVStar => rat(2, 3),
        FiberType::I(b) => {
            let (lo, hi) = (i.min(j) as i64, i.max(j) as i64);
            rat(lo * (i64::from(b) - hi), i64::from(b))
        }
        FiberType::IStar(_) if i == 1 || j == 1 => rat(1, 2),
        FiberType::IStar(b) => rat(2 + i64::from(b), 4),
        _ => unreachable!("groups of order 2 have one nonzero element"),
    })
}

fn check_len(c: &Configuration, components: &[usize]) -> Result<Vec<FiberType>, MwError> {
    let fibers = c.reducible_fibers();
    if fibers.len() != components.len() {
        return Err(MwError::AssignmentLength { expected: fibers.len(), found: components.len() });
    }
    Ok(fibers)
}

/// `<P,P> = 4 + 2(P.O) - sum contr(P)`.
pub fn height(c: &Configuration, p: &SectionAssignment) -> Result<Rat, MwError> {
    let fibers = check_len(c, &p.components)?;
    let mut h = rat_int(4 + 2 * i64::from(p.po));
    for (f, &k) in fibers.iter().zip(&p.components) {
        h -= contribution(*f, k)?;
    }
    Ok(h)
}

/// `<P,Q> = 2 + (P.O) + (Q.O) - (P.Q) - sum contr(P,Q)`.
pub fn pair_height(c: &Configuration, p: &SectionAssignment, q: &SectionAssignment, pq: i64) -> Result<Rat, MwError> {
    let fibers = check_len(c, &p.components)?;
    check_len(c, &q.components)?;
    let mut h = rat_int(2 + i64::from(p.po) + i64::from(q.po) - pq);
    for ((f, &i), &j) in fibers.iter().zip(&p.components).zip(&q.components) {
        h -= pair_contribution(*f, i, j)?;
    }
    Ok(h)
}

/// `4 - sum max contr`: no section with `(P.O) = 0` has smaller height.
pub fn height_lower_bound(c: &Configuration) -> Rat {
    let mut b = rat_int(4);
    for f in c.reducible_fibers() {
        let g = f.component_group();
        b -= g.elements().map(|k| contribution(f, k).expect("own component")).max().unwrap_or_else(Rat::zero);
    }
    b
}

/// Projection of a section onto the trivial lattice, written
/// `o * O + f * F + sum_k coeffs[nu][k] * Theta_{nu,k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCorrection {
    pub o: Rat,
    pub f: Rat,
    pub fibers: Vec<Vec<Rat>>,
    pub fiber_types: Vec<FiberType>,
}

impl SectionCorrection {
    /// Self-intersection of the projection in the trivial lattice.
    pub fn norm(&self) -> Rat {
        let mut n = -rat_int(2) * &self.o * &self.o + rat_int(2) * &self.o * &self.f;
        for (coeffs, f) in self.fibers.iter().zip(self.fiber_types.iter()) {
            let g = f.component_gram();
            n += matrix::bilinear(g.gram(), coeffs, coeffs);
        }
        n
    }
}

/// Solves for the component of `P` in `T (x) Q`, `T = <O, F, Theta>`.
///
/// Pairing with `F` gives `o = 1`, with `O` gives `f = 2 + (P.O)`, and with
/// the components of each fiber gives `A c = delta` for the fiber Gram
/// matrix `A`.
pub fn section_correction(c: &Configuration, p: &SectionAssignment) -> Result<SectionCorrection, MwError> {
    let fibers = check_len(c, &p.components)?;
    let mut out = Vec::with_capacity(fibers.len());
    for (f, &k) in fibers.iter().zip(&p.components) {
        check_component(*f, k)?;
        let gram = f.component_gram();
        let inv = matrix::inverse(&matrix::to_rat_matrix(gram.gram())).ok_or_else(|| MwError::Degenerate(f.to_string()))?;
        let delta: Vec<Rat> = (1..=gram.rank()).map(|j| if j == k { Rat::one() } else { Rat::zero() }).collect();
        out.push(matrix::mat_vec(&inv, &delta));
    }
    Ok(SectionCorrection {
        o: Rat::one(),
        f: rat_int(2 + i64::from(p.po)),
        fibers: out,
        fiber_types: fibers,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorsionDiagnostic {
    /// `x + y` of two zero-height candidates is a nonzero element of
    /// nonzero height, so the zero-height set is not a group.
    NotClosed { x: Vec<usize>, y: Vec<usize>, sum: Vec<usize>, height: String },
}

/// Torsion candidates found by [`torsion_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub configuration: Configuration,
    pub maximal_group: AbelianGroup,
    /// Nonzero elements of the first maximal admissible subgroup.
    pub witnesses: Vec<Vec<usize>>,
    /// All nonzero assignments with `(P.O) = 0` and height 0.
    pub zero_height_elements: Vec<Vec<usize>>,
    /// Every admissible subgroup, identity first in each.
    pub subgroups: Vec<Vec<Vec<usize>>>,
    pub diagnostics: Vec<TorsionDiagnostic>,
    /// Whether [`height_lower_bound`] settled the search.
    pub by_bound: bool,
}

impl TorsionReport {
    pub fn subgroup_structure(elements: &[Vec<usize>], fibers: &[FiberType]) -> AbelianGroup {
        let orders: Vec<u64> = elements.iter().map(|x| product_order(fibers, x)).collect();
        AbelianGroup::from_element_orders(&orders)
    }
}

fn product_add(fibers: &[FiberType], x: &[usize], y: &[usize]) -> Vec<usize> {
    fibers.iter().zip(x).zip(y).map(|((f, &a), &b)| f.component_group().add(a, b)).collect()
}

fn product_order(fibers: &[FiberType], x: &[usize]) -> u64 {
    fibers
        .iter()
        .zip(x)
        .map(|(f, &a)| f.component_group().order_of(a))
        .fold(1, num_integer::lcm)
}

/// All elements of the product of component groups, lexicographic.
fn product_elements(fibers: &[FiberType]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for f in fibers {
        let comps: Vec<usize> = f.component_group().elements().collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                comps.iter().map(move |&k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.sort();
    out
}

fn span(fibers: &[FiberType], gens: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let zero = vec![0; fibers.len()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = product_add(fibers, &x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Searches for torsion sections of an extremal configuration.
///
/// Torsion sections are disjoint from `O` and from each other, so the
/// candidates are assignments with `(P.O) = 0` and height 0. A subgroup of
/// the product of component groups is admissible when all its nonzero
/// elements have height 0 and all distinct pairs pair to 0 with `(P.Q) = 0`.
pub fn torsion_search(c: &Configuration) -> Result<TorsionReport, MwError> {
    let report = torsion_search_exhaustive(c)?;
    if height_lower_bound(c) > Rat::zero() {
        debug_assert!(report.maximal_group.is_trivial());
        return Ok(TorsionReport { by_bound: true, ..report });
    }
    Ok(report)
}

/// [`torsion_search`] without the lower-bound shortcut.
pub fn torsion_search_exhaustive(c: &Configuration) -> Result<TorsionReport, MwError> {
    if !c.is_extremal() {
        return Err(MwError::NotExtremal(c.to_string()));
    }
    let fibers = c.reducible_fibers();
    let zero = vec![0; fibers.len()];
    let sec = |x: &Vec<usize>| SectionAssignment::new(x.clone(), 0);

    let mut zero_height = Vec::new();
    for x in product_elements(&fibers) {
        if x != zero && height(c, &sec(&x))?.is_zero() {
            zero_height.push(x);
        }
    }

    let mut diagnostics = Vec::new();
    for (i, x) in zero_height.iter().enumerate() {
        for y in &zero_height[i..] {
            let s = product_add(&fibers, x, y);
            if s == zero {
                continue;
            }
            let h = height(c, &sec(&s))?;
            if !h.is_zero() {
                diagnostics.push(TorsionDiagnostic::NotClosed {
                    x: x.clone(),
                    y: y.clone(),
                    sum: s,
                    height: fmt_rat(&h),
                });
            }
        }
    }

    let admissible = |h: &BTreeSet<Vec<usize>>| -> Result<bool, MwError> {
        let nonzero: Vec<&Vec<usize>> = h.iter().filter(|x| **x != zero).collect();
        for (i, x) in nonzero.iter().enumerate() {
            if !height(c, &sec(x))?.is_zero() {
                return Ok(false);
            }
            for y in &nonzero[i + 1..] {
                if !pair_height(c, &sec(x), &sec(y), 0)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };

    // depth-first over subgroups generated by zero-height elements
    let mut found: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut visited: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut stack = vec![Vec::<Vec<usize>>::new()];
    while let Some(gens) = stack.pop() {
        let h = span(&fibers, &gens);
        let key: Vec<Vec<usize>> = h.iter().cloned().collect();
        if !visited.insert(key.clone()) || !admissible(&h)? {
            continue;
        }
        found.insert(key);
        for g in &zero_height {
            if !h.contains(g) {
                let mut next = gens.clone();
                next.push(g.clone());
                stack.push(next);
            }
        }
    }

    let subgroups: Vec<Vec<Vec<usize>>> = found.into_iter().collect();
    let best = subgroups
        .iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        .expect("the trivial subgroup is admissible");
    let maximal_group = TorsionReport::subgroup_structure(best, &fibers);
    let witnesses = best.iter().filter(|x| **x != zero).cloned().collect();

    Ok(TorsionReport {
        configuration: c.clone(),
        maximal_group,
        witnesses,
        zero_height_elements: zero_height,
        subgroups,
        diagnostics,
        by_bound: false,
    })
}
