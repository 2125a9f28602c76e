//! Realizability of Case A types through the gluing criterion: a
//! transcendental lattice `T` (even, positive definite, rank 2) and a
//! Picard candidate `S` fit into a K3 lattice iff `q_S = -q_T`.
//!
//! The Picard candidate for a type with assumed torsion subgroup `H` is the
//! trivial lattice `U + B(m)` (basis `O, F`, then the fiber components in
//! fiber numbering) extended by the classes `O + 2F + sum c Theta` of the
//! sections in `H`.

mod forms;
mod quotient;

pub use forms::{anti_isometry_exists, dual_basis_orders, reduced_binary_forms, witness_matrix, BinaryEvenForm};
pub use quotient::{d_lattice_quotient, d_lattice_quotient_bruteforce};

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{rat_int, Int, Rat};
use crate::config::{ConfigError, Configuration};
use crate::group::AbelianGroup;
use crate::lattice::{hyperbolic_u, DiscriminantForm, GramLattice, LatticeError};
use crate::mordell_weil::{section_correction, torsion_search, MwError, SectionAssignment, TorsionReport};

/// Types whose existence is quoted from known explicit surfaces rather
/// than from a constructed lattice pair.
pub const LITERATURE_TYPES: [usize; 4] = [1, 3, 4, 7];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Mw(#[from] MwError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("type {m} has no admissible torsion subgroup isomorphic to {group}")]
    NoSubgroup { m: usize, group: AbelianGroup },
    #[error("glue for type {m} is inconsistent: {reason}")]
    Glue { m: usize, reason: String },
    #[error("type {m}: bounds leave more than one group: {groups}")]
    Ambiguous { m: usize, groups: String },
}

/// Direct sum of the fiber root lattices, in fiber numbering.
pub fn fiber_root_sum(c: &Configuration) -> GramLattice {
    let parts: Vec<GramLattice> = c.reducible_fibers().iter().map(|f| f.component_gram()).collect();
    GramLattice::direct_sum(&parts)
}

/// `U + B(m)` with basis `O, F`, then the fiber components.
pub fn trivial_lattice(c: &Configuration) -> GramLattice {
    GramLattice::direct_sum([&hyperbolic_u(), &fiber_root_sum(c)])
}

/// Class of the section meeting `components` with `(P.O) = 0`, in the
/// basis of [`trivial_lattice`].
pub fn section_class(c: &Configuration, components: &[usize]) -> Result<Vec<Rat>, MwError> {
    let corr = section_correction(c, &SectionAssignment::new(components.to_vec(), 0))?;
    let mut v = vec![corr.o, corr.f];
    v.extend(corr.fibers.into_iter().flatten());
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardCandidate {
    pub m: usize,
    pub torsion: AbelianGroup,
    /// Component tuples of the torsion subgroup, identity first.
    pub subgroup: Vec<Vec<usize>>,
    pub lattice: GramLattice,
}

impl PicardCandidate {
    /// Builds `S` from a subgroup of sections of type `m` and checks that
    /// every glue class `s` has `s^2 = -2`, `s.F = 1`, `s.Theta = 1` exactly
    /// on the components it meets, and that the index-square law holds.
    pub fn build(m: usize, subgroup: &[Vec<usize>]) -> Result<Self, RealizeError> {
        let c = Configuration::case_a_type(m)?;
        let fibers = c.reducible_fibers();
        let gamma = trivial_lattice(&c);
        let glue_err = |reason: String| RealizeError::Glue { m, reason };
        let mut glue = Vec::new();
        for x in subgroup.iter().filter(|x| x.iter().any(|&k| k != 0)) {
            let s = section_class(&c, x)?;
            if gamma.norm(&s) != rat_int(-2) {
                return Err(glue_err(format!("{x:?} has square {}", gamma.norm(&s))));
            }
            // expected pairing with each basis vector: O, F, then components
            let mut expected = vec![Rat::zero(), Rat::one()];
            for (f, &k) in fibers.iter().zip(x) {
                expected.extend((1..=f.lattice_rank() as usize).map(|j| if j == k { Rat::one() } else { Rat::zero() }));
            }
            for (i, want) in expected.iter().enumerate() {
                let mut e = vec![Rat::zero(); gamma.rank()];
                e[i] = Rat::one();
                if gamma.pairing(&s, &e) != *want {
                    return Err(glue_err(format!("{x:?} pairs wrongly with basis vector {i}")));
                }
            }
            glue.push(s);
        }
        let lattice = gamma.overlattice_extend(&glue)?;
        let order = subgroup.len() as u64;
        if lattice.abs_determinant() * Int::from(order * order) != gamma.abs_determinant() {
            return Err(glue_err(format!("index of the extension is not {order}")));
        }
        if lattice.signature() != (1, gamma.rank() - 1) {
            return Err(glue_err("signature is not hyperbolic".into()));
        }
        let torsion = TorsionReport::subgroup_structure(subgroup, &fibers);
        Ok(Self { m, torsion, subgroup: subgroup.to_vec(), lattice })
    }

    pub fn abs_det(&self) -> i64 {
        self.lattice.abs_determinant().to_i64().expect("determinant fits in i64")
    }
}

/// Picard candidate for the first admissible subgroup isomorphic to `torsion`.
pub fn picard_candidate(m: usize, torsion: &AbelianGroup) -> Result<PicardCandidate, RealizeError> {
    let c = Configuration::case_a_type(m)?;
    let report = torsion_search(&c)?;
    let fibers = c.reducible_fibers();
    let h = report
        .subgroups
        .iter()
        .find(|h| TorsionReport::subgroup_structure(h, &fibers) == *torsion)
        .ok_or_else(|| RealizeError::NoSubgroup { m, group: torsion.clone() })?;
    PicardCandidate::build(m, h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormEvidence {
    pub form: BinaryEvenForm,
    pub group: AbelianGroup,
    /// Orders of the dual basis `g1`, `g2` in `T^v / T`.
    pub g_orders: [u64; 2],
    /// Column `j`: coordinates of `phi(g_j)` on the generators of `q_S`.
    pub witness: Option<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupEvidence {
    pub subgroup: Vec<Vec<usize>>,
    pub abs_det: i64,
    pub q_s: DiscriminantForm,
    pub forms: Vec<FormEvidence>,
}

impl SubgroupEvidence {
    pub fn admits_transcendental(&self) -> bool {
        self.forms.iter().any(|f| f.witness.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionReport {
    pub m: usize,
    pub assumed: AbelianGroup,
    pub excluded: bool,
    pub candidates: Vec<SubgroupEvidence>,
}

fn evidence(candidate: &PicardCandidate) -> Result<SubgroupEvidence, RealizeError> {
    let q_s = candidate.lattice.discriminant_form()?;
    let forms = reduced_binary_forms(candidate.abs_det())
        .into_iter()
        .map(|t| {
            let q_t = t.discriminant_form();
            let (o1, o2) = dual_basis_orders(&t);
            let witness = anti_isometry_exists(&q_t, &q_s).map(|img| witness_matrix(&t, &q_t, &q_s, &img));
            FormEvidence { form: t, group: q_t.group(), g_orders: [o1, o2], witness }
        })
        .collect();
    Ok(SubgroupEvidence { subgroup: candidate.subgroup.clone(), abs_det: candidate.abs_det(), q_s, forms })
}

/// Whether Mordell-Weil group `assumed` is impossible for type `m`: for
/// every admissible subgroup isomorphic to `assumed`, no reduced binary
/// form of determinant `|det S|` has a discriminant form anti-isometric to
/// `q_S`.
pub fn exclude_trivial_mw(m: usize, assumed: &AbelianGroup) -> Result<ExclusionReport, RealizeError> {
    let c = Configuration::case_a_type(m)?;
    let report = torsion_search(&c)?;
    let fibers = c.reducible_fibers();
    let mut candidates = Vec::new();
    for h in report.subgroups.iter().filter(|h| TorsionReport::subgroup_structure(h, &fibers) == *assumed) {
        candidates.push(evidence(&PicardCandidate::build(m, h)?)?);
    }
    let excluded = !candidates.iter().any(SubgroupEvidence::admits_transcendental);
    Ok(ExclusionReport { m, assumed: assumed.clone(), excluded, candidates })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Literature,
    Constructed,
    Excluded,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Literature => "literature",
            Provenance::Constructed => "constructed",
            Provenance::Excluded => "excluded",
        })
    }
}

/// A lattice pair `(T, S)` glued by an anti-isometry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub t: BinaryEvenForm,
    pub s: GramLattice,
    pub s_abs_det: i64,
    pub subgroup: Vec<Vec<usize>>,
    pub q_t: DiscriminantForm,
    pub q_s: DiscriminantForm,
    pub b: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub m: usize,
    pub configuration: Configuration,
    /// Largest torsion group allowed by the height pairing.
    pub maximal_torsion: AbelianGroup,
    /// Isomorphism classes of admissible torsion subgroups, by order.
    pub candidate_groups: Vec<AbelianGroup>,
    pub excluded_groups: Vec<AbelianGroup>,
    pub final_mw: Option<AbelianGroup>,
    pub provenance: Provenance,
    pub witness: Option<Witness>,
}

/// Combines the torsion bound with the gluing criterion for type `m`.
pub fn realize(m: usize) -> Result<Realization, RealizeError> {
    let c = Configuration::case_a_type(m)?;
    let report = torsion_search(&c)?;
    let fibers = c.reducible_fibers();
    let mut classes: Vec<AbelianGroup> = report
        .subgroups
        .iter()
        .map(|h| TorsionReport::subgroup_structure(h, &fibers))
        .collect();
    classes.sort_by_key(|g| (g.order(), g.clone()));
    classes.dedup();

    let mut excluded_groups = Vec::new();
    let mut survivors = Vec::new();
    for g in &classes {
        let ex = exclude_trivial_mw(m, g)?;
        if ex.excluded {
            excluded_groups.push(g.clone());
        } else {
            survivors.push((g.clone(), ex));
        }
    }
    if survivors.len() > 1 {
        let names: Vec<String> = survivors.iter().map(|(g, _)| g.to_string()).collect();
        return Err(RealizeError::Ambiguous { m, groups: names.join(", ") });
    }

    let (final_mw, provenance, witness) = match survivors.pop() {
        None => (None, Provenance::Excluded, None),
        Some((g, ex)) => {
            let ev = ex.candidates.iter().find(|e| e.admits_transcendental()).expect("not excluded");
            let fe = ev.forms.iter().find(|f| f.witness.is_some()).expect("has witness");
            let cand = PicardCandidate::build(m, &ev.subgroup)?;
            let witness = Witness {
                t: fe.form,
                s_abs_det: cand.abs_det(),
                s: cand.lattice,
                subgroup: ev.subgroup.clone(),
                q_t: fe.form.discriminant_form(),
                q_s: ev.q_s.clone(),
                b: fe.witness.clone().expect("checked"),
            };
            let prov = if LITERATURE_TYPES.contains(&m) { Provenance::Literature } else { Provenance::Constructed };
            (Some(g), prov, Some(witness))
        }
    };
    Ok(Realization {
        m,
        configuration: c,
        maximal_torsion: report.maximal_group,
        candidate_groups: classes,
        excluded_groups,
        final_mw,
        provenance,
        witness,
    })
}

/// Roots of the lattice spanned by the fiber components and the fiber
/// parts `s - O - 2F` of the torsion sections of `subgroup`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCheck {
    pub m: usize,
    pub roots_in_b: usize,
    pub roots_in_extension: usize,
    /// Roots of the extension that are not in `B(m)`.
    pub outside: usize,
}

/// Checks that extending `B(m)` by the fiber parts of the torsion sections
/// creates no new roots, so the fiber components still span all roots
/// orthogonal to `F`.
pub fn root_span_check(m: usize, subgroup: &[Vec<usize>]) -> Result<RootCheck, RealizeError> {
    let c = Configuration::case_a_type(m)?;
    let b = fiber_root_sum(&c);
    let mut glue = Vec::new();
    for x in subgroup.iter().filter(|x| x.iter().any(|&k| k != 0)) {
        glue.push(section_class(&c, x)?.split_off(2));
    }
    let ext = b.overlattice_extend(&glue)?;
    let basis = b.overlattice_basis(&glue);
    let roots = ext.roots();
    let outside = roots
        .iter()
        .filter(|r| {
            (0..b.rank()).any(|j| {
                let v: Rat = r.iter().zip(&basis).map(|(&ri, row)| Rat::from_integer(Int::from(ri)) * &row[j]).sum();
                !v.is_integer()
            })
        })
        .count();
    Ok(RootCheck { m, roots_in_b: b.roots().len(), roots_in_extension: roots.len(), outside })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_root_sums() {
        let det = |m| fiber_root_sum(&Configuration::case_a_type(m).unwrap()).abs_determinant();
        assert_eq!(det(6), Int::from(32));
        assert_eq!(det(2), Int::from(3));
        assert_eq!(det(11), Int::from(64));
    }

    #[test]
    fn picard_candidates() {
        let s6 = picard_candidate(6, &AbelianGroup::cyclic(2)).unwrap();
        assert_eq!(s6.abs_det(), 8);
        assert_eq!(s6.subgroup[1], vec![1, 2, 1]);
        assert_eq!(s6.lattice.rank(), 20);
        assert!(s6.lattice.is_even());
        assert_eq!(picard_candidate(2, &AbelianGroup::trivial()).unwrap().abs_det(), 3);
        assert_eq!(picard_candidate(11, &AbelianGroup::from_cyclic_orders(&[2, 2])).unwrap().abs_det(), 4);
        assert!(matches!(
            picard_candidate(2, &AbelianGroup::cyclic(2)),
            Err(RealizeError::NoSubgroup { .. })
        ));
    }

    #[test]
    fn exclusions() {
        assert!(exclude_trivial_mw(4, &AbelianGroup::trivial()).unwrap().excluded);
        assert!(!exclude_trivial_mw(6, &AbelianGroup::cyclic(2)).unwrap().excluded);
    }

    #[test]
    fn realize_small_cases() {
        let r = realize(7).unwrap();
        assert_eq!(r.final_mw, Some(AbelianGroup::cyclic(3)));
        assert_eq!(r.provenance, Provenance::Literature);
        let r = realize(12).unwrap();
        assert_eq!(r.final_mw, None);
        assert_eq!(r.provenance, Provenance::Excluded);
        assert!(realize(14).is_err());
    }
}
