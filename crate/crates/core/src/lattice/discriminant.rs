//! Discriminant groups `L^v / L` with their `Q/2Z`-valued quadratic forms.

#![allow(clippy::needless_range_loop)]

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{self, IntMatrix};
use super::{GramLattice, LatticeError};
use crate::arith::{fmt_rat, mod1, mod2, parse_rat, Int, Rat};
use crate::group::AbelianGroup;

/// Coordinates of a group element with respect to the form's generators.
pub type FormElement = Vec<u64>;

/// A finite quadratic form presented on cyclic generators `g_i` of orders
/// `d_i`: `q(g_i)` in `[0, 2)` and `b(g_i, g_j)` in `[0, 1)`.
///
/// Forms computed from a lattice use the invariant-factor presentation from
/// the Smith normal form of the Gram matrix and remember a dual-lattice
/// lift of each generator. Abstract forms may use any presentation as a
/// direct sum of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantForm {
    orders: Vec<u64>,
    q: Vec<Rat>,
    b: Vec<Vec<Rat>>,
    lifts: Vec<Vec<Rat>>,
    // rows of the Smith left transform for the nontrivial factors; maps
    // dual-basis coordinates to generator coordinates
    coord_map: IntMatrix,
}

impl DiscriminantForm {
    pub(super) fn of_lattice(l: &GramLattice) -> Result<Self, LatticeError> {
        if !l.is_even() {
            return Err(LatticeError::Odd);
        }
        let g = matrix::to_int_matrix(l.gram());
        let snf = matrix::smith(&g);
        let inv = l.inverse();
        let mut orders = Vec::new();
        let mut lifts = Vec::new();
        let mut coord_map = Vec::new();
        for (t, d) in snf.diagonal.iter().enumerate() {
            if d.is_zero() {
                return Err(LatticeError::Degenerate);
            }
            if *d == Int::from(1) {
                continue;
            }
            orders.push(d.to_u64().expect("discriminant factor fits in u64"));
            let y: Vec<Rat> = snf.left_inv.iter().map(|row| Rat::from_integer(row[t].clone())).collect();
            lifts.push(matrix::mat_vec(&inv, &y));
            coord_map.push(snf.left[t].clone());
        }
        let k = orders.len();
        let q = (0..k).map(|i| mod2(&l.norm(&lifts[i]))).collect();
        let b = (0..k)
            .map(|i| (0..k).map(|j| mod1(&l.pairing(&lifts[i], &lifts[j]))).collect())
            .collect();
        Ok(Self { orders, q, b, lifts, coord_map })
    }

    /// An abstract form on cyclic generators. `b` may be omitted for an
    /// orthogonal sum; its diagonal is always derived from `q`.
    pub fn from_generators(orders: Vec<u64>, q: Vec<Rat>, b: Option<Vec<Vec<Rat>>>) -> Result<Self, LatticeError> {
        let k = orders.len();
        let bad = |m: String| LatticeError::Form(m);
        if q.len() != k {
            return Err(bad(format!("{} q-values for {k} generators", q.len())));
        }
        if orders.iter().any(|&d| d < 2) {
            return Err(bad("generator orders must exceed 1".into()));
        }
        let mut bm: Vec<Vec<Rat>> = match b {
            Some(b) => {
                if b.len() != k || b.iter().any(|r| r.len() != k) {
                    return Err(bad("bilinear matrix has the wrong shape".into()));
                }
                b.iter().map(|r| r.iter().map(mod1).collect()).collect()
            }
            None => vec![vec![Rat::zero(); k]; k],
        };
        let q: Vec<Rat> = q.iter().map(mod2).collect();
        for i in 0..k {
            bm[i][i] = mod1(&q[i]);
        }
        for i in 0..k {
            let d = Rat::from_integer(Int::from(orders[i]));
            if !(&d * &d * &q[i] / Rat::from_integer(Int::from(2))).is_integer() {
                return Err(bad(format!("q(g_{i}) = {} is incompatible with order {}", fmt_rat(&q[i]), orders[i])));
            }
            for j in 0..k {
                if bm[i][j] != bm[j][i] {
                    return Err(bad("bilinear matrix is not symmetric".into()));
                }
                if !(&d * &bm[i][j]).is_integer() {
                    return Err(bad(format!("b(g_{i}, g_{j}) is incompatible with order {}", orders[i])));
                }
            }
        }
        Ok(Self { orders, q, b: bm, lifts: Vec::new(), coord_map: Vec::new() })
    }

    /// Orthogonal sum of cyclic forms `<q_1> + ... + <q_k>`.
    pub fn orthogonal(orders: Vec<u64>, q: Vec<Rat>) -> Result<Self, LatticeError> {
        Self::from_generators(orders, q, None)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn q_generators(&self) -> &[Rat] {
        &self.q
    }

    pub fn b_generators(&self) -> &[Vec<Rat>] {
        &self.b
    }

    /// Dual-lattice lifts of the generators, in the lattice basis. Empty for
    /// abstract forms.
    pub fn lifts(&self) -> &[Vec<Rat>] {
        &self.lifts
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(&self.orders)
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn identity(&self) -> FormElement {
        vec![0; self.orders.len()]
    }

    /// Every element, in mixed-radix order (first coordinate fastest).
    pub fn elements(&self) -> Vec<FormElement> {
        let mut out = vec![self.identity()];
        for (i, &d) in self.orders.iter().enumerate() {
            let prev = std::mem::take(&mut out);
            for a in 0..d {
                for e in &prev {
                    let mut e = e.clone();
                    e[i] = a;
                    out.push(e);
                }
            }
        }
        out.sort_by(|x, y| x.iter().rev().cmp(y.iter().rev()));
        out
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> FormElement {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), d)| (a + b) % d).collect()
    }

    pub fn scale(&self, k: i64, x: &[u64]) -> FormElement {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| (k * a as i64).rem_euclid(d as i64) as u64)
            .collect()
    }

    pub fn order_of(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1, |acc, (&a, &d)| acc.lcm(&(d / a.gcd(&d))))
    }

    pub fn q_value(&self, x: &[u64]) -> Rat {
        let k = x.len();
        let mut acc = Rat::zero();
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            let ai = Rat::from_integer(Int::from(x[i]));
            acc += &ai * &ai * &self.q[i];
            for j in i + 1..k {
                if x[j] != 0 {
                    acc += Rat::from_integer(Int::from(2 * x[i] * x[j])) * &self.b[i][j];
                }
            }
        }
        mod2(&acc)
    }

    pub fn b_value(&self, x: &[u64], y: &[u64]) -> Rat {
        let mut acc = Rat::zero();
        for (i, &a) in x.iter().enumerate() {
            for (j, &c) in y.iter().enumerate() {
                if a != 0 && c != 0 {
                    acc += Rat::from_integer(Int::from(a * c)) * &self.b[i][j];
                }
            }
        }
        mod1(&acc)
    }

    /// The form `-q` on the same group.
    pub fn negated(&self) -> Self {
        Self {
            orders: self.orders.clone(),
            q: self.q.iter().map(|v| mod2(&-v)).collect(),
            b: self.b.iter().map(|r| r.iter().map(|v| mod1(&-v)).collect()).collect(),
            lifts: Vec::new(),
            coord_map: Vec::new(),
        }
    }

    /// Generator coordinates of the class of a dual vector (rational
    /// coordinates in the lattice basis). `None` if the form is abstract or
    /// `x` is not in the dual lattice of `l`.
    pub fn coordinates_of(&self, l: &GramLattice, x: &[Rat]) -> Option<FormElement> {
        if self.lifts.is_empty() && !self.orders.is_empty() {
            return None;
        }
        let y: Vec<Rat> = l
            .gram()
            .iter()
            .map(|row| row.iter().zip(x).map(|(&g, xi)| Rat::from_integer(Int::from(g)) * xi).sum())
            .collect();
        if y.iter().any(|v| !v.is_integer()) {
            return None;
        }
        Some(
            self.coord_map
                .iter()
                .zip(&self.orders)
                .map(|(row, &d)| {
                    let s: Int = row.iter().zip(&y).map(|(u, v)| u * v.to_integer()).sum();
                    s.mod_floor(&Int::from(d)).to_u64().unwrap()
                })
                .collect(),
        )
    }

    /// A dual-lattice lift of an element (lattice forms only).
    pub fn lift_of(&self, x: &[u64]) -> Option<Vec<Rat>> {
        if self.lifts.is_empty() && !self.orders.is_empty() {
            return None;
        }
        let n = self.lifts.first().map_or(0, |v| v.len());
        let mut out = vec![Rat::zero(); n];
        for (a, lift) in x.iter().zip(&self.lifts) {
            for (o, v) in out.iter_mut().zip(lift) {
                *o += Rat::from_integer(Int::from(*a)) * v;
            }
        }
        Some(out)
    }

    /// Size of the subgroup generated by `gens`.
    pub fn span_size(&self, gens: &[FormElement]) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity());
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    /// Whether generator images `images` (in `target` coordinates) define a
    /// group isomorphism `phi` with `q_target(phi(x)) = sign * q_self(x)`
    /// for every element `x`. Checked exhaustively.
    pub fn is_isometry(&self, target: &DiscriminantForm, images: &[FormElement], sign: i64) -> bool {
        if images.len() != self.orders.len() || self.order() != target.order() {
            return false;
        }
        if images.iter().any(|y| y.len() != target.orders.len()) {
            return false;
        }
        // well defined: d_i * phi(g_i) = 0
        for (y, &d) in images.iter().zip(&self.orders) {
            if d % target.order_of(y) != 0 {
                return false;
            }
        }
        if target.span_size(images) as u64 != target.order() {
            return false;
        }
        let s = Rat::from_integer(Int::from(sign));
        self.elements().iter().all(|x| {
            let mut y = target.identity();
            for (a, img) in x.iter().zip(images) {
                y = target.add(&y, &target.scale(*a as i64, img));
            }
            target.q_value(&y) == mod2(&(&s * self.q_value(x)))
        })
    }

    /// Like [`Self::is_isometry`] for a map given on an arbitrary generating
    /// set `gens` of this group rather than on the canonical generators.
    pub fn is_isometry_on(&self, gens: &[FormElement], target: &DiscriminantForm, images: &[FormElement], sign: i64) -> bool {
        if gens.len() != images.len() || self.order() != target.order() {
            return false;
        }
        let s = Rat::from_integer(Int::from(sign));
        let mut map = std::collections::BTreeMap::from([(self.identity(), target.identity())]);
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            let y = map[&x].clone();
            for (g, img) in gens.iter().zip(images) {
                let (x2, y2) = (self.add(&x, g), target.add(&y, img));
                match map.get(&x2) {
                    Some(prev) if *prev != y2 => return false,
                    Some(_) => {}
                    None => {
                        map.insert(x2.clone(), y2);
                        frontier.push(x2);
                    }
                }
            }
        }
        let image: std::collections::BTreeSet<&FormElement> = map.values().collect();
        map.len() as u64 == self.order()
            && image.len() == map.len()
            && map.iter().all(|(x, y)| target.q_value(y) == mod2(&(&s * self.q_value(x))))
    }

    /// Depth-first search for an isomorphism onto `target` scaling `q` by
    /// `sign` (use `-1` for an anti-isometry). Candidates are tried in
    /// element order, so the first witness found is canonical.
    pub fn find_isometry(&self, target: &DiscriminantForm, sign: i64) -> Option<Vec<FormElement>> {
        if self.group() != target.group() {
            return None;
        }
        let s = Rat::from_integer(Int::from(sign));
        let want_q: Vec<Rat> = self.q.iter().map(|v| mod2(&(&s * v))).collect();
        let want_b: Vec<Vec<Rat>> = self
            .b
            .iter()
            .map(|r| r.iter().map(|v| mod1(&(&s * v))).collect())
            .collect();
        let elems: Vec<(FormElement, u64, Rat)> = target
            .elements()
            .into_iter()
            .map(|e| {
                let o = target.order_of(&e);
                let q = target.q_value(&e);
                (e, o, q)
            })
            .collect();
        let mut chosen: Vec<FormElement> = Vec::new();
        let found = self.isometry_dfs(target, &elems, &want_q, &want_b, &mut chosen);
        found.then(|| {
            debug_assert!(self.is_isometry(target, &chosen, sign));
            chosen
        })
    }

    fn isometry_dfs(
        &self,
        target: &DiscriminantForm,
        elems: &[(FormElement, u64, Rat)],
        want_q: &[Rat],
        want_b: &[Vec<Rat>],
        chosen: &mut Vec<FormElement>,
    ) -> bool {
        let i = chosen.len();
        if i == self.orders.len() {
            return target.span_size(chosen) as u64 == target.order();
        }
        for (y, o, q) in elems {
            if *o != self.orders[i] || *q != want_q[i] {
                continue;
            }
            if (0..i).any(|j| target.b_value(y, &chosen[j]) != want_b[i][j]) {
                continue;
            }
            chosen.push(y.clone());
            if self.isometry_dfs(target, elems, want_q, want_b, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    factors: Vec<u64>,
    q_generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b_generators: Option<Vec<Vec<String>>>,
}

impl Serialize for DiscriminantForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let k = self.orders.len();
        let off_diagonal = (0..k).any(|i| (0..k).any(|j| i != j && !self.b[i][j].is_zero()));
        FormRepr {
            factors: self.orders.clone(),
            q_generators: self.q.iter().map(fmt_rat).collect(),
            b_generators: off_diagonal.then(|| self.b.iter().map(|r| r.iter().map(fmt_rat).collect()).collect()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscriminantForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = FormRepr::deserialize(d)?;
        let parse = |s: &String| parse_rat(s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`")));
        let q = repr.q_generators.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        let b = match repr.b_generators {
            Some(rows) => Some(
                rows.iter()
                    .map(|r| r.iter().map(parse).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        DiscriminantForm::from_generators(repr.factors, q, b).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::lattice::{hyperbolic_u, DynkinLabel};

    #[test]
    fn unimodular_lattices_have_trivial_forms() {
        assert!(DynkinLabel::e(8).gram().discriminant_form().unwrap().is_trivial());
        assert!(hyperbolic_u().discriminant_form().unwrap().is_trivial());
    }

    #[test]
    fn a1_form() {
        let f = DynkinLabel::a(1).gram().discriminant_form().unwrap();
        assert_eq!(f.orders(), &[2]);
        assert_eq!(f.q_generators(), &[rat(3, 2)]);
        assert_eq!(f.lifts()[0], vec![rat(1, 2)]);
    }

    #[test]
    fn d_series_groups() {
        for n in 3..=10 {
            let f = DynkinLabel::d(n).gram().discriminant_form().unwrap();
            let expected = if n % 2 == 1 { vec![4] } else { vec![2, 2] };
            assert_eq!(f.orders(), expected.as_slice(), "D{n}");
        }
    }

    #[test]
    fn odd_lattice_is_rejected() {
        let l = GramLattice::new(vec![vec![1]]).unwrap();
        assert_eq!(l.discriminant_form(), Err(LatticeError::Odd));
    }

    #[test]
    fn coordinates_recover_generators() {
        let l = DynkinLabel::e(6).gram();
        let f = l.discriminant_form().unwrap();
        for e in f.elements() {
            let lift = f.lift_of(&e).unwrap();
            assert_eq!(f.coordinates_of(&l, &lift).unwrap(), e);
            assert_eq!(f.q_value(&e), mod2(&l.norm(&lift)));
        }
    }

    #[test]
    fn abstract_form_validation() {
        assert!(DiscriminantForm::orthogonal(vec![2], vec![rat(1, 3)]).is_err());
        assert!(DiscriminantForm::orthogonal(vec![1], vec![rat_int(0)]).is_err());
        assert!(DiscriminantForm::orthogonal(vec![4, 12], vec![rat(5, 4), rat(7, 12)]).is_ok());
    }

    #[test]
    fn serde_shape() {
        let f = DiscriminantForm::orthogonal(vec![2, 4], vec![rat(1, 2), rat(5, 4)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"factors":[2,4],"q_generators":["1/2","5/4"]}"#);
        let back: DiscriminantForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn isometry_search_finds_identity_and_rejects_mismatch() {
        let f = DynkinLabel::d(5).gram().discriminant_form().unwrap();
        assert!(f.find_isometry(&f, 1).is_some());
        // D5 has q = 5/4 mod 2 on a generator (norm -5/4 = 3/4); its negative is not isometric to itself
        let neg = f.negated();
        assert!(f.find_isometry(&neg, 1).is_none());
        let a3 = DynkinLabel::a(3).gram().discriminant_form().unwrap();
        // A3 and D5... A3 ~ D3 so its form is isometric to D3's
        let d3 = DynkinLabel::d(3).gram().discriminant_form().unwrap();
        assert!(a3.find_isometry(&d3, 1).is_some());
    }
}
