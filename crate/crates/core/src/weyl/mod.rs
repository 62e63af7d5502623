//! Finite signed-permutation groups: the hyperoctahedral groups B_n, their
//! index-2 subgroups W(D_n) (even sign changes), symmetric groups S_n (all
//! signs +), and the order-48 group (Z/2)^3 : S_3 that acts on the weights
//! of a Mumford-type abelian fourfold.
//!
//! An element sends e_i to signs[i] * e_{perm[i]}; composition applies the
//! right factor first. Conjugacy classes of B_n are classified by signed
//! cycle types (cycle lengths with the product of signs along each cycle).

mod lemma42;

pub use lemma42::{c4_negative_control, jordan_control_s3, lemma42_check, Lemma42Report};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("group too large to enumerate (n = {0})")]
    TooLarge(usize),
    #[error("claimed subgroup is not closed under the group law")]
    NotSubgroup,
    #[error("unsupported parameter n = {0} for this check")]
    BadParameter(usize),
}

/// Signed permutation: e_i -> signs[i] * e_{perm[i]} (0-indexed).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        assert_eq!(perm.len(), signs.len());
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            assert!(!seen[i], "perm must be a bijection");
            seen[i] = true;
        }
        assert!(signs.iter().all(|&s| s == 1 || s == -1));
        SignedPerm { perm, signs }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s == 1) && self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// self o rhs: apply rhs first, then self.
    pub fn compose(&self, rhs: &SignedPerm) -> SignedPerm {
        debug_assert_eq!(self.n(), rhs.n());
        let n = self.n();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[i] = self.perm[rhs.perm[i]];
            signs[i] = rhs.signs[i] * self.signs[rhs.perm[i]];
        }
        SignedPerm { perm, signs }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPerm { perm, signs }
    }

    pub fn order(&self) -> u32 {
        let mut k = 1u32;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    pub fn cycle_type(&self) -> SignedCycleType {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = vec![];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut sign = 1i8;
            let mut i = start;
            loop {
                seen[i] = true;
                len += 1;
                sign *= self.signs[i];
                i = self.perm[i];
                if i == start {
                    break;
                }
            }
            cycles.push((len, sign));
        }
        cycles.sort_by(|a, b| b.cmp(a));
        SignedCycleType(cycles)
    }
}

/// Multiset of (cycle length, sign), the conjugacy invariant in B_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedCycleType(pub Vec<(usize, i8)>);

impl SignedCycleType {
    /// Total of the cycle lengths.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|(l, _)| l).sum()
    }

    /// Number of negative cycles.
    pub fn negative_cycles(&self) -> usize {
        self.0.iter().filter(|(_, s)| *s < 0).count()
    }
}

impl fmt::Display for SignedCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (len, sign)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", len, if *sign > 0 { "+" } else { "-" })?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupName {
    /// Hyperoctahedral group B_n, order 2^n n!.
    B(usize),
    /// W(D_n): even sign changes, order 2^(n-1) n!.
    D(usize),
    /// Symmetric group S_n embedded with all signs +.
    Sym(usize),
    /// (Z/2)^3 : S_3 acting on three coordinates; equals B_3, order 48.
    MumfordPi,
    /// (Z/2)^3 : A_3, order 24.
    MumfordPiA3,
    Custom(String),
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::B(n) => write!(f, "B{}", n),
            GroupName::D(n) => write!(f, "D{}", n),
            GroupName::Sym(n) => write!(f, "S{}", n),
            GroupName::MumfordPi => write!(f, "MUMFORD_PI"),
            GroupName::MumfordPiA3 => write!(f, "MUMFORD_PI_A3"),
            GroupName::Custom(s) => write!(f, "{}", s),
        }
    }
}

/// Explicit finite group of signed permutations with an element index.
pub struct FiniteSignedGroup {
    pub name: GroupName,
    pub n: usize,
    elements: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
}

const MAX_N: usize = 6; // |B_6| = 46080

pub fn build_group(name: GroupName) -> Result<FiniteSignedGroup, WeylError> {
    let (n, filter): (usize, Box<dyn Fn(&SignedPerm) -> bool>) = match &name {
        GroupName::B(n) => (*n, Box::new(|_: &SignedPerm| true)),
        GroupName::D(n) => (*n, Box::new(|g: &SignedPerm| g.sign_product() == 1)),
        GroupName::Sym(n) => (*n, Box::new(|g: &SignedPerm| g.signs().iter().all(|&s| s == 1))),
        GroupName::MumfordPi => (3, Box::new(|_: &SignedPerm| true)),
        GroupName::MumfordPiA3 => (3, Box::new(|g: &SignedPerm| perm_parity(g.perm()) == 1)),
        GroupName::Custom(_) => panic!("custom groups are built via from_elements"),
    };
    if n > MAX_N {
        return Err(WeylError::TooLarge(n));
    }
    let mut elements = vec![];
    for perm in permutations(n) {
        for mask in 0..(1u32 << n) {
            let signs: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let g = SignedPerm { perm: perm.clone(), signs };
            if filter(&g) {
                elements.push(g);
            }
        }
    }
    Ok(FiniteSignedGroup::from_elements(name, n, elements))
}

fn perm_parity(p: &[usize]) -> i8 {
    let mut seen = vec![false; p.len()];
    let mut parity = 1i8;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            parity = -parity;
        }
    }
    parity
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur: Vec<usize> = vec![];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut vec![false; n], &mut out);
    out
}

impl FiniteSignedGroup {
    pub fn from_elements(name: GroupName, n: usize, elements: Vec<SignedPerm>) -> Self {
        let index: HashMap<SignedPerm, usize> =
            elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let g = FiniteSignedGroup { name, n, elements, index };
        debug_assert!(g.is_closed());
        g
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SignedPerm {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &SignedPerm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &SignedPerm) -> bool {
        self.index.contains_key(g)
    }

    fn is_closed(&self) -> bool {
        // spot check on a deterministic sample; full closure is O(|G|^2)
        let m = self.elements.len();
        if m == 0 {
            return false;
        }
        let step = (m / 37).max(1);
        for i in (0..m).step_by(step) {
            for j in (0..m).step_by(step) {
                let p = self.elements[i].compose(&self.elements[j]);
                if !self.contains(&p) {
                    return false;
                }
            }
            if !self.contains(&self.elements[i].inverse()) {
                return false;
            }
        }
        true
    }

    /// Subgroup closure of the given elements, as sorted ambient indices.
    pub fn closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order()];
        let id = self.index_of(&SignedPerm::identity(self.n)).expect("identity in group");
        let mut list = vec![id];
        in_set[id] = true;
        let mut queue: Vec<usize> = vec![];
        for &g in generators {
            if !in_set[g] {
                in_set[g] = true;
                list.push(g);
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            let mut i = 0;
            while i < list.len() {
                let y = list[i];
                let a = self.elements[x].compose(&self.elements[y]);
                let b = self.elements[y].compose(&self.elements[x]);
                for prod in [a, b] {
                    let k = self.index_of(&prod).expect("closed ambient group");
                    if !in_set[k] {
                        in_set[k] = true;
                        list.push(k);
                        queue.push(k);
                    }
                }
                i += 1;
            }
        }
        list.sort_unstable();
        list
    }
}

/// A conjugacy class of an explicit group, with all member indices.
#[derive(Debug, Clone)]
pub struct ConjClass {
    pub representative: SignedPerm,
    pub size: usize,
    pub ctype: SignedCycleType,
    pub members: Vec<usize>,
}

/// All conjugacy classes by orbit computation, ordered by (size, type).
pub fn conjugacy_classes(group: &FiniteSignedGroup) -> Vec<ConjClass> {
    let m = group.order();
    let mut assigned = vec![false; m];
    let mut classes = vec![];
    for start in 0..m {
        if assigned[start] {
            continue;
        }
        let x = &group.elements[start];
        let mut members = vec![];
        let mut seen = vec![false; m];
        for g in &group.elements {
            let y = g.compose(x).compose(&g.inverse());
            let k = group.index_of(&y).expect("closed under conjugation");
            if !seen[k] {
                seen[k] = true;
                members.push(k);
            }
        }
        members.sort_unstable();
        for &k in &members {
            assigned[k] = true;
        }
        classes.push(ConjClass {
            representative: x.clone(),
            size: members.len(),
            ctype: x.cycle_type(),
            members,
        });
    }
    classes.sort_by(|a, b| (a.size, &a.ctype).cmp(&(b.size, &b.ctype)));
    classes
}

/// Classes of G whose elements all lie in the subgroup H (given by ambient
/// indices). H must be closed; the NotSubgroup error catches violations.
pub fn overgroup_classes_in_subgroup(
    group: &FiniteSignedGroup,
    h: &[usize],
) -> Result<Vec<ConjClass>, WeylError> {
    let mut in_h = vec![false; group.order()];
    for &i in h {
        in_h[i] = true;
    }
    // closure check
    for &i in h {
        if !in_h[group.index_of(&group.elements[i].inverse()).unwrap()] {
            return Err(WeylError::NotSubgroup);
        }
        for &j in h.iter().take(32) {
            let p = group.elements[i].compose(&group.elements[j]);
            if !in_h[group.index_of(&p).unwrap()] {
                return Err(WeylError::NotSubgroup);
            }
        }
    }
    Ok(conjugacy_classes(group)
        .into_iter()
        .filter(|c| c.members.iter().all(|&k| in_h[k]))
        .collect())
}

/// Multiset of element orders, as order -> count.
pub fn element_order_profile(group: &FiniteSignedGroup) -> std::collections::BTreeMap<u32, usize> {
    let mut out = std::collections::BTreeMap::new();
    for g in group.elements() {
        *out.entry(g.order()).or_insert(0) += 1;
    }
    out
}

/// Action of an order-48 signed group on the 8 points of {+-1}^3: sign
/// flips act coordinatewise, the permutation part permutes coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct WeightActionReport {
    pub transitive: bool,
    pub max_cycle_len: usize,
    pub has_eight_cycle: bool,
    /// cycle length -> number of occurrences over all elements
    pub cycle_length_counts: std::collections::BTreeMap<usize, usize>,
}

pub fn weight_action_check(group: &FiniteSignedGroup) -> WeightActionReport {
    assert_eq!(group.n, 3);
    let points: Vec<[i8; 3]> = (0..8u8)
        .map(|m| {
            let b = |k: u8| if m >> k & 1 == 1 { -1i8 } else { 1 };
            [b(0), b(1), b(2)]
        })
        .collect();
    let point_index = |p: &[i8; 3]| points.iter().position(|q| q == p).unwrap();
    let act = |g: &SignedPerm, p: &[i8; 3]| -> [i8; 3] {
        let mut out = [0i8; 3];
        for i in 0..3 {
            out[g.perm()[i]] = g.signs()[i] * p[i];
        }
        out
    };

    // transitivity: orbit of the first point under the whole group
    let mut orbit = vec![false; 8];
    orbit[0] = true;
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for g in group.elements() {
            let j = point_index(&act(g, &points[i]));
            if !orbit[j] {
                orbit[j] = true;
                frontier.push(j);
            }
        }
    }
    let transitive = orbit.iter().all(|&b| b);

    let mut max_cycle_len = 0;
    let mut cycle_length_counts = std::collections::BTreeMap::new();
    for g in group.elements() {
        let perm: Vec<usize> = points.iter().map(|p| point_index(&act(g, p))).collect();
        let mut seen = vec![false; 8];
        for s in 0..8 {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            max_cycle_len = max_cycle_len.max(len);
            *cycle_length_counts.entry(len).or_insert(0) += 1;
        }
    }
    WeightActionReport {
        transitive,
        max_cycle_len,
        has_eight_cycle: max_cycle_len >= 8,
        cycle_length_counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_orders() {
        assert_eq!(build_group(GroupName::B(2)).unwrap().order(), 8);
        assert_eq!(build_group(GroupName::B(3)).unwrap().order(), 48);
        assert_eq!(build_group(GroupName::D(4)).unwrap().order(), 192);
        assert_eq!(build_group(GroupName::D(2)).unwrap().order(), 4);
        assert_eq!(build_group(GroupName::Sym(4)).unwrap().order(), 24);
        assert_eq!(build_group(GroupName::MumfordPi).unwrap().order(), 48);
        assert_eq!(build_group(GroupName::MumfordPiA3).unwrap().order(), 24);
        assert!(matches!(build_group(GroupName::B(7)), Err(WeylError::TooLarge(7))));
    }

    #[test]
    fn composition_law_lock() {
        // (g h)^-1 == h^-1 g^-1 on 1000 random pairs, and the action
        // convention: signs applied before the permutation.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b4 = build_group(GroupName::B(4)).unwrap();
        for _ in 0..1000 {
            let g = b4.element(rng.gen_range(0..b4.order())).clone();
            let h = b4.element(rng.gen_range(0..b4.order())).clone();
            assert_eq!(g.compose(&h).inverse(), h.inverse().compose(&g.inverse()));
            assert!(g.compose(&g.inverse()).is_identity());
        }
        // action convention on a fixture: g = swap(0,1) with sign -1 on slot 0
        let g = SignedPerm::new(vec![1, 0], vec![-1, 1]);
        // e_0 -> -e_1 -> -e_0: g^2 is the central sign flip
        let g2 = g.compose(&g);
        assert_eq!(g2.perm(), &[0, 1]);
        assert_eq!(g2.signs(), &[-1, -1]);
        assert_eq!(g.order(), 4);
        assert_eq!(g.cycle_type(), SignedCycleType(vec![(2, -1)]));
    }

    #[test]
    fn b2_classes() {
        let b2 = build_group(GroupName::B(2)).unwrap();
        let classes = conjugacy_classes(&b2);
        assert_eq!(classes.len(), 5);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        let types: std::collections::BTreeSet<String> =
            classes.iter().map(|c| c.ctype.to_string()).collect();
        let expect: std::collections::BTreeSet<String> =
            ["[1+ 1+]", "[1- 1-]", "[1+ 1-]", "[2+]", "[2-]"]
                .iter()
                .map(|s| s.to_string())
                .collect();
        assert_eq!(types, expect);
        // class equation
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 8);
    }

    #[test]
    fn trivial_group_one_class() {
        let e = SignedPerm::identity(2);
        let g = FiniteSignedGroup::from_elements(GroupName::Custom("1".into()), 2, vec![e]);
        assert_eq!(conjugacy_classes(&g).len(), 1);
    }

    #[test]
    fn class_type_bijection_up_to_b4() {
        for n in 1..=4 {
            let b = build_group(GroupName::B(n)).unwrap();
            let classes = conjugacy_classes(&b);
            // class <-> signed cycle type is a bijection in B_n
            let types: std::collections::BTreeSet<_> =
                classes.iter().map(|c| c.ctype.clone()).collect();
            assert_eq!(types.len(), classes.len(), "n={}", n);
            // constant on classes
            for c in &classes {
                for &k in &c.members {
                    assert_eq!(b.element(k).cycle_type(), c.ctype);
                }
            }
            // class equation
            assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), b.order());
        }
    }

    #[test]
    fn d4_classes_and_normality() {
        let b4 = build_group(GroupName::B(4)).unwrap();
        let d4 = build_group(GroupName::D(4)).unwrap();
        assert_eq!(d4.order() * 2, b4.order());
        let classes = conjugacy_classes(&d4);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 192);
        // conjugation by any B_4 element preserves W(D_4)
        for g in b4.elements().iter().step_by(7) {
            for h in d4.elements().iter().step_by(11) {
                let c = g.compose(h).compose(&g.inverse());
                assert!(d4.contains(&c));
            }
        }
    }

    #[test]
    fn overgroup_classes_fixture() {
        // B_2-classes inside W(D_2): even number of negative cycles
        let b2 = build_group(GroupName::B(2)).unwrap();
        let d2: Vec<usize> = b2
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.sign_product() == 1)
            .map(|(i, _)| i)
            .collect();
        let inside = overgroup_classes_in_subgroup(&b2, &d2).unwrap();
        let types: std::collections::BTreeSet<String> =
            inside.iter().map(|c| c.ctype.to_string()).collect();
        let expect: std::collections::BTreeSet<String> =
            ["[1+ 1+]", "[1- 1-]", "[2+]"].iter().map(|s| s.to_string()).collect();
        assert_eq!(types, expect);

        // whole group: all 5 classes
        let all: Vec<usize> = (0..b2.order()).collect();
        assert_eq!(overgroup_classes_in_subgroup(&b2, &all).unwrap().len(), 5);

        // non-subgroup rejected
        let bad: Vec<usize> = (0..3).collect();
        assert!(matches!(
            overgroup_classes_in_subgroup(&b2, &bad),
            Err(WeylError::NotSubgroup)
        ));
    }

    #[test]
    fn b4_classes_in_d4_have_even_negatives() {
        let b4 = build_group(GroupName::B(4)).unwrap();
        let d4: Vec<usize> = b4
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.sign_product() == 1)
            .map(|(i, _)| i)
            .collect();
        let inside = overgroup_classes_in_subgroup(&b4, &d4).unwrap();
        for c in &inside {
            assert_eq!(c.ctype.negative_cycles() % 2, 0);
        }
        // all even-negative types appear
        let all = conjugacy_classes(&b4);
        let even = all.iter().filter(|c| c.ctype.negative_cycles() % 2 == 0).count();
        assert_eq!(inside.len(), even);
    }

    #[test]
    fn order_profiles() {
        // B_2: orders multiset {1, 2 x5, 4 x2}
        let b2 = build_group(GroupName::B(2)).unwrap();
        let prof = element_order_profile(&b2);
        assert_eq!(prof.get(&1), Some(&1));
        assert_eq!(prof.get(&2), Some(&5));
        assert_eq!(prof.get(&4), Some(&2));

        // MUMFORD_PI: orders within {1,2,3,4,6}, no order 8
        let pi = build_group(GroupName::MumfordPi).unwrap();
        let prof = element_order_profile(&pi);
        for k in prof.keys() {
            assert!([1u32, 2, 3, 4, 6].contains(k), "order {}", k);
        }
        assert!(!prof.contains_key(&8));

        let e = FiniteSignedGroup::from_elements(
            GroupName::Custom("1".into()),
            2,
            vec![SignedPerm::identity(2)],
        );
        assert_eq!(element_order_profile(&e).len(), 1);
    }

    #[test]
    fn weight_action() {
        let pi = build_group(GroupName::MumfordPi).unwrap();
        let report = weight_action_check(&pi);
        assert!(report.transitive);
        assert!(!report.has_eight_cycle);
        assert!(report.max_cycle_len <= 6);
        // identity contributes 8 fixed points
        assert!(report.cycle_length_counts.get(&1).copied().unwrap_or(0) >= 8);
        // 6-cycles occur (e.g. a 3-cycle combined with a sign flip)
        assert!(report.cycle_length_counts.contains_key(&6));
    }

    #[test]
    fn mumford_pi_normal_subgroup_index() {
        // the sign-flip normal subgroup (Z/2)^3 has index 6
        let pi = build_group(GroupName::MumfordPi).unwrap();
        let flips: Vec<usize> = pi
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.perm().iter().enumerate().all(|(i, &j)| i == j))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(flips.len(), 8);
        assert_eq!(pi.order() / flips.len(), 6);
        // normality
        for g in pi.elements().iter().step_by(5) {
            for &k in &flips {
                let c = g.compose(pi.element(k)).compose(&g.inverse());
                assert!(c.perm().iter().enumerate().all(|(i, &j)| i == j));
            }
        }
    }
}
