//! Transversal-generation check for W(D_n) inside B_n.
//!
//! Claim under test: any subgroup of W(D_n) that meets every B_n-conjugacy
//! class contained in W(D_n) is all of W(D_n). Equivalently: every tuple
//! choosing one representative per such class generates the full group.
//! The search enumerates tuples depth-first, deduplicating each class's
//! representatives up to conjugacy by the subgroup generated so far,
//! memoizing (subgroup, class) states, and exiting a branch early once the
//! full group is already generated. A full subgroup lattice is never built.

use std::collections::HashSet;

use super::{
    build_group, conjugacy_classes, overgroup_classes_in_subgroup, FiniteSignedGroup, GroupName,
    SignedPerm, WeylError,
};

#[derive(Debug, Clone)]
pub struct Lemma42Report {
    pub n: usize,
    pub ambient_order: usize,
    pub target_order: usize,
    pub classes_checked: usize,
    pub states_explored: u64,
    pub counterexamples: Vec<Vec<SignedPerm>>,
}

pub fn lemma42_check(n: usize) -> Result<Lemma42Report, WeylError> {
    if n != 4 && n != 5 {
        return Err(WeylError::BadParameter(n));
    }
    let ambient = build_group(GroupName::B(n))?;
    let d_indices: Vec<usize> = ambient
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.sign_product() == 1)
        .map(|(i, _)| i)
        .collect();
    let d_set: HashSet<usize> = d_indices.iter().copied().collect();
    let classes = overgroup_classes_in_subgroup(&ambient, &d_indices)?;

    // dense multiplication/inverse tables: closures become pure array walks
    let m = ambient.order();
    let mut mult = vec![0u16; m * m];
    for i in 0..m {
        for j in 0..m {
            let p = ambient.element(i).compose(ambient.element(j));
            mult[i * m + j] = ambient.index_of(&p).unwrap() as u16;
        }
    }
    let mut inv = vec![0u16; m];
    for i in 0..m {
        inv[i] = ambient.index_of(&ambient.element(i).inverse()).unwrap() as u16;
    }
    let identity = ambient.index_of(&SignedPerm::identity(n)).unwrap();

    // Largest classes first: their representatives generate big subgroups
    // quickly, which feeds the full-group early exit.
    let mut class_order: Vec<usize> = (0..classes.len()).collect();
    class_order.sort_by_key(|&i| std::cmp::Reverse(classes[i].size));

    let mut search = Search {
        ambient: &ambient,
        mult: &mult,
        inv: &inv,
        order: m,
        classes: &classes,
        class_order: &class_order,
        d_order: d_indices.len(),
        d_set: &d_set,
        memo: HashSet::new(),
        states: 0,
        counterexamples: vec![],
        choice_stack: vec![],
    };
    search.run(0, vec![identity]);

    Ok(Lemma42Report {
        n,
        ambient_order: ambient.order(),
        target_order: d_indices.len(),
        classes_checked: classes.len(),
        states_explored: search.states,
        counterexamples: search.counterexamples,
    })
}

struct Search<'a> {
    ambient: &'a FiniteSignedGroup,
    mult: &'a [u16],
    inv: &'a [u16],
    order: usize,
    classes: &'a [super::ConjClass],
    class_order: &'a [usize],
    d_order: usize,
    d_set: &'a HashSet<usize>,
    memo: HashSet<(Vec<usize>, usize)>,
    states: u64,
    counterexamples: Vec<Vec<SignedPerm>>,
    choice_stack: Vec<usize>,
}

impl<'a> Search<'a> {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    /// Closure of a sorted subgroup plus one new generator, via the tables.
    fn extend_closure(&self, subgroup: &[usize], new: usize) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        let mut list: Vec<usize> = subgroup.to_vec();
        for &i in subgroup {
            in_set[i] = true;
        }
        let mut queue = vec![new];
        if !in_set[new] {
            in_set[new] = true;
            list.push(new);
        }
        while let Some(x) = queue.pop() {
            let mut i = 0;
            while i < list.len() {
                let y = list[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        list.push(p);
                        queue.push(p);
                    }
                }
                i += 1;
            }
        }
        list.sort_unstable();
        list
    }

    fn run(&mut self, level: usize, subgroup: Vec<usize>) {
        if subgroup.len() == self.d_order {
            return; // full group generated; every completion is fine
        }
        if level == self.class_order.len() {
            // a full transversal generated a proper subgroup: counterexample
            let tuple: Vec<SignedPerm> =
                self.choice_stack.iter().map(|&i| self.ambient.element(i).clone()).collect();
            self.counterexamples.push(tuple);
            return;
        }
        let key = (subgroup.clone(), level);
        if self.memo.contains(&key) {
            return;
        }
        self.states += 1;
        let class = &self.classes[self.class_order[level]];

        // Deduplicate representatives up to conjugacy by the current
        // subgroup. With nothing chosen yet the whole ambient group is a
        // symmetry of the search, so one representative covers the class.
        let mut reps: Vec<usize> = vec![];
        if subgroup.len() == 1 {
            reps.push(class.members[0]);
        } else {
            let mut seen = vec![false; self.order];
            for &c in &class.members {
                if seen[c] {
                    continue;
                }
                reps.push(c);
                for &s in &subgroup {
                    let k = self.mul(self.mul(s, c), self.inv[s] as usize);
                    seen[k] = true;
                }
            }
        }

        for rep in reps {
            if subgroup.binary_search(&rep).is_ok() {
                // representative already inside: subgroup unchanged
                self.choice_stack.push(rep);
                self.run(level + 1, subgroup.clone());
                self.choice_stack.pop();
                continue;
            }
            let bigger = self.extend_closure(&subgroup, rep);
            debug_assert!(bigger.iter().all(|i| self.d_set.contains(i)));
            self.choice_stack.push(rep);
            self.run(level + 1, bigger);
            self.choice_stack.pop();
        }
        self.memo.insert(key);
    }
}

/// Jordan's-lemma sanity control in S_3: among ALL subgroups, only S_3
/// itself meets all three conjugacy classes.
pub fn jordan_control_s3() -> bool {
    let s3 = build_group(GroupName::Sym(3)).unwrap();
    let classes = conjugacy_classes(&s3);
    assert_eq!(classes.len(), 3);
    let subgroups = all_subgroups(&s3);
    for sub in &subgroups {
        let sub_set: HashSet<usize> = sub.iter().copied().collect();
        let meets_all = classes.iter().all(|c| c.members.iter().any(|m| sub_set.contains(m)));
        if meets_all && sub.len() != s3.order() {
            return false;
        }
    }
    true
}

/// Negative control in the cyclic group C_4: the subgroup generated by g^2
/// misses the class {g}, so the meet-every-class hypothesis fails there.
pub fn c4_negative_control() -> bool {
    let b4 = build_group(GroupName::B(4)).unwrap();
    // g = plain 4-cycle with positive signs
    let g = SignedPerm::new(vec![1, 2, 3, 0], vec![1, 1, 1, 1]);
    let gi = b4.index_of(&g).unwrap();
    let c4: Vec<usize> = b4.closure(&[gi]);
    assert_eq!(c4.len(), 4);
    let g2 = g.compose(&g);
    let g2i = b4.index_of(&g2).unwrap();
    let sub = b4.closure(&[g2i]);
    // proper subgroup, missing the class (singleton, C_4 abelian) of g
    sub.len() == 2 && !sub.contains(&gi)
}

fn all_subgroups(group: &FiniteSignedGroup) -> Vec<Vec<usize>> {
    // order-6 group: brute force over generator pairs suffices
    let m = group.order();
    let mut out: HashSet<Vec<usize>> = HashSet::new();
    out.insert(group.closure(&[]));
    for i in 0..m {
        out.insert(group.closure(&[i]));
        for j in i + 1..m {
            out.insert(group.closure(&[i, j]));
        }
    }
    out.into_iter().collect()
}
