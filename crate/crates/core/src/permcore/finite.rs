use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::OnceLock;

use super::group::{Limits, PermGroup};
use super::perm::Permutation;
use crate::arith;
use crate::error::{Error, Result};

/// A conjugacy class in canonical position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub index: usize,
    /// Lexicographically least element of the class.
    pub representative: Permutation,
    pub size: u128,
    pub element_order: u64,
}

#[derive(Debug)]
struct ClassData {
    classes: Vec<ConjugacyClass>,
    /// Class index of each element, by element index.
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

/// A permutation group whose elements have been enumerated.
///
/// Classes are ordered by (element order, class size, least representative).
#[derive(Debug)]
pub struct FiniteGroup {
    group: PermGroup,
    limits: Limits,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    class_data: OnceLock<ClassData>,
}

impl FiniteGroup {
    pub fn new(group: PermGroup, limits: Limits) -> Result<Self> {
        let elements = group.elements(&limits)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        Ok(FiniteGroup {
            group,
            limits,
            elements,
            index,
            class_data: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn order(&self) -> u128 {
        self.elements.len() as u128
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element_index(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    fn class_data(&self) -> &ClassData {
        self.class_data.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ClassData {
        let n = self.elements.len();
        let mut raw_class = vec![usize::MAX; n];
        let mut raw_members: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != usize::MAX {
                continue;
            }
            let c = raw_members.len();
            raw_class[start] = c;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let x = &self.elements[members[i]];
                for s in self.group.generators() {
                    let y = self.index[&x.conjugate_by(s)];
                    if raw_class[y] == usize::MAX {
                        raw_class[y] = c;
                        members.push(y);
                    }
                }
                i += 1;
            }
            raw_members.push(members);
        }
        let mut keyed: Vec<(u64, u128, Permutation, Vec<usize>)> = raw_members
            .into_iter()
            .map(|members| {
                let rep = members
                    .iter()
                    .map(|&i| &self.elements[i])
                    .min()
                    .unwrap()
                    .clone();
                (rep.order(), members.len() as u128, rep, members)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        let mut class_of = vec![0; n];
        let mut classes = Vec::with_capacity(keyed.len());
        let mut members_out = Vec::with_capacity(keyed.len());
        for (index, (element_order, size, representative, mut members)) in keyed.into_iter().enumerate() {
            for &m in &members {
                class_of[m] = index;
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                index,
                representative,
                size,
                element_order,
            });
            members_out.push(members);
        }
        ClassData {
            classes,
            class_of,
            members: members_out,
        }
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.class_data().classes
    }

    pub fn class_members(&self, class: usize) -> &[usize] {
        &self.class_data().members[class]
    }

    pub fn class_of_index(&self, element: usize) -> usize {
        self.class_data().class_of[element]
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.element_index(g).map(|i| self.class_of_index(i))
    }

    /// Class of `rep(class)^e`.
    pub fn power_class(&self, class: usize, e: u64) -> usize {
        let rep = &self.classes()[class].representative;
        self.class_of(&rep.pow(e)).expect("power lies in the group")
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        let rep = &self.classes()[class].representative;
        self.class_of(&rep.inverse()).expect("inverse lies in the group")
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.classes()
            .iter()
            .fold(1, |acc, c| arith::lcm(acc, c.element_order))
    }

    pub fn centralizer_order(&self, class: usize) -> u128 {
        self.order() / self.classes()[class].size
    }

    fn check_subgroup(&self, h: &PermGroup) -> Result<()> {
        if h.degree() != self.degree() || !h.generators().iter().all(|g| self.contains(g)) {
            return Err(Error::NotASubgroup);
        }
        debug_assert_eq!(self.order() % h.order(), 0);
        Ok(())
    }

    fn subgroup_from_filter(&self, keep: impl Fn(&Permutation) -> bool) -> PermGroup {
        PermGroup::generated_by(self.degree(), self.elements.iter().filter(|g| keep(g)))
    }

    pub fn centralizer(&self, x: &Permutation) -> Result<PermGroup> {
        if !self.contains(x) {
            return Err(Error::NotAMember);
        }
        Ok(self.subgroup_from_filter(|g| g.commutes_with(x)))
    }

    /// Elements commuting with every element of `h`.
    pub fn centralizer_of_subgroup(&self, h: &PermGroup) -> Result<PermGroup> {
        self.check_subgroup(h)?;
        Ok(self.subgroup_from_filter(|g| h.generators().iter().all(|x| g.commutes_with(x))))
    }

    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        self.check_subgroup(h)?;
        Ok(self.subgroup_from_filter(|g| normalizes(g, h)))
    }

    pub fn center(&self) -> PermGroup {
        let gens = self.group.generators();
        self.subgroup_from_filter(|g| gens.iter().all(|s| g.commutes_with(s)))
    }

    /// Element indices of a subgroup, in increasing order.
    pub fn subgroup_indices(&self, h: &PermGroup) -> Result<Vec<usize>> {
        self.check_subgroup(h)?;
        let mut idx: Vec<usize> = h
            .elements(&self.limits)?
            .iter()
            .map(|g| self.index[g])
            .collect();
        idx.sort_unstable();
        Ok(idx)
    }

    /// A Sylow p-subgroup, grown one normalizing p-element at a time.
    pub fn sylow_subgroup(&self, p: u64) -> PermGroup {
        let target = arith::p_part(p, self.order());
        let mut sylow = PermGroup::trivial(self.degree());
        while sylow.order() < target {
            let next = self
                .elements
                .iter()
                .find(|g| is_p_power(g.order(), p) && !sylow.contains(g) && normalizes(g, &sylow))
                .expect("a p-element normalizes a non-Sylow p-subgroup")
                .clone();
            let mut gens = sylow.generators().to_vec();
            gens.push(next);
            sylow = PermGroup::new(self.degree(), gens).expect("degree matches");
        }
        sylow
    }

    /// `O_p(G)`, the largest normal p-subgroup: the largest subset of a Sylow
    /// subgroup stable under conjugation by the generators.
    pub fn o_p(&self, p: u64) -> PermGroup {
        let sylow = self.sylow_subgroup(p);
        let mut core: HashSet<&Permutation> = self.elements.iter().filter(|g| sylow.contains(g)).collect();
        loop {
            let next: HashSet<&Permutation> = core
                .iter()
                .copied()
                .filter(|s| {
                    self.group
                        .generators()
                        .iter()
                        .all(|x| core.contains(&s.conjugate_by(x)))
                })
                .collect();
            if next.len() == core.len() {
                break;
            }
            core = next;
        }
        let mut members: Vec<&Permutation> = core.into_iter().collect();
        members.sort();
        PermGroup::generated_by(self.degree(), members)
    }

    /// An element `g` with `h^g = k`, if one exists.
    pub fn conjugating_element(&self, h: &PermGroup, k: &PermGroup) -> Option<Permutation> {
        if h.order() != k.order() {
            return None;
        }
        self.elements
            .iter()
            .find(|g| h.generators().iter().all(|x| k.contains(&x.conjugate_by(g))))
            .cloned()
    }

    pub fn are_conjugate(&self, h: &PermGroup, k: &PermGroup) -> bool {
        self.conjugating_element(h, k).is_some()
    }

    /// One representative per G-class of radical p-subgroups
    /// (`Q = O_p(N_G(Q))`), ordered by increasing order.
    pub fn radical_p_subgroups(&self, p: u64) -> Result<Vec<PermGroup>> {
        let sylow = self.sylow_subgroup(p);
        let candidates = subgroups_of_p_group(&sylow, p, &self.limits)?;
        let mut radicals: Vec<PermGroup> = Vec::new();
        let mut signatures: Vec<Vec<(Vec<usize>, usize)>> = Vec::new();
        for q in candidates {
            let normalizer = self.normalizer(&q)?;
            let n = FiniteGroup::new(normalizer, self.limits)?;
            if n.o_p(p).order() != q.order() {
                continue;
            }
            let sig = cycle_type_signature(&q, &self.limits)?;
            let duplicate = radicals
                .iter()
                .zip(&signatures)
                .any(|(r, s)| *s == sig && self.are_conjugate(r, &q));
            if !duplicate {
                radicals.push(q);
                signatures.push(sig);
            }
        }
        Ok(radicals)
    }

    /// Action of G on the right cosets of `h`.
    pub fn coset_action(&self, h: &PermGroup) -> Result<CosetAction> {
        self.check_subgroup(h)?;
        let sub_elements = h.elements(&self.limits)?;
        let canonical = |g: &Permutation| -> Permutation {
            sub_elements.iter().map(|x| x.then(g)).min().unwrap()
        };
        let id = Permutation::identity(self.degree());
        let mut reps = vec![id.clone()];
        let mut coset_index: HashMap<Permutation, usize> = HashMap::new();
        coset_index.insert(canonical(&id), 0);
        let mut i = 0;
        while i < reps.len() {
            for s in self.group.generators() {
                let g = reps[i].then(s);
                let key = canonical(&g);
                if let std::collections::hash_map::Entry::Vacant(e) = coset_index.entry(key) {
                    e.insert(reps.len());
                    reps.push(g);
                }
            }
            i += 1;
        }
        let index = reps.len();
        let action = CosetAction {
            image: PermGroup::trivial(index),
            kernel: PermGroup::trivial(self.degree()),
            reps,
            sub_elements,
            coset_index,
        };
        let image_gens = self
            .group
            .generators()
            .iter()
            .map(|s| action.image_of(s))
            .filter(|g| !g.is_identity())
            .collect();
        let image = PermGroup::new(index, image_gens)?;
        let kernel_elems: Vec<Permutation> = action
            .sub_elements
            .iter()
            .filter(|x| {
                action
                    .reps
                    .iter()
                    .all(|r| h.contains(&x.conjugate_by(&r.inverse())))
            })
            .cloned()
            .collect();
        let kernel = PermGroup::generated_by(self.degree(), kernel_elems.iter());
        if image.order() * kernel.order() != self.order() {
            return Err(Error::InternalInconsistency(
                "coset action: |image| * |kernel| != |G|".into(),
            ));
        }
        Ok(CosetAction {
            image,
            kernel,
            ..action
        })
    }
}

/// G acting on the right cosets of a subgroup H.
#[derive(Debug)]
pub struct CosetAction {
    pub image: PermGroup,
    /// `core_G(H)`.
    pub kernel: PermGroup,
    reps: Vec<Permutation>,
    sub_elements: Vec<Permutation>,
    coset_index: HashMap<Permutation, usize>,
}

impl CosetAction {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Image of an element of G as a permutation of the cosets.
    pub fn image_of(&self, g: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|r| {
                let moved = r.then(g);
                let key = self.sub_elements.iter().map(|x| x.then(&moved)).min().unwrap();
                self.coset_index[&key] as u32
            })
            .collect();
        Permutation::from_images(images).expect("coset action is a permutation")
    }
}

fn is_p_power(n: u64, p: u64) -> bool {
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn normalizes(g: &Permutation, h: &PermGroup) -> bool {
    h.generators().iter().all(|x| h.contains(&x.conjugate_by(g)))
}

/// Multiset of (cycle type, count) over the elements of a group.
fn cycle_type_signature(q: &PermGroup, limits: &Limits) -> Result<Vec<(Vec<usize>, usize)>> {
    let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for g in q.elements(limits)? {
        *counts.entry(g.cycle_type()).or_default() += 1;
    }
    Ok(counts.into_iter().collect())
}

/// Every subgroup of a p-group, each built by a chain of index-p extensions.
/// Ordered by increasing order, then by sorted element list.
pub fn subgroups_of_p_group(p_group: &PermGroup, p: u64, limits: &Limits) -> Result<Vec<PermGroup>> {
    const MAX_SUBGROUPS: usize = 20_000;
    let elements = p_group.elements(limits)?;
    let key_of = |h: &PermGroup| -> Result<Vec<Permutation>> {
        let mut e = h.elements(limits)?;
        e.sort();
        Ok(e)
    };
    let trivial = PermGroup::trivial(p_group.degree());
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    seen.insert(key_of(&trivial)?);
    let mut found = vec![(key_of(&trivial)?, trivial)];
    let mut i = 0;
    while i < found.len() {
        let h = found[i].1.clone();
        for x in &elements {
            if h.contains(x) || !normalizes(x, &h) || !h.contains(&x.pow(p)) {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.push(x.clone());
            let k = PermGroup::new(p_group.degree(), gens)?;
            let key = key_of(&k)?;
            if seen.insert(key.clone()) {
                found.push((key, k));
                if found.len() > MAX_SUBGROUPS {
                    return Err(Error::NotSupported(format!(
                        "more than {MAX_SUBGROUPS} p-subgroups"
                    )));
                }
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(found.into_iter().map(|(_, h)| h).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fg(degree: usize, gens: &[&[&[u32]]]) -> FiniteGroup {
        let gens = gens
            .iter()
            .map(|c| Permutation::from_cycles(degree, c).unwrap())
            .collect();
        FiniteGroup::new(PermGroup::new(degree, gens).unwrap(), Limits::default()).unwrap()
    }

    fn a5() -> FiniteGroup {
        fg(5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]])
    }

    fn s3() -> FiniteGroup {
        fg(3, &[&[&[1, 2]], &[&[1, 2, 3]]])
    }

    fn cyc(degree: usize, cycle: &[u32]) -> PermGroup {
        PermGroup::new(degree, vec![Permutation::from_cycles(degree, &[cycle]).unwrap()]).unwrap()
    }

    /// Conjugacy classes by brute force: orbit of each element under
    /// conjugation by every group element.
    fn brute_class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut seen = HashSet::new();
        let mut sizes = Vec::new();
        for x in g.elements() {
            if seen.contains(x) {
                continue;
            }
            let orbit: HashSet<Permutation> = g.elements().iter().map(|y| x.conjugate_by(y)).collect();
            sizes.push(orbit.len());
            seen.extend(orbit);
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn a5_classes() {
        let g = a5();
        let mut sizes: Vec<usize> = g.classes().iter().map(|c| c.size as usize).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 60);
        sizes.sort_unstable();
        assert_eq!(sizes, brute_class_sizes(&g));
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        let orders: Vec<u64> = g.classes().iter().map(|c| c.element_order).collect();
        assert_eq!(orders, vec![1, 2, 3, 5, 5]);
        for c in g.classes() {
            let cent = g.centralizer(&c.representative).unwrap();
            assert_eq!(c.size * cent.order(), 60);
        }
    }

    #[test]
    fn trivial_and_abelian_classes() {
        let t = FiniteGroup::new(PermGroup::trivial(1), Limits::default()).unwrap();
        assert_eq!(t.classes().len(), 1);
        assert_eq!(t.classes()[0].size, 1);
        let c4 = fg(4, &[&[&[1, 2, 3, 4]]]);
        assert_eq!(c4.classes().len(), 4);
        assert!(c4.classes().iter().all(|c| c.size == 1));
    }

    #[test]
    fn centralizer_and_normalizer_in_a5() {
        let g = a5();
        let x = Permutation::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap();
        let brute_c = g.elements().iter().filter(|y| y.commutes_with(&x)).count();
        assert_eq!(brute_c, 5);
        assert_eq!(g.centralizer(&x).unwrap().order(), 5);
        let c5 = cyc(5, &[1, 2, 3, 4, 5]);
        let brute_n = g
            .elements()
            .iter()
            .filter(|y| c5.contains(&x.conjugate_by(y)))
            .count();
        assert_eq!(brute_n, 10);
        assert_eq!(g.normalizer(&c5).unwrap().order(), 10);
        assert!(g.normalizer(g.group()).unwrap().same_group(g.group()));
        let outside = Permutation::from_cycles(5, &[&[1, 2]]).unwrap();
        assert!(matches!(g.centralizer(&outside), Err(Error::NotAMember)));
    }

    #[test]
    fn sylow_subgroups() {
        let g = a5();
        let p5 = g.sylow_subgroup(5);
        assert_eq!(p5.order(), 5);
        assert_eq!(g.sylow_subgroup(2).order(), 4);
        let s = s3();
        let p3 = s.sylow_subgroup(3);
        assert!(p3.same_group(&cyc(3, &[1, 2, 3])));
        let c3 = fg(3, &[&[&[1, 2, 3]]]);
        assert_eq!(c3.sylow_subgroup(2).order(), 1);
    }

    #[test]
    fn radical_subgroups() {
        let orders = |g: &FiniteGroup, p| -> Vec<u128> {
            g.radical_p_subgroups(p).unwrap().iter().map(|q| q.order()).collect()
        };
        assert_eq!(orders(&a5(), 5), vec![1, 5]);
        assert_eq!(orders(&s3(), 3), vec![3]);
        let t = FiniteGroup::new(PermGroup::trivial(1), Limits::default()).unwrap();
        assert_eq!(orders(&t, 2), vec![1]);
        // A5 at p=2: trivial and the Klein four-group.
        assert_eq!(orders(&a5(), 2), vec![1, 4]);
    }

    #[test]
    fn radical_subgroups_satisfy_definition_and_are_pairwise_non_conjugate() {
        let s4 = fg(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]]);
        for p in [2, 3] {
            let rads = s4.radical_p_subgroups(p).unwrap();
            for q in &rads {
                let n = FiniteGroup::new(s4.normalizer(q).unwrap(), Limits::default()).unwrap();
                assert!(n.o_p(p).same_group(q));
            }
            for (i, a) in rads.iter().enumerate() {
                for b in &rads[i + 1..] {
                    assert!(!s4.are_conjugate(a, b));
                }
            }
        }
    }

    #[test]
    fn coset_actions() {
        let s = s3();
        let a3 = cyc(3, &[1, 2, 3]);
        let act = s.coset_action(&a3).unwrap();
        assert_eq!(act.image.order(), 2);
        assert!(act.kernel.same_group(&a3));
        let d10 = fg(5, &[&[&[1, 2, 3, 4, 5]], &[&[2, 5], &[3, 4]]]);
        let c5 = cyc(5, &[1, 2, 3, 4, 5]);
        assert_eq!(d10.coset_action(&c5).unwrap().image.order(), 2);
        let whole = s.coset_action(s.group()).unwrap();
        assert_eq!(whole.image.order(), 1);
        // Non-normal subgroup: S3 on cosets of a point stabilizer is faithful.
        let c2 = cyc(3, &[1, 2]);
        let act = s.coset_action(&c2).unwrap();
        assert_eq!(act.image.order(), 6);
        assert_eq!(act.kernel.order(), 1);
    }

    #[test]
    fn coset_action_is_a_homomorphism() {
        let g = a5();
        let h = g.sylow_subgroup(2);
        let act = g.coset_action(&h).unwrap();
        for x in g.elements().iter().take(10) {
            for y in g.elements().iter().skip(20).take(10) {
                assert_eq!(act.image_of(&x.then(y)), act.image_of(x).then(&act.image_of(y)));
            }
        }
    }

    #[test]
    fn not_a_subgroup_is_rejected() {
        let g = s3();
        let bad = cyc(3, &[1, 2]);
        let c3 = fg(3, &[&[&[1, 2, 3]]]);
        assert!(matches!(c3.normalizer(&bad), Err(Error::NotASubgroup)));
        assert!(g.normalizer(&bad).is_ok());
    }
}
