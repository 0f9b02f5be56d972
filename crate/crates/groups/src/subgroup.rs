use std::collections::HashSet;
use std::sync::Arc;

use crate::classes::conjugacy_classes;
use crate::group::FiniteGroup;
use crate::GroupError;

/// A subgroup given by its sorted member indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    mask: Vec<bool>,
    normal: bool,
    abelian: bool,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup").field("members", &self.members).finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        let members = parent.closure_indices(gens);
        Subgroup::from_sorted(parent, members)
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::from_sorted(parent, vec![parent.identity()])
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::from_sorted(parent, (0..parent.order()).collect())
    }

    /// Wrap a member list that is already known to be closed.
    pub fn from_members(parent: &Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Subgroup, GroupError> {
        members.sort_unstable();
        members.dedup();
        let s = Subgroup::from_sorted(parent, members);
        let closed = s.members.iter().all(|&a| s.members.iter().all(|&b| s.contains(parent.mul(a, b))));
        if !closed || !s.contains(parent.identity()) {
            return Err(GroupError::AxiomViolation("member set is not a subgroup".into()));
        }
        Ok(s)
    }

    fn from_sorted(parent: &Arc<FiniteGroup>, members: Vec<usize>) -> Subgroup {
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        let normal = members
            .iter()
            .all(|&a| parent.generators().iter().all(|&g| mask[parent.conj(g, a)]));
        let gens = small_generating_set(parent, &members);
        let abelian = gens.iter().all(|&a| gens.iter().all(|&b| parent.mul(a, b) == parent.mul(b, a)));
        Subgroup { parent: parent.clone(), members, mask, normal, abelian }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        small_generating_set(&self.parent, &self.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup::from_sorted(&self.parent, members)
    }

    /// The subgroup generated by the union (a product when one is normal).
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Subgroup::generated(&self.parent, &gens)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

fn small_generating_set(g: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    let mut in_span: HashSet<usize> = HashSet::from([g.identity()]);
    for &x in members {
        if in_span.contains(&x) {
            continue;
        }
        gens.push(x);
        span = g.closure_indices(&gens);
        in_span = span.iter().copied().collect();
        if span.len() == members.len() {
            break;
        }
    }
    gens
}

/// Every normal abelian subgroup exactly once, sorted by (order, members).
///
/// Normal subgroups are unions of classes, so each one is reached from the
/// trivial subgroup by repeatedly adjoining a class and closing. A class is
/// only adjoined when its elements commute with each other and with the
/// current subgroup, which keeps the search cheap on non-abelian-rich groups.
pub fn enumerate_normal_abelian_subgroups(g: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::CapExceeded { what: "normal subgroup enumeration", order: g.order(), cap });
    }
    let classes = conjugacy_classes(g);
    let commutes = |a: usize, b: usize| g.mul(a, b) == g.mul(b, a);
    let usable: Vec<&Vec<usize>> = classes
        .iter()
        .filter(|c| c.iter().all(|&a| c.iter().all(|&b| commutes(a, b))))
        .collect();
    let mut found: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    let mut seen: HashSet<Vec<usize>> = HashSet::from([found[0].members.clone()]);
    let mut i = 0;
    while i < found.len() {
        let base = found[i].clone();
        for class in &usable {
            if base.contains(class[0]) {
                continue;
            }
            if !class.iter().all(|&a| base.members.iter().all(|&b| commutes(a, b))) {
                continue;
            }
            let mut gens = base.generators();
            gens.extend(class.iter().copied());
            let members = g.closure_indices(&gens);
            if seen.contains(&members) {
                continue;
            }
            seen.insert(members.clone());
            let s = Subgroup::from_sorted(g, members);
            if s.abelian {
                found.push(s);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(found)
}
