use std::collections::HashSet;
use std::sync::Arc;

use crate::classes::{class_index, conjugacy_classes};
use crate::group::FiniteGroup;
use crate::morphism::GroupMorphism;
use crate::GroupError;

/// Generating set ordered by descending element order, greedy.
fn backtrack_generators(g: &FiniteGroup) -> Vec<usize> {
    let orders = g.element_orders();
    let mut by_order: Vec<usize> = (0..g.order()).collect();
    by_order.sort_by_key(|&i| (std::cmp::Reverse(orders[i]), i));
    let mut gens = Vec::new();
    let mut span_len = 1;
    let mut span = vec![false; g.order()];
    span[g.identity()] = true;
    for x in by_order {
        if span_len == g.order() {
            break;
        }
        if span[x] {
            continue;
        }
        gens.push(x);
        let members = g.closure_indices(&gens);
        span_len = members.len();
        for m in members {
            span[m] = true;
        }
    }
    gens
}

/// Extend generator images along the Cayley graph of ⟨gens⟩. Returns the
/// partial map, or `None` when an edge or injectivity check fails.
fn extend(g: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<u32>> {
    let n = g.order();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    map[g.identity()] = g.identity() as u32;
    used[g.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let w = queue[i];
        let fw = map[w] as usize;
        for (&s, &fs) in gens.iter().zip(imgs) {
            let ws = g.mul(w, s);
            let target = g.mul(fw, fs);
            if map[ws] == u32::MAX {
                if used[target] {
                    return None;
                }
                used[target] = true;
                map[ws] = target as u32;
                queue.push(ws);
            } else if map[ws] as usize != target {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

/// All automorphisms, found by backtracking over images of a generating set.
///
/// Candidate images must match the generator's element order and class size.
/// Each partial assignment is checked on the subgroup it generates.
pub fn automorphism_group(g: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<GroupMorphism>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::CapExceeded { what: "automorphism search", order: g.order(), cap });
    }
    let gens = backtrack_generators(g);
    let classes = conjugacy_classes(g);
    let orders = g.element_orders();
    let csize = |x: usize| classes[class_index(g, x)].len();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..g.order()).filter(|&y| orders[y] == orders[s] && csize(y) == csize(s)).collect())
        .collect();
    let mut out = Vec::new();
    let mut imgs = Vec::with_capacity(gens.len());
    search(g, &gens, &candidates, &mut imgs, &mut out);
    out.sort_by(|a: &GroupMorphism, b| a.images.cmp(&b.images));
    Ok(out)
}

fn search(
    g: &Arc<FiniteGroup>,
    gens: &[usize],
    candidates: &[Vec<usize>],
    imgs: &mut Vec<usize>,
    out: &mut Vec<GroupMorphism>,
) {
    let k = imgs.len();
    if k == gens.len() {
        if let Some(map) = extend(g, gens, imgs) {
            out.push(GroupMorphism { source: g.clone(), target: g.clone(), images: map });
        }
        return;
    }
    for &c in &candidates[k] {
        imgs.push(c);
        if extend(g, &gens[..=k], imgs).is_some() {
            search(g, gens, candidates, imgs, out);
        }
        imgs.pop();
    }
}

/// Class-preserving automorphisms with inner-automorphism bookkeeping.
#[derive(Debug, Clone)]
pub struct ClassPreserving {
    pub class_preserving: Vec<GroupMorphism>,
    pub inner: Vec<GroupMorphism>,
    pub aut_order: usize,
    pub aut_cl_order: usize,
    pub inn_order: usize,
    pub out_cl_order: usize,
}

pub fn class_preserving_filter(auts: &[GroupMorphism], g: &Arc<FiniteGroup>) -> ClassPreserving {
    let classes = conjugacy_classes(g);
    let preserving: Vec<GroupMorphism> = auts
        .iter()
        .filter(|f| classes.iter().all(|c| class_index(g, f.apply(c[0])) == class_index(g, c[0])))
        .cloned()
        .collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut inner = Vec::new();
    for x in 0..g.order() {
        let f = GroupMorphism::inner(g, x);
        if seen.insert(f.images.clone()) {
            inner.push(f);
        }
    }
    inner.sort_by(|a, b| a.images.cmp(&b.images));
    let (acl, inn) = (preserving.len(), inner.len());
    ClassPreserving {
        aut_order: auts.len(),
        aut_cl_order: acl,
        inn_order: inn,
        out_cl_order: if inn == 0 { 0 } else { acl / inn },
        class_preserving: preserving,
        inner,
    }
}
