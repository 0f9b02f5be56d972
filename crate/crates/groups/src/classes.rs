use crate::group::FiniteGroup;

/// Conjugacy classes ordered by least member, each sorted.
pub fn conjugacy_classes(g: &FiniteGroup) -> &[Vec<usize>] {
    &classes_with_index(g).0
}

/// Classes together with the element → class-number map.
pub(crate) fn classes_with_index(g: &FiniteGroup) -> &(Vec<Vec<usize>>, Vec<u32>) {
    g.classes.get_or_init(|| {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut orbit = vec![x];
            class_of[x] = id;
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for &s in g.generators() {
                    let z = g.conj(s, y);
                    if class_of[z] == u32::MAX {
                        class_of[z] = id;
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        (classes, class_of)
    })
}

pub fn class_index(g: &FiniteGroup, x: usize) -> usize {
    classes_with_index(g).1[x] as usize
}

/// Sorted members of the center.
pub fn center(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order())
        .filter(|&z| g.generators().iter().all(|&s| g.mul(s, z) == g.mul(z, s)))
        .collect()
}
