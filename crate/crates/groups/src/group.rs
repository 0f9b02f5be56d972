use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::GroupError;

pub const DEFAULT_TABLE_CAP: usize = 512;
pub const DEFAULT_CLOSURE_CAP: usize = 20_000;

/// Multiplication on canonical byte encodings.
///
/// Implementations must return canonical encodings: two encodings denote
/// the same element exactly when the byte strings are equal.
pub trait GroupRule: Send + Sync + fmt::Debug {
    fn multiply(&self, a: &[u8], b: &[u8]) -> Vec<u8>;
    fn inverse(&self, a: &[u8]) -> Vec<u8>;
    fn identity(&self) -> Vec<u8>;
    fn label(&self, a: &[u8]) -> String {
        format!("{a:?}")
    }
}

#[derive(Debug)]
struct Structured {
    rule: Arc<dyn GroupRule>,
    encodings: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
}

/// A finite group with elements numbered `0..order`.
///
/// Small groups carry a dense multiplication table. Groups built from a
/// rule keep their encodings; above the table cap they multiply through the
/// rule and an encoding index.
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Option<Vec<u32>>,
    structured: Option<Structured>,
    identity: usize,
    inverse: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
    pub(crate) element_orders: OnceLock<Vec<u32>>,
    pub(crate) classes: OnceLock<(Vec<Vec<usize>>, Vec<u32>)>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("table", &self.table.is_some())
            .finish()
    }
}

impl FiniteGroup {
    /// Build from a dense table, `table[a * n + b] = a·b`.
    pub fn from_table(name: &str, n: usize, table: Vec<u32>) -> Result<FiniteGroup, GroupError> {
        if n == 0 || table.len() != n * n {
            return Err(GroupError::BadTable(format!("expected {} entries, got {}", n * n, table.len())));
        }
        if table.iter().any(|&v| v as usize >= n) {
            return Err(GroupError::BadTable("entry out of range".into()));
        }
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] {
                    return Err(GroupError::BadTable(format!("row {a} is not a permutation")));
                }
                seen[v] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
            .ok_or_else(|| GroupError::BadTable("no identity element".into()))?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] as usize == identity)
                .ok_or_else(|| GroupError::BadTable(format!("element {a} has no inverse")))?;
            inverse[a] = b as u32;
        }
        let mut g = FiniteGroup {
            name: name.to_string(),
            order: n,
            table: Some(table),
            structured: None,
            identity,
            inverse,
            generators: Vec::new(),
            labels: None,
            element_orders: OnceLock::new(),
            classes: OnceLock::new(),
        };
        g.check_associativity(10_000, 0)?;
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Closure of `generators` under `rule`.
    ///
    /// Elements are numbered by the lexicographic order of their encodings.
    /// A dense table is built when the order is at most `table_cap`.
    pub fn closure(
        name: &str,
        rule: Arc<dyn GroupRule>,
        generators: &[Vec<u8>],
        closure_cap: usize,
        table_cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let id = rule.identity();
        if generators.iter().any(|g| g.len() != id.len()) {
            return Err(GroupError::IncompatibleGenerators);
        }
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id.clone());
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = rule.multiply(&x, g);
                if !seen.contains(&y) {
                    if seen.len() >= closure_cap {
                        return Err(GroupError::ClosureTooLarge { cap: closure_cap, reached: seen.len() });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut encodings: Vec<Vec<u8>> = seen.into_iter().collect();
        encodings.sort();
        FiniteGroup::from_encodings(name, rule, encodings, generators, table_cap)
    }

    /// Build from a complete, sorted list of canonical encodings (e.g. read
    /// back from a cache). The list is trusted to be closed.
    pub fn from_encodings(
        name: &str,
        rule: Arc<dyn GroupRule>,
        encodings: Vec<Vec<u8>>,
        generators: &[Vec<u8>],
        table_cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let order = encodings.len();
        let index: HashMap<Vec<u8>, u32> =
            encodings.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let lookup = |e: &Vec<u8>| -> Result<usize, GroupError> {
            index
                .get(e)
                .map(|&i| i as usize)
                .ok_or_else(|| GroupError::AxiomViolation("element set is not closed".into()))
        };
        let identity = lookup(&rule.identity())?;
        let mut inverse = vec![0u32; order];
        for (i, e) in encodings.iter().enumerate() {
            inverse[i] = lookup(&rule.inverse(e))? as u32;
        }
        let table = if order <= table_cap {
            let mut t = vec![0u32; order * order];
            for (a, ea) in encodings.iter().enumerate() {
                for (b, eb) in encodings.iter().enumerate() {
                    t[a * order + b] = lookup(&rule.multiply(ea, eb))? as u32;
                }
            }
            Some(t)
        } else {
            None
        };
        let mut gens = Vec::new();
        for g in generators {
            let i = lookup(g)?;
            if i != identity && !gens.contains(&i) {
                gens.push(i);
            }
        }
        let labels = Some(encodings.iter().map(|e| rule.label(e)).collect());
        let g = FiniteGroup {
            name: name.to_string(),
            order,
            table,
            structured: Some(Structured { rule, encodings, index }),
            identity,
            inverse,
            generators: gens,
            labels,
            element_orders: OnceLock::new(),
            classes: OnceLock::new(),
        };
        g.check_associativity(10_000, 0)?;
        Ok(g)
    }

    /// Cyclic-product abelian group Z/d₁ × … × Z/d_r, elements in mixed radix
    /// (last coordinate fastest).
    pub fn abelian(divisors: &[u64], table_cap: usize) -> FiniteGroup {
        let rule = Arc::new(crate::rules::AbelianRule { divisors: divisors.to_vec() });
        let gens: Vec<Vec<u8>> = (0..divisors.len())
            .filter(|&i| divisors[i] > 1)
            .map(|i| {
                let mut v = vec![0u8; divisors.len()];
                v[i] = 1;
                v
            })
            .collect();
        let name = format!(
            "Z/{}",
            divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" x Z/")
        );
        FiniteGroup::closure(&name, rule, &gens, usize::MAX, table_cap).expect("abelian product is closed")
    }

    /// Verify associativity (exhaustive up to 512 elements, else `samples`
    /// seeded random triples) and the identity/inverse axioms.
    pub fn check_associativity(&self, samples: usize, seed: u64) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            if self.mul(a, self.inverse[a] as usize) != self.identity
                || self.mul(self.identity, a) != a
                || self.mul(a, self.identity) != a
            {
                return Err(GroupError::AxiomViolation(format!("identity/inverse fails at {a}")));
            }
        }
        if n <= DEFAULT_TABLE_CAP && self.table.is_some() {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(GroupError::AxiomViolation(format!("({a}*{b})*{c}")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(GroupError::AxiomViolation(format!("({a}*{b})*{c}")));
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&i| (std::cmp::Reverse(orders[i]), i));
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        let mut members = vec![self.identity];
        for x in by_order {
            if span[x] {
                continue;
            }
            gens.push(x);
            members = self.closure_indices(&gens);
            span = vec![false; self.order];
            for &m in &members {
                span[m] = true;
            }
            if members.len() == self.order {
                break;
            }
        }
        gens
    }

    /// Sorted members of the subgroup generated by `gens`.
    pub fn closure_indices(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Replace the distinguished generating set (it must generate the group).
    pub fn with_generators(mut self, gens: Vec<usize>) -> Result<FiniteGroup, GroupError> {
        if self.closure_indices(&gens).len() != self.order {
            return Err(GroupError::AxiomViolation("proposed generators do not generate".into()));
        }
        self.generators = gens;
        Ok(self)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.table {
            return t[a * self.order + b] as usize;
        }
        let s = self.structured.as_ref().expect("group has a backend");
        let c = s.rule.multiply(&s.encodings[a], &s.encodings[b]);
        s.index[&c] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// g·x·g⁻¹
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// a·b·a⁻¹·b⁻¹
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn encoding(&self, a: usize) -> Option<&[u8]> {
        self.structured.as_ref().map(|s| s.encodings[a].as_slice())
    }

    pub fn encodings(&self) -> Option<&[Vec<u8>]> {
        self.structured.as_ref().map(|s| s.encodings.as_slice())
    }

    pub fn index_of(&self, enc: &[u8]) -> Option<usize> {
        self.structured.as_ref().and_then(|s| s.index.get(enc).map(|&i| i as usize))
    }

    pub fn rule(&self) -> Option<&Arc<dyn GroupRule>> {
        self.structured.as_ref().map(|s| &s.rule)
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("g{a}"),
        }
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.element_orders()[a]
    }

    pub fn element_orders(&self) -> &[u32] {
        self.element_orders.get_or_init(|| {
            (0..self.order)
                .map(|a| {
                    let mut k = 1;
                    let mut x = a;
                    while x != self.identity {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exponent (lcm of element orders).
    pub fn exponent(&self) -> u64 {
        self.element_orders().iter().fold(1u64, |acc, &o| crate::abelian::lcm(acc, o as u64))
    }
}
