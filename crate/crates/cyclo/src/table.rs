//! Per-conductor reduction tables: row k holds ζ^k reduced modulo Φ_N.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::poly::cyclotomic_polynomial;

pub(crate) struct Table {
    pub n: u32,
    pub phi: usize,
    rows: Vec<i64>,
    /// Bit length of the largest absolute entry, used for overflow bounds.
    pub entry_bits: u32,
}

impl Table {
    fn build(n: u32) -> Table {
        let poly = cyclotomic_polynomial(n as u64);
        let phi = poly.len() - 1;
        let mut rows = Vec::with_capacity(n as usize * phi);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            rows.extend_from_slice(&cur);
            // multiply by x and reduce the overflowing top coefficient
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
        }
        let max = rows.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
        Table { n, phi, rows, entry_bits: 64 - max.leading_zeros() }
    }

    #[inline]
    pub fn row(&self, k: usize) -> &[i64] {
        let k = k % self.n as usize;
        &self.rows[k * self.phi..(k + 1) * self.phi]
    }
}

fn global() -> &'static Mutex<HashMap<u32, Arc<Table>>> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<Table>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

thread_local! {
    static LOCAL: RefCell<HashMap<u32, Arc<Table>>> = RefCell::new(HashMap::new());
}

pub(crate) fn table(n: u32) -> Arc<Table> {
    LOCAL.with(|local| {
        if let Some(t) = local.borrow().get(&n) {
            return t.clone();
        }
        let t = global()
            .lock()
            .unwrap()
            .entry(n)
            .or_insert_with(|| Arc::new(Table::build(n)))
            .clone();
        local.borrow_mut().insert(n, t.clone());
        t
    })
}

pub(crate) fn phi(n: u32) -> usize {
    table(n).phi
}
