//! Canonical spans of subgroups of `⊕_t Z/p^{a_t}`.
//!
//! A `ModSpan` keeps an echelon basis (a Howell-style normal form over the
//! local ring of p-power residues) for the subgroup generated by the vectors
//! inserted so far. The form is canonical: two spans describe the same
//! subgroup exactly when their serialized keys agree. Membership tests,
//! exact size, deterministic enumeration and unions all come cheap, which is
//! what makes exhaustive subgroup and ideal enumeration tractable.

use crate::group::{mul_mod, valuation};

#[derive(Clone, Debug)]
pub(crate) struct ModSpan {
    p: u64,
    moduli: Vec<u64>,
    exps: Vec<u32>,
    /// Echelon rows, sorted by pivot column; row i has zeros before
    /// `pivot_col[i]` and exactly `p^pivot_val[i]` there.
    rows: Vec<Vec<u64>>,
    pivot_col: Vec<usize>,
    pivot_val: Vec<u32>,
}

impl ModSpan {
    pub fn new(p: u64, moduli: Vec<u64>) -> ModSpan {
        let exps = moduli.iter().map(|&m| valuation_of_modulus(p, m)).collect();
        ModSpan {
            p,
            moduli,
            exps,
            rows: Vec::new(),
            pivot_col: Vec::new(),
            pivot_val: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    fn row_at_col(&self, col: usize) -> Option<usize> {
        self.pivot_col.iter().position(|&c| c == col)
    }

    /// Inserts a vector; returns true when the span grew.
    pub fn insert(&mut self, w: &[u64]) -> bool {
        debug_assert_eq!(w.len(), self.dim());
        let mut changed = false;
        let mut queue: Vec<Vec<u64>> = vec![w.to_vec()];
        while let Some(mut v) = queue.pop() {
            let mut col = 0;
            loop {
                while col < self.dim() && v[col] == 0 {
                    col += 1;
                }
                if col == self.dim() {
                    break;
                }
                let val = valuation(self.p, v[col]);
                match self.row_at_col(col) {
                    Some(r) if val >= self.pivot_val[r] => {
                        let mult = v[col] / self.p.pow(self.pivot_val[r]);
                        self.sub_scaled(&mut v, mult, r);
                        debug_assert_eq!(v[col], 0);
                    }
                    Some(r) => {
                        // Smaller valuation: the new vector takes over the
                        // pivot, the old row goes back on the queue.
                        self.normalize_pivot(&mut v, col, val);
                        let old = std::mem::replace(&mut self.rows[r], v);
                        self.pivot_val[r] = val;
                        queue.push(old);
                        queue.push(self.shadow(r));
                        changed = true;
                        break;
                    }
                    None => {
                        self.normalize_pivot(&mut v, col, val);
                        let pos = self
                            .pivot_col
                            .iter()
                            .position(|&c| c > col)
                            .unwrap_or(self.rows.len());
                        self.rows.insert(pos, v);
                        self.pivot_col.insert(pos, col);
                        self.pivot_val.insert(pos, val);
                        queue.push(self.shadow(pos));
                        changed = true;
                        break;
                    }
                }
            }
        }
        if changed {
            self.reduce_off_pivots();
        }
        changed
    }

    /// The modulus shadow of a pivot row: `(d_c / p^v) · row`, which is zero
    /// at the pivot column but may generate further down.
    fn shadow(&self, r: usize) -> Vec<u64> {
        let col = self.pivot_col[r];
        let mult = self.moduli[col] / self.p.pow(self.pivot_val[r]);
        self.scaled_row(mult, r)
    }

    fn scaled_row(&self, mult: u64, r: usize) -> Vec<u64> {
        self.rows[r]
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| mul_mod(mult % m, x, m))
            .collect()
    }

    fn sub_scaled(&self, v: &mut [u64], mult: u64, r: usize) {
        for ((x, &row_x), &m) in v.iter_mut().zip(&self.rows[r]).zip(&self.moduli) {
            let s = mul_mod(mult % m, row_x, m);
            *x = (*x + m - s) % m;
        }
    }

    /// Scales a vector by the inverse of the unit part of its leading entry,
    /// so the entry becomes exactly `p^val`.
    fn normalize_pivot(&self, v: &mut [u64], col: usize, val: u32) {
        let unit = v[col] / self.p.pow(val);
        let max_mod = self.p.pow(*self.exps.iter().max().unwrap());
        let inv = mod_inverse(unit % max_mod, max_mod);
        for (x, &m) in v.iter_mut().zip(&self.moduli) {
            *x = mul_mod(inv % m, *x, m);
        }
        debug_assert_eq!(v[col], self.p.pow(val));
    }

    /// Reduces entries above each pivot into `[0, p^pivot_val)`.
    fn reduce_off_pivots(&mut self) {
        for i in 0..self.rows.len() {
            let col = self.pivot_col[i];
            let pv = self.p.pow(self.pivot_val[i]);
            for j in 0..i {
                let q = self.rows[j][col] / pv;
                if q != 0 {
                    let row = self.rows[i].clone();
                    for ((x, &row_x), &m) in
                        self.rows[j].iter_mut().zip(&row).zip(&self.moduli)
                    {
                        let s = mul_mod(q % m, row_x, m);
                        *x = (*x + m - s) % m;
                    }
                }
            }
        }
    }

    pub fn contains(&self, w: &[u64]) -> bool {
        debug_assert_eq!(w.len(), self.dim());
        let mut v = w.to_vec();
        let mut col = 0;
        loop {
            while col < self.dim() && v[col] == 0 {
                col += 1;
            }
            if col == self.dim() {
                return true;
            }
            match self.row_at_col(col) {
                Some(r) if valuation(self.p, v[col]) >= self.pivot_val[r] => {
                    let mult = v[col] / self.p.pow(self.pivot_val[r]);
                    self.sub_scaled(&mut v, mult, r);
                }
                _ => return false,
            }
        }
    }

    pub fn size(&self) -> u64 {
        let mut size = 1u64;
        for (r, &col) in self.pivot_col.iter().enumerate() {
            size *= self.moduli[col] / self.p.pow(self.pivot_val[r]);
        }
        size
    }

    /// Canonical serialization; equal keys exactly when the subgroups agree.
    pub fn key(&self) -> Vec<u64> {
        let mut key = Vec::with_capacity(self.rows.len() * (self.dim() + 1));
        for (r, row) in self.rows.iter().enumerate() {
            key.push(self.pivot_col[r] as u64);
            key.extend_from_slice(row);
        }
        key
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Every member, each exactly once, in a deterministic mixed-radix order
    /// over the echelon basis.
    pub fn members(&self) -> Vec<Vec<u64>> {
        let counts: Vec<u64> = self
            .pivot_col
            .iter()
            .zip(&self.pivot_val)
            .map(|(&c, &v)| self.moduli[c] / self.p.pow(v))
            .collect();
        let total = self.size();
        let mut out = Vec::with_capacity(total as usize);
        let rollover: Vec<Vec<u64>> = (0..self.rows.len())
            .map(|r| self.scaled_row(counts[r], r))
            .collect();
        let mut digits = vec![0u64; self.rows.len()];
        let mut cur = vec![0u64; self.dim()];
        for _ in 0..total {
            out.push(cur.clone());
            let mut i = 0;
            while i < self.rows.len() {
                digits[i] += 1;
                for ((x, &row_x), &m) in cur.iter_mut().zip(&self.rows[i]).zip(&self.moduli) {
                    *x = (*x + row_x) % m;
                }
                if digits[i] < counts[i] {
                    break;
                }
                digits[i] = 0;
                for ((x, &roll_x), &m) in cur.iter_mut().zip(&rollover[i]).zip(&self.moduli) {
                    *x = (*x + m - roll_x) % m;
                }
                i += 1;
            }
        }
        out
    }

    /// Span of the union with another span over the same moduli.
    pub fn merged(&self, other: &ModSpan) -> ModSpan {
        debug_assert_eq!(self.moduli, other.moduli);
        let mut out = self.clone();
        for row in &other.rows {
            out.insert(row);
        }
        out
    }
}

fn valuation_of_modulus(p: u64, m: u64) -> u32 {
    let mut e = 0;
    let mut x = m;
    while x > 1 {
        debug_assert_eq!(x % p, 0, "modulus must be a power of p");
        x /= p;
        e += 1;
    }
    e
}

/// Inverse of a unit modulo a p-power, by extended Euclid.
fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "not a unit");
    s0.rem_euclid(m as i128) as u64
}
