//! Brute-force oracles, independent of the library's echelon code:
//!
//! - `Sumset`: monomial rings through iterated sumsets of the generators.
//! - `Dense`: any ring with small integer coefficients, through dense
//!   Gaussian elimination over GF(2^61 - 1) on all products of generators.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub const P: u64 = (1 << 61) - 1;

fn mulp(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let r = (x as u64 & P) + (x >> 61) as u64;
    let r = (r & P) + (r >> 61);
    if r >= P {
        r - P
    } else {
        r
    }
}

fn addp(a: u64, b: u64) -> u64 {
    let r = a + b;
    if r >= P {
        r - P
    } else {
        r
    }
}

fn subp(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn powp(mut a: u64, mut n: u64) -> u64 {
    let mut r = 1;
    while n > 0 {
        if n & 1 == 1 {
            r = mulp(r, a);
        }
        a = mulp(a, a);
        n >>= 1;
    }
    r
}

fn invp(a: u64) -> u64 {
    powp(a, P - 2)
}

pub fn divide(a: u64, b: u64) -> u64 {
    mulp(a, invp(b))
}

fn from_i64(c: i64) -> u64 {
    if c >= 0 {
        c as u64 % P
    } else {
        P - ((-c) as u64 % P)
    }
}

pub type Terms = Vec<(u32, i64)>;

/// In the library's series syntax, e.g. `t^8 - 2*t^11`.
pub fn render(terms: &Terms) -> String {
    let mut s = String::new();
    for (idx, &(k, c)) in terms.iter().enumerate() {
        if idx > 0 {
            s.push_str(if c < 0 { " - " } else { " + " });
        } else if c < 0 {
            s.push('-');
        }
        if c.abs() != 1 {
            s.push_str(&format!("{}*", c.abs()));
        }
        s.push_str(&format!("t^{k}"));
    }
    s
}

// ---------------------------------------------------------------------------
// Monomial rings by sumsets.

pub struct Sumset {
    pub gens: Vec<u32>,
    pub e: u32,
    /// Elements of `S` below `bound`.
    pub s: BTreeSet<u32>,
    pub bound: u32,
}

impl Sumset {
    /// `bound` must exceed `c + (e+3)e`.
    pub fn new(gens: &[u32], bound: u32) -> Self {
        let mut s = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(v) = frontier.pop() {
            for &g in gens {
                if v + g < bound && s.insert(v + g) {
                    frontier.push(v + g);
                }
            }
        }
        Sumset {
            gens: gens.to_vec(),
            e: *gens.iter().min().unwrap(),
            s,
            bound,
        }
    }

    /// `v(m^i)`: sums of at least `i` generators.
    pub fn power(&self, i: u32) -> BTreeSet<u32> {
        let mut cur = BTreeSet::from([0]);
        for _ in 0..i {
            cur = cur
                .iter()
                .flat_map(|&v| self.gens.iter().map(move |&g| v + g))
                .filter(|&v| v < self.bound)
                .collect();
        }
        cur.iter()
            .flat_map(|&v| self.s.iter().map(move |&u| v + u))
            .filter(|&v| v < self.bound)
            .collect()
    }

    pub fn apery_of(&self, set: &BTreeSet<u32>) -> Vec<u32> {
        (0..self.e)
            .map(|j| *set.iter().find(|&&v| v % self.e == j).unwrap())
            .collect()
    }

    pub fn apery(&self) -> Vec<u32> {
        self.apery_of(&self.s)
    }

    pub fn conductor(&self) -> u32 {
        let mut c = self.bound;
        while c > 0 && self.s.contains(&(c - 1)) {
            c -= 1;
        }
        c
    }

    pub fn reduction_number(&self) -> u32 {
        (0..)
            .find(|&n| {
                let a = self.power(n);
                let b = self.power(n + 1);
                (0..self.bound)
                    .all(|v| b.contains(&v) == (v >= self.e && a.contains(&(v - self.e))))
            })
            .unwrap()
    }

    /// `(b, c, a, hilb_r, hilb_mod)` for `x = t^e`.
    pub fn invariants(&self) -> [Vec<u32>; 5] {
        let e = self.e;
        let r = self.reduction_number();
        let powers: Vec<_> = (0..=r + 2).map(|i| self.power(i)).collect();
        let w = self.apery();
        let b: Vec<u32> = w
            .iter()
            .map(|&v| {
                (0..=r + 1)
                    .rev()
                    .find(|&i| powers[i as usize].contains(&v))
                    .unwrap()
            })
            .collect();
        let xr: BTreeSet<u32> = self.s.iter().map(|v| v + e).collect();
        let c: Vec<u32> = w
            .iter()
            .map(|&v| {
                (0..=r + 1)
                    .rev()
                    .find(|&i| powers[i as usize].contains(&v) || xr.contains(&v))
                    .unwrap()
            })
            .collect();
        let blowup: BTreeSet<u32> = powers[r as usize]
            .iter()
            .filter(|&&v| v >= r * e)
            .map(|v| v - r * e)
            .collect();
        let wp = self.apery_of(&blowup);
        let a: Vec<u32> = w.iter().zip(&wp).map(|(x, y)| (x - y) / e).collect();
        let hilb_r: Vec<u32> = (0..=r)
            .map(|i| {
                let window = (i + 1) * e + self.conductor();
                (0..window)
                    .filter(|v| {
                        powers[i as usize].contains(v) && !powers[i as usize + 1].contains(v)
                    })
                    .count() as u32
            })
            .collect();
        let mut hilb_mod = vec![0u32; r as usize + 1];
        for &cj in &c {
            hilb_mod[cj as usize] += 1;
        }
        while hilb_mod.len() > 1 && *hilb_mod.last().unwrap() == 0 {
            hilb_mod.pop();
        }
        [b, c, a, hilb_r, hilb_mod]
    }
}

// ---------------------------------------------------------------------------
// Dense linear algebra over GF(P), truncated at `t^n`.

#[derive(Clone)]
pub struct Span {
    pub n: usize,
    /// `rows[k]` is the normalized row with lead `k`.
    pub rows: Vec<Option<Vec<u64>>>,
}

impl Span {
    pub fn new(n: usize) -> Self {
        Span {
            n,
            rows: vec![None; n],
        }
    }

    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for k in 0..self.n {
            if v[k] == 0 {
                continue;
            }
            if let Some(row) = &self.rows[k] {
                let f = v[k];
                for (x, y) in v[k..].iter_mut().zip(&row[k..]) {
                    *x = subp(*x, mulp(f, *y));
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        let Some(k) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = invp(v[k]);
        self.rows[k] = Some(v.into_iter().map(|x| mulp(x, inv)).collect());
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    pub fn leads(&self) -> BTreeSet<u32> {
        (0..self.n)
            .filter(|&k| self.rows[k].is_some())
            .map(|k| k as u32)
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    pub fn vectors(&self) -> Vec<Vec<u64>> {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn truncated(&self, m: usize) -> Span {
        let mut s = Span::new(m);
        for v in self.vectors() {
            s.insert(v[..m].to_vec());
        }
        s
    }
}

pub fn dense(terms: &Terms, n: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    for &(k, c) in terms {
        if (k as usize) < n {
            v[k as usize] = addp(v[k as usize], from_i64(c));
        }
    }
    v
}

pub fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let support: Vec<(usize, u64)> = b.iter().copied().enumerate().filter(|t| t.1 != 0).collect();
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for &(j, y) in support.iter().take_while(|(j, _)| i + j < n) {
            out[i + j] = addp(out[i + j], mulp(x, y));
        }
    }
    out
}

/// `a / b` truncated to `n - ord(b)` coefficients; `None` if `ord(a) < ord(b)`.
pub fn div(a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let k = b.iter().position(|&x| x != 0)?;
    if a.iter().position(|&x| x != 0).is_some_and(|o| o < k) {
        return None;
    }
    let m = a.len() - k;
    let unit = &b[k..];
    let inv = invp(unit[0]);
    let mut rem: Vec<u64> = a[k..].to_vec();
    let mut q = vec![0; m];
    for i in 0..m {
        if rem[i] == 0 {
            continue;
        }
        let c = mulp(rem[i], inv);
        q[i] = c;
        for (j, &u) in unit.iter().enumerate().take(m - i) {
            rem[i + j] = subp(rem[i + j], mulp(c, u));
        }
    }
    Some(q)
}

pub struct Dense {
    pub n: usize,
    pub e: u32,
    pub gens: Vec<Vec<u64>>,
    /// `m^i mod t^n` for `i = 0..=top`.
    pub powers: Vec<Span>,
}

impl Dense {
    /// `n` must exceed `c + (top + 1)·e` for the ring's conductor `c`.
    pub fn new(gens: &[Terms], n: usize, top: u32) -> Self {
        let g: Vec<Vec<u64>> = gens.iter().map(|t| dense(t, n)).collect();
        let e = g
            .iter()
            .map(|v| v.iter().position(|&x| x != 0).unwrap())
            .min()
            .unwrap() as u32;
        // products of exactly k generators
        let mut layers: Vec<Span> = Vec::new();
        let mut one = vec![0; n];
        one[0] = 1;
        let mut layer = Span::new(n);
        layer.insert(one);
        while layer.dim() > 0 {
            let mut next = Span::new(n);
            for v in layer.vectors() {
                for gv in &g {
                    next.insert(mul(&v, gv));
                }
            }
            layers.push(layer);
            layer = next;
        }
        // m^i = (products of exactly i generators) + m^{i+1}
        let mut acc = Span::new(n);
        for l in layers.iter().skip(top as usize + 1) {
            for v in l.vectors() {
                acc.insert(v);
            }
        }
        let mut powers = Vec::new();
        for i in (0..=top as usize).rev() {
            if let Some(l) = layers.get(i) {
                for v in l.vectors() {
                    acc.insert(v);
                }
            }
            powers.push(acc.clone());
        }
        powers.reverse();
        Dense {
            n,
            e,
            gens: g,
            powers,
        }
    }

    pub fn values(&self, i: u32) -> BTreeSet<u32> {
        self.powers[i as usize].leads()
    }

    pub fn apery(&self) -> Vec<u32> {
        let s = self.values(0);
        (0..self.e)
            .map(|j| *s.iter().find(|&&v| v % self.e == j).unwrap())
            .collect()
    }

    /// Least `n` with `v(m^{n+1}) = e + v(m^n)` inside the window.
    pub fn reduction_number(&self) -> u32 {
        let top = self.powers.len() as u32 - 1;
        (0..top)
            .find(|&k| {
                let a = self.values(k);
                let b = self.values(k + 1);
                (0..self.n as u32)
                    .all(|v| b.contains(&v) == (v >= self.e && a.contains(&(v - self.e))))
            })
            .expect("window too small")
    }

    pub fn hilb_r(&self, r: u32) -> Vec<u32> {
        (0..=r)
            .map(|i| self.values(i).difference(&self.values(i + 1)).count() as u32)
            .collect()
    }

    pub fn conductor(&self) -> u32 {
        let s = self.values(0);
        let mut c = self.n as u32;
        while c > 0 && s.contains(&(c - 1)) {
            c -= 1;
        }
        c
    }

    pub fn vord(&self, v: u32) -> u32 {
        (0..self.powers.len() as u32)
            .rev()
            .find(|&i| self.values(i).contains(&v))
            .unwrap()
    }

    /// `c_j` for the reduction `x`.
    pub fn c(&self, x: &Terms, r: u32) -> Vec<u32> {
        let xv = dense(x, self.n);
        let mut xr = Span::new(self.n);
        for v in self.powers[0].vectors() {
            xr.insert(mul(&v, &xv));
        }
        self.apery()
            .iter()
            .map(|&w| {
                (0..=r + 1)
                    .rev()
                    .find(|&i| {
                        let mut s = xr.clone();
                        for v in self.powers[i as usize].vectors() {
                            s.insert(v);
                        }
                        s.leads().contains(&w)
                    })
                    .unwrap()
            })
            .collect()
    }

    /// `a_j` from `v(m^r) - re`, and the sorted `ε` from the lengths of
    /// `R'/(R + x^k R')`, working modulo `t^c`.
    pub fn a_eps(&self, x: &Terms, r: u32) -> (Vec<u32>, Vec<u32>) {
        let e = self.e;
        let c = self.conductor() as usize;
        let w = self.apery();
        let blow: BTreeSet<u32> = self
            .values(r)
            .iter()
            .filter(|&&v| v >= r * e)
            .map(|v| v - r * e)
            .collect();
        let a: Vec<u32> = w
            .iter()
            .map(|&wj| {
                let wp = *blow.iter().find(|&&v| v % e == wj % e).unwrap();
                (wj - wp) / e
            })
            .collect();
        let xv = dense(x, self.n);
        let mut xr = vec![0; self.n];
        xr[0] = 1;
        for _ in 0..r {
            xr = mul(&xr, &xv);
        }
        let mut rp = Span::new(c);
        for v in self.powers[r as usize].vectors() {
            let q = div(&v, &xr).unwrap();
            rp.insert(q[..c].to_vec());
        }
        let ring = self.powers[0].truncated(c);
        let d = |k: u32| {
            let mut s = ring.clone();
            let mut xk = vec![0; c];
            xk[0] = 1;
            for _ in 0..k {
                xk = mul(&xk, &xv[..c]);
            }
            for v in rp.vectors() {
                s.insert(mul(&v, &xk));
            }
            rp.dim() - s.dim()
        };
        let ds: Vec<usize> = (0..=r + 1).map(d).collect();
        let mut eps = vec![0u32; e as usize];
        for k in 1..=r as usize + 1 {
            let at_least = ds[k] - ds[k - 1];
            for slot in eps.iter_mut().take(at_least) {
                *slot += 1;
            }
        }
        eps.sort_unstable();
        (a, eps)
    }

    /// `x^h f ∈ m^i`.
    pub fn in_power(&self, f: &[u64], i: u32) -> bool {
        self.powers[i as usize].contains(f)
    }
}
