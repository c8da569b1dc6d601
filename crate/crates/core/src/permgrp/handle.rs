use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Groups up to this order get a dense multiplication table.
pub const TABLE_LIMIT: usize = 8192;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 250_000;

/// Multiplication on fixed-length canonical element keys.
///
/// Keys must be canonical: two keys denote the same element iff they are
/// byte-equal. `mul` must be associative on every key it can produce.
pub trait GroupRule: Send + Sync {
    fn key_len(&self) -> usize;
    fn identity(&self) -> Vec<u8>;
    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]);
}

/// A fully enumerated finite group.
///
/// Elements are numbered in breadth-first discovery order from the identity
/// (index 0), right-multiplying by the generators in their given order, so
/// the numbering is a pure function of the generator list. Each element
/// keeps the generator word that first reached it.
pub struct GroupHandle {
    rule: Arc<dyn GroupRule>,
    key_len: usize,
    keys: Vec<u8>,
    index: HashMap<Vec<u8>, u32>,
    gens: Vec<u32>,
    right: Vec<Vec<u32>>,
    parent: Vec<u32>,
    letter: Vec<u8>,
    word_start: Vec<u32>,
    word_buf: Vec<u8>,
    inv: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHandle")
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

/// Breadth-first closure of `gen_keys` under `rule`.
pub fn close_generators(rule: Arc<dyn GroupRule>, gen_keys: &[Vec<u8>], cap: usize) -> Result<GroupHandle> {
    if gen_keys.is_empty() {
        return Err(Error::InvalidArgument("empty generator list".into()));
    }
    if gen_keys.len() > u8::MAX as usize {
        return Err(Error::InvalidArgument("too many generators".into()));
    }
    let key_len = rule.key_len();
    if gen_keys.iter().any(|k| k.len() != key_len) {
        return Err(Error::InvalidArgument("generator key has wrong length".into()));
    }
    let ngens = gen_keys.len();
    let identity = rule.identity();

    let mut keys: Vec<u8> = identity.clone();
    let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut parent = vec![0u32];
    let mut letter = vec![0u8];
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); ngens];
    let mut out = vec![0u8; key_len];

    let mut next = 0usize;
    while next < parent.len() {
        for (j, g) in gen_keys.iter().enumerate() {
            let cur = &keys[next * key_len..(next + 1) * key_len];
            rule.mul(cur, g, &mut out);
            let idx = match index.get(out.as_slice()) {
                Some(&i) => i,
                None => {
                    let i = parent.len();
                    if i >= cap {
                        return Err(Error::cap("group closure", cap));
                    }
                    keys.extend_from_slice(&out);
                    index.insert(out.clone(), i as u32);
                    parent.push(next as u32);
                    letter.push(j as u8);
                    i as u32
                }
            };
            right[j].push(idx);
        }
        next += 1;
    }

    let n = parent.len();
    let mut word_start = Vec::with_capacity(n + 1);
    let mut word_buf: Vec<u8> = Vec::new();
    word_start.push(0u32);
    word_start.push(0u32);
    for i in 1..n {
        let p = parent[i] as usize;
        let (s, e) = (word_start[p] as usize, word_start[p + 1] as usize);
        word_buf.extend_from_within(s..e);
        word_buf.push(letter[i]);
        word_start.push(word_buf.len() as u32);
    }

    let gens = (0..ngens).map(|j| right[j][0]).collect();
    let mut g = GroupHandle {
        rule,
        key_len,
        keys,
        index,
        gens,
        right,
        parent,
        letter,
        word_start,
        word_buf,
        inv: Vec::new(),
        table: None,
    };
    if n <= TABLE_LIMIT {
        g.build_table();
    }
    g.build_inverses();
    Ok(g)
}

impl GroupHandle {
    fn build_table(&mut self) {
        let n = self.order();
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut t[a * n..(a + 1) * n];
            row[0] = a as u32;
            for h in 1..n {
                let p = self.parent[h] as usize;
                row[h] = self.right[self.letter[h] as usize][row[p] as usize];
            }
        }
        self.table = Some(t);
    }

    fn build_inverses(&mut self) {
        let n = self.order();
        let gen_inv: Vec<u32> = self
            .gens
            .iter()
            .map(|&g| {
                let m = self.order_of(g);
                self.pow(g, m - 1)
            })
            .collect();
        let mut inv = vec![0u32; n];
        for i in 1..n {
            let p = self.parent[i] as usize;
            inv[i] = self.mul(gen_inv[self.letter[i] as usize], inv[p]);
        }
        self.inv = inv;
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn rule(&self) -> &Arc<dyn GroupRule> {
        &self.rule
    }

    pub fn key_len(&self) -> usize {
        self.key_len
    }

    pub fn key(&self, i: u32) -> &[u8] {
        let i = i as usize;
        &self.keys[i * self.key_len..(i + 1) * self.key_len]
    }

    pub fn index_of(&self, key: &[u8]) -> Option<u32> {
        self.index.get(key).copied()
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Generator letters whose product (left to right) is element `i`.
    pub fn word(&self, i: u32) -> &[u8] {
        let i = i as usize;
        &self.word_buf[self.word_start[i] as usize..self.word_start[i + 1] as usize]
    }

    /// BFS parent and the generator letter leading from it to `i`.
    pub fn tree_edge(&self, i: u32) -> (u32, u8) {
        (self.parent[i as usize], self.letter[i as usize])
    }

    /// `g * gens[j]`.
    #[inline]
    pub fn mul_gen(&self, g: u32, j: usize) -> u32 {
        self.right[j][g as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self
                .word(b)
                .iter()
                .fold(a, |c, &l| self.right[l as usize][c as usize]),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 0u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn order_of(&self, a: u32) -> u64 {
        let mut x = a;
        let mut m = 1;
        while x != 0 {
            x = self.mul(x, a);
            m += 1;
        }
        m
    }

    pub fn element_orders(&self) -> Vec<u64> {
        (0..self.order() as u32).map(|i| self.order_of(i)).collect()
    }

    /// Product of `images[l]` over the letters `l` of `word`.
    pub fn eval_word(&self, word: &[u8], images: &[u32]) -> u32 {
        word.iter().fold(0u32, |c, &l| self.mul(c, images[l as usize]))
    }

    /// Elements commuting with `x`, ascending.
    pub fn centralizer(&self, x: u32) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect()
    }

    /// Conjugacy classes, ordered by their least element.
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let n = self.order();
        let mut seen = vec![false; n];
        let gen_inv: Vec<u32> = self.gens.iter().map(|&g| self.inv(g)).collect();
        let mut classes = Vec::new();
        for r in 0..n as u32 {
            if seen[r as usize] {
                continue;
            }
            seen[r as usize] = true;
            let mut members = vec![r];
            let mut q = VecDeque::from([r]);
            while let Some(x) = q.pop_front() {
                for (j, &gi) in gen_inv.iter().enumerate() {
                    let y = self.mul_gen(self.mul(gi, x), j);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        members.push(y);
                        q.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass {
                rep: r,
                element_order: self.order_of(r),
                members,
            });
        }
        classes
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[u32]) -> Vec<u32> {
        let mut probe = ClosureProbe::new(self.order());
        let mut out = probe.closure(self, gens, None);
        out.sort_unstable();
        out
    }

    /// Whether `<a, b>` is the whole group.
    pub fn generates(&self, a: u32, b: u32) -> bool {
        ClosureProbe::new(self.order()).generates(self, &[a, b])
    }

    pub fn is_subgroup(&self, set: &[u32]) -> bool {
        let members: std::collections::HashSet<u32> = set.iter().copied().collect();
        members.contains(&0)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| members.contains(&self.mul(a, b))))
    }

    pub fn summary(&self) -> GroupSummary {
        let classes = self.conjugacy_classes();
        GroupSummary {
            order: self.order(),
            n_classes: classes.len(),
            class_sizes: classes.iter().map(|c| c.members.len()).collect(),
            generator_orders: self.gens.iter().map(|&g| self.order_of(g)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub rep: u32,
    pub members: Vec<u32>,
    pub element_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub n_classes: usize,
    pub class_sizes: Vec<usize>,
    pub generator_orders: Vec<u64>,
}

/// Reusable scratch space for repeated subgroup closures on one group.
pub struct ClosureProbe {
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
}

impl ClosureProbe {
    pub fn new(n: usize) -> Self {
        ClosureProbe {
            stamp: vec![0; n],
            epoch: 0,
            queue: Vec::new(),
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    fn run(&mut self, g: &GroupHandle, gens: &[u32], stop_above: Option<usize>) -> usize {
        let e = self.next_epoch();
        self.queue.clear();
        self.queue.push(0);
        self.stamp[0] = e;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for &s in gens {
                let y = g.mul(x, s);
                if self.stamp[y as usize] != e {
                    self.stamp[y as usize] = e;
                    self.queue.push(y);
                    if stop_above.is_some_and(|m| self.queue.len() > m) {
                        return self.queue.len();
                    }
                }
            }
        }
        self.queue.len()
    }

    /// Elements of `<gens>` in discovery order. With `stop_above = Some(m)`
    /// the search stops as soon as more than `m` elements are found.
    pub fn closure(&mut self, g: &GroupHandle, gens: &[u32], stop_above: Option<usize>) -> Vec<u32> {
        self.run(g, gens, stop_above);
        self.queue.clone()
    }

    /// Whether `gens` generate all of `g`. A proper subgroup has at most
    /// half the elements, so the search stops once it passes that bound.
    pub fn generates(&mut self, g: &GroupHandle, gens: &[u32]) -> bool {
        let n = g.order();
        if n == 1 {
            return true;
        }
        self.run(g, gens, Some(n / 2)) > n / 2
    }
}
