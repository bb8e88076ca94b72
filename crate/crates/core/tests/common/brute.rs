//! Exhaustive reference for stability, written against the move rules directly.
//!
//! Graphs are bitmasks over the list of node pairs. Only `Rational` is shared with the library.

use hiders::Rational;

pub type Graph = u64;

pub struct Brute {
    pub n: usize,
    pub m: usize,
    pub alpha: Vec<Rational>,
    pub pairs: Vec<(usize, usize)>,
    pub fixed: Graph,
}

impl Brute {
    pub fn new(n: usize, m: usize, alpha: Vec<Rational>, original: Vec<(usize, usize)>) -> Brute {
        let nodes = n + m;
        let pairs: Vec<(usize, usize)> = (0..nodes).flat_map(|a| (a + 1..nodes).map(move |b| (a, b))).collect();
        assert!(pairs.len() <= 64);
        let fixed = original.iter().fold(0, |g, &(a, b)| g | 1 << pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap());
        Brute { n, m, alpha, pairs, fixed }
    }

    pub fn nodes(&self) -> usize {
        self.n + self.m
    }

    fn index(&self, a: usize, b: usize) -> usize {
        self.pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap()
    }

    pub fn has(&self, g: Graph, a: usize, b: usize) -> bool {
        g >> self.index(a, b) & 1 == 1
    }

    pub fn degree(&self, g: Graph, v: usize) -> usize {
        (0..self.nodes()).filter(|&u| u != v && self.has(g, u, v)).count()
    }

    pub fn utility(&self, g: Graph, i: usize) -> Rational {
        let mut total = Rational::from_integer(0);
        for j in 0..self.nodes() {
            if j != i && self.has(g, i, j) {
                total += Rational::from_integer(self.degree(g, j) as i64) - self.alpha[i];
            }
        }
        total
    }

    pub fn welfare(&self, g: Graph) -> Rational {
        (0..self.n).map(|i| self.utility(g, i)).sum()
    }

    fn is_player(&self, v: usize) -> bool {
        v < self.n
    }

    fn added_nonplayer(&self, x: usize) -> bool {
        let (a, b) = self.pairs[x];
        !self.is_player(a) && !self.is_player(b) && self.fixed >> x & 1 == 0
    }

    /// Players adjacent to both ends of pair `x`.
    fn common_players(&self, g: Graph, x: usize) -> Vec<usize> {
        let (a, b) = self.pairs[x];
        (0..self.n).filter(|&p| self.has(g, p, a) && self.has(g, p, b)).collect()
    }

    pub fn sustainer(&self, g: Graph, x: usize) -> Option<usize> {
        self.common_players(g, x).first().copied()
    }

    pub fn feasible(&self, g: Graph) -> bool {
        g & self.fixed == self.fixed
            && (0..self.pairs.len()).all(|x| g >> x & 1 == 0 || !self.added_nonplayer(x) || self.sustainer(g, x).is_some())
    }

    pub fn all_feasible(&self) -> Vec<Graph> {
        let free: Vec<usize> = (0..self.pairs.len()).filter(|&x| self.fixed >> x & 1 == 0).collect();
        assert!(free.len() <= 20, "instance too large for the reference search");
        (0u64..1 << free.len())
            .map(|sel| free.iter().enumerate().filter(|(k, _)| sel >> k & 1 == 1).fold(self.fixed, |g, (_, &x)| g | 1 << x))
            .filter(|&g| self.feasible(g))
            .collect()
    }

    /// Whether coalition `p` alone can turn `g` into `h`, both taken with canonical attribution.
    pub fn reachable(&self, g: Graph, h: Graph, p: &[usize]) -> bool {
        let member = |v: usize| p.contains(&v);
        for x in 0..self.pairs.len() {
            let (a, b) = self.pairs[x];
            let (before, after) = (g >> x & 1 == 1, h >> x & 1 == 1);
            let ok = match (self.is_player(a), self.is_player(b)) {
                (true, true) => match (before, after) {
                    (false, true) => member(a) && member(b),
                    (true, false) => member(a) || member(b),
                    _ => true,
                },
                (true, false) => before == after || member(a),
                (false, _) if self.fixed >> x & 1 == 1 => true,
                (false, _) => {
                    let kept_by_outsider = before && self.sustainer(g, x).is_some_and(|s| !member(s));
                    match (before, after) {
                        (true, false) => !kept_by_outsider,
                        (_, true) => kept_by_outsider || self.common_players(h, x).into_iter().any(member),
                        _ => true,
                    }
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Every member weakly gains and someone strictly.
    pub fn improves(&self, g: Graph, h: Graph, p: &[usize]) -> bool {
        let deltas: Vec<Rational> = p.iter().map(|&i| self.utility(h, i) - self.utility(g, i)).collect();
        let zero = Rational::from_integer(0);
        deltas.iter().all(|d| *d >= zero) && deltas.iter().any(|d| *d > zero)
    }

    /// Pairs the coalition might flip.
    fn toggleable(&self, g: Graph, p: &[usize]) -> Vec<usize> {
        (0..self.pairs.len())
            .filter(|&x| {
                let (a, b) = self.pairs[x];
                p.contains(&a) || p.contains(&b) || self.added_nonplayer(x) && (g >> x & 1 == 0 || self.sustainer(g, x).is_some_and(|s| p.contains(&s)))
            })
            .collect()
    }

    /// An improving move of `p` from `g`, if one exists.
    pub fn deviation(&self, g: Graph, p: &[usize]) -> Option<Graph> {
        let flips = self.toggleable(g, p);
        assert!(flips.len() <= 22, "coalition move space too large");
        (1u64..1 << flips.len())
            .map(|sel| flips.iter().enumerate().filter(|(k, _)| sel >> k & 1 == 1).fold(g, |h, (_, &x)| h ^ 1 << x))
            .find(|&h| self.feasible(h) && self.reachable(g, h, p) && self.improves(g, h, p))
    }

    pub fn coalitions(&self, size: usize) -> Vec<Vec<usize>> {
        (0u64..1 << self.n)
            .filter(|s| s.count_ones() as usize == size)
            .map(|s| (0..self.n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }

    /// A linking pair that both accept and one strictly wants.
    pub fn pair_block(&self, g: Graph) -> Option<(usize, usize)> {
        (0..self.n).flat_map(|i| (i + 1..self.n).map(move |j| (i, j))).find(|&(i, j)| {
            !self.has(g, i, j) && self.improves(g, g | 1 << self.index(i, j), &[i, j])
        })
    }

    pub fn nash(&self, g: Graph) -> bool {
        (0..self.n).all(|i| self.deviation(g, &[i]).is_none())
    }

    pub fn stable(&self, g: Graph, k: usize) -> bool {
        if k == 1 && self.pair_block(g).is_some() {
            return false;
        }
        (1..=k).all(|s| self.coalitions(s).iter().all(|p| self.deviation(g, p).is_none()))
    }

    /// Edge list of `g`, zero-based.
    pub fn edges(&self, g: Graph) -> Vec<(usize, usize)> {
        (0..self.pairs.len()).filter(|&x| g >> x & 1 == 1).map(|x| self.pairs[x]).collect()
    }

    pub fn from_edges(&self, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        edges.into_iter().fold(0, |g, (a, b)| g | 1 << self.index(a, b))
    }
}
