//! Random valid certificates over `Z/N` and corruptions of valid ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{rule_level, Certificate, Node, NodeKind, Payload, SeedClass, TowerPayload};
use crate::abelian::{quotient, submodule};
use crate::scalar::factorize;
use crate::{Int, Matrix, Module};

struct Gen {
    rng: ChaCha8Rng,
    n: Int,
    divisors: Vec<Int>,
    nodes: Vec<Node>,
}

impl Gen {
    fn push(&mut self, kind: NodeKind, level: u8, children: Vec<usize>, payload: Payload) -> usize {
        self.nodes.push(Node {
            kind,
            level,
            children,
            payload: Some(payload),
        });
        self.nodes.len() - 1
    }

    fn module_of(&self, v: usize) -> Module {
        Module::new(self.nodes[v].payload.as_ref().expect("generated with payloads").module.clone())
    }

    fn random_module(&mut self) -> Module {
        let k = self.rng.gen_range(1..=2);
        Module::new((0..k).map(|_| *self.divisors.choose(&mut self.rng).unwrap()).collect())
    }

    fn seed(&mut self, m: &Module, level: u8) -> usize {
        let tag = match self.rng.gen_range(0..3) {
            0 => SeedClass::QuotientRingModule {
                s: *self.divisors.choose(&mut self.rng).unwrap(),
            },
            1 => SeedClass::LocalizedRingModule,
            _ => SeedClass::Custom { label: "random".into() },
        };
        self.push(NodeKind::Seed { tag }, level, vec![], Payload::module(m))
    }

    fn random_element(&mut self, m: &Module) -> Vec<Int> {
        m.orders().iter().map(|&d| self.rng.gen_range(0..d.max(1))).collect()
    }

    fn maps_payload(m: &Module, maps: &[&Matrix]) -> Payload {
        Payload {
            module: m.orders().to_vec(),
            maps: maps.iter().map(|f| f.to_rows()).collect(),
            tower: None,
        }
    }

    fn node(&mut self, depth: usize) -> usize {
        if depth == 0 || self.rng.gen_bool(0.3) {
            let m = self.random_module();
            return self.seed(&m, 1);
        }
        match self.rng.gen_range(0..6) {
            0 => {
                let a = self.node(depth - 1);
                let b = self.node(depth - 1);
                let m = self.module_of(a).direct_sum(&self.module_of(b));
                let level = self.nodes[a].level.max(self.nodes[b].level);
                let p = Payload::module(&m);
                self.push(NodeKind::FiniteProduct, level, vec![a, b], p)
            }
            1 => self.extension(depth),
            2 => {
                let c = self.node(depth - 1);
                let cm = self.module_of(c);
                let level = self.nodes[c].level;
                let (m, incl, proj) = if cm.is_empty() {
                    (cm.clone(), Matrix::zeros(0, 0), Matrix::zeros(0, 0))
                } else {
                    let j = self.rng.gen_range(0..cm.len());
                    let mut incl = Matrix::zeros(1, cm.len());
                    let mut proj = Matrix::zeros(cm.len(), 1);
                    incl[(0, j)] = 1;
                    proj[(j, 0)] = 1;
                    (Module::new(vec![cm.orders()[j]]), incl, proj)
                };
                let p = Self::maps_payload(&m, &[&incl, &proj]);
                self.push(NodeKind::DirectSummand, level, vec![c], p)
            }
            3 => {
                let t = self.node(depth - 1);
                let tm = self.module_of(t);
                let v = self.random_element(&tm);
                let sub = submodule(&tm, &Matrix::from_rows(tm.len(), vec![v]));
                let src_level = self.rng.gen_range(1..=2);
                let s = self.seed(&sub.module, src_level);
                let q = quotient(&tm, sub.inclusion.matrix());
                let level = self.nodes[t].level;
                let p = Self::maps_payload(&q.module, &[sub.inclusion.matrix()]);
                self.push(NodeKind::CokernelOfInjection, level, vec![s, t], p)
            }
            4 => {
                let s = self.node(depth - 1);
                let sm = self.module_of(s);
                let v = self.random_element(&sm);
                let gens = Matrix::from_rows(sm.len(), vec![v]);
                let k = submodule(&sm, &gens);
                let q = quotient(&sm, &gens);
                let t = self.seed(&q.module, 1);
                let p = Self::maps_payload(&k.module, &[q.projection.matrix()]);
                self.push(NodeKind::KernelOfSurjection, 2, vec![s, t], p)
            }
            _ => self.omega(),
        }
    }

    fn extension(&mut self, depth: usize) -> usize {
        let a = self.node(depth - 1);
        let b = self.node(depth - 1);
        let (x, y) = (self.module_of(a), self.module_of(b));
        let level = self.nodes[a].level.max(self.nodes[b].level);
        let nonsplit = x.len() == 1
            && y.len() == 1
            && self.n % (x.orders()[0] * y.orders()[0]) == 0
            && self.rng.gen_bool(0.5);
        let (m, incl, proj) = if nonsplit {
            let (p, q) = (x.orders()[0], y.orders()[0]);
            (
                Module::new(vec![p * q]),
                Matrix::from_rows(1, vec![vec![q]]),
                Matrix::from_rows(1, vec![vec![1]]),
            )
        } else {
            let (k, l) = (x.len(), y.len());
            let mut incl = Matrix::zeros(k, k + l);
            let mut proj = Matrix::zeros(k + l, l);
            for i in 0..k {
                incl[(i, i)] = 1;
            }
            for j in 0..l {
                proj[(k + j, j)] = 1;
            }
            (x.direct_sum(&y), incl, proj)
        };
        let p = Self::maps_payload(&m, &[&incl, &proj]);
        self.push(NodeKind::Extension, level, vec![a, b], p)
    }

    /// `Z/p_1 <- Z/p_1p_2 <- ... <- Z/d <- Z/d` along a prime chain of `d`.
    fn omega(&mut self) -> usize {
        let big: Vec<Int> = self.divisors.iter().copied().filter(|&d| d > 1).collect();
        let d = *big.choose(&mut self.rng).unwrap();
        let mut chain = Vec::new();
        for (p, e) in factorize(d as u128, u128::MAX).expect("unbounded trial division") {
            chain.extend(std::iter::repeat_n(p as Int, e as usize));
        }
        chain.shuffle(&mut self.rng);
        let mut stages = Vec::new();
        let mut acc = 1;
        for &p in &chain {
            acc *= p;
            stages.push(vec![acc]);
        }
        stages.push(vec![d]);
        let mut kids = vec![self.seed(&Module::new(vec![chain[0]]), 1)];
        for &p in &chain[1..] {
            kids.push(self.seed(&Module::new(vec![p]), 1));
        }
        kids.push(self.seed(&Module::zero(), 1));
        let transitions = vec![vec![vec![1]]; stages.len() - 1];
        let p = Payload {
            module: vec![d],
            maps: vec![],
            tower: Some(TowerPayload { stages, transitions }),
        };
        self.push(NodeKind::OmegaIteratedExtension, 1, kids, p)
    }
}

/// A valid certificate with payloads over `Z/n`, of depth at most
/// `max_depth`.
pub fn random_certificate(seed: u64, n: Int, max_depth: usize) -> Certificate {
    assert!(n >= 2, "random certificates live over Z/n with n >= 2");
    let divisors = (1..=n).filter(|d| n % d == 0).collect();
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        n,
        divisors,
        nodes: Vec::new(),
    };
    let root = g.node(max_depth);
    Certificate {
        modulus: n,
        root,
        nodes: g.nodes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// A claimed level the rules do not support.
    LevelEdit,
    /// A payload that no longer realizes its rule.
    PayloadEdit,
}

fn nth_or_none<T: Clone>(rng: &mut ChaCha8Rng, xs: &[T]) -> Option<T> {
    xs.choose(rng).cloned()
}

/// A corrupted copy of a valid certificate, or `None` when the certificate
/// offers no place for the requested corruption.
pub fn mutate(c: &Certificate, kind: Mutation, seed: u64) -> Option<Certificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = c.post_order().ok()?;
    let claims = |c: &Certificate, v: usize| -> Vec<u8> { c.nodes[v].children.iter().map(|&k| c.nodes[k].level).collect() };
    let mut out = c.clone();
    match kind {
        Mutation::LevelEdit => {
            // (node, new level)
            let mut cands = Vec::new();
            for &v in &order {
                let node = &c.nodes[v];
                if node.level == 2 && rule_level(&node.kind, &claims(c, v)) != Ok(1) {
                    cands.push((v, 1u8));
                }
                if node.level == 1 {
                    let breaks_parent = order.iter().any(|&p| {
                        let parent = &c.nodes[p];
                        parent.children.contains(&v) && {
                            let raised: Vec<u8> = parent
                                .children
                                .iter()
                                .map(|&k| if k == v { 2 } else { c.nodes[k].level })
                                .collect();
                            rule_level(&parent.kind, &raised).map_or(true, |l| l > parent.level)
                        }
                    });
                    if breaks_parent {
                        cands.push((v, 2));
                    }
                }
            }
            let (v, l) = nth_or_none(&mut rng, &cands)?;
            out.nodes[v].level = l;
        }
        Mutation::PayloadEdit => {
            let prime = if c.modulus == 0 {
                2
            } else {
                factorize(c.modulus as u128, u128::MAX).expect("unbounded")[0].0 as Int
            };
            let mut cands = Vec::new();
            for &v in &order {
                let node = &c.nodes[v];
                let Some(p) = node.payload.as_ref() else { continue };
                if !matches!(node.kind, NodeKind::Seed { .. } | NodeKind::DirectSummand) {
                    cands.push((v, 0usize));
                }
                let m = Module::new(p.module.clone());
                let kid = |i: usize| {
                    c.nodes[node.children[i]].payload.as_ref().map(|q| Module::new(q.module.clone()))
                };
                // zeroing a map is detectable when the map must be injective
                // on a nonzero source or surjective onto a nonzero target
                let zeroable = match node.kind {
                    NodeKind::Extension => kid(0).is_some_and(|x| !x.is_zero()),
                    NodeKind::CokernelOfInjection => kid(0).is_some_and(|x| !x.is_zero()),
                    NodeKind::KernelOfSurjection => kid(1).is_some_and(|x| !x.is_zero()),
                    NodeKind::DirectSummand => !m.is_zero(),
                    _ => false,
                };
                if zeroable {
                    cands.push((v, 1));
                }
            }
            let (v, how) = nth_or_none(&mut rng, &cands)?;
            let p = out.nodes[v].payload.as_mut().expect("candidate has a payload");
            if how == 0 {
                match p.module.iter().position(|&d| d != 0) {
                    Some(i) => p.module[i] *= prime,
                    None => p.module.push(prime),
                }
            } else {
                for x in p.maps[0].iter_mut().flatten() {
                    *x = 0;
                }
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::super::{instantiate_and_check, verify_certificate};
    use super::*;

    #[test]
    fn random_certificates_are_valid() {
        for seed in 0..60 {
            let n = [4, 6, 8, 12, 18, 36][seed as usize % 6];
            let c = random_certificate(seed, n, 4);
            verify_certificate(&c).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            instantiate_and_check(&c).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{}", c.to_json()));
        }
    }

    #[test]
    fn mutations_are_rejected() {
        for seed in 0..60 {
            let c = random_certificate(seed, 12, 3);
            if let Some(bad) = mutate(&c, Mutation::LevelEdit, seed) {
                assert_eq!(verify_certificate(&bad).unwrap_err().kind(), "LevelViolation");
            }
            if let Some(bad) = mutate(&c, Mutation::PayloadEdit, seed) {
                assert_eq!(instantiate_and_check(&bad).unwrap_err().kind(), "PayloadMismatch", "seed {seed}");
            }
        }
    }
}
