//! Derivation certificates for right 1- and 2-obtainability, their
//! structural verifier, concrete payload checks, builders and Ext
//! orthogonality spot tests.

mod build;
mod instance;
mod ortho;
mod random;
mod wire;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::completion::CompletionError;
use crate::{Int, Module, Ring};

pub use build::{decompose_weakly_cotorsion, embed_two_obtainable, injective_hull};
pub use instance::{instantiate_and_check, InstanceReport};
pub use ortho::{orthogonality_battery, OrthogonalityReport, OrthogonalityRow};
pub use random::{mutate, random_certificate, Mutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObtainError {
    #[error("level violation at node {node}: {rule}")]
    LevelViolation { node: usize, rule: String },
    #[error("malformed certificate: {0}")]
    MalformedTree(String),
    #[error("payload mismatch at node {node}: {joint}")]
    PayloadMismatch { node: usize, joint: String },
    #[error("module {module:?} is not weakly cotorsion for m = {m}")]
    NotWeaklyCotorsion { module: Vec<Int>, m: Int },
    #[error("precondition failed: Ext^{degree}({test:?}, {seed:?}) = {ext:?}")]
    PreconditionFailed {
        test: Vec<Int>,
        seed: Vec<Int>,
        degree: u8,
        ext: Vec<Int>,
    },
    #[error("{module:?} is not a module over Z/{modulus}")]
    NotOverRing { module: Vec<Int>, modulus: Int },
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error("cannot parse certificate: {0}")]
    Parse(String),
}

impl ObtainError {
    /// Stable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            ObtainError::LevelViolation { .. } => "LevelViolation",
            ObtainError::MalformedTree(_) => "MalformedTree",
            ObtainError::PayloadMismatch { .. } => "PayloadMismatch",
            ObtainError::NotWeaklyCotorsion { .. } => "NotWeaklyCotorsion",
            ObtainError::PreconditionFailed { .. } => "PreconditionFailed",
            ObtainError::NotOverRing { .. } => "NotOverRing",
            ObtainError::Completion(_) => "Completion",
            ObtainError::Parse(_) => "Parse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "class")]
pub enum SeedClass {
    QuotientRingModule {
        #[serde(with = "wire")]
        s: Int,
    },
    LocalizedRingModule,
    AlmostCotorsionQuotient {
        #[serde(with = "wire")]
        s: Int,
    },
    AlmostCotorsionLocalized,
    Custom { label: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NodeKind {
    Seed { tag: SeedClass },
    /// One child; the node is a summand of it.
    DirectSummand,
    /// Children `[sub, quotient]`.
    Extension,
    /// Children `[source, target]` of an injective map.
    CokernelOfInjection,
    FiniteProduct,
    /// Children are `D'_1` and the successive kernels `ker(D'_n -> D'_{n-1})`.
    OmegaIteratedExtension,
    /// Children `[source, target]` of a surjective map.
    KernelOfSurjection,
}

impl NodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            NodeKind::Seed { .. } => "Seed",
            NodeKind::DirectSummand => "DirectSummand",
            NodeKind::Extension => "Extension",
            NodeKind::CokernelOfInjection => "CokernelOfInjection",
            NodeKind::FiniteProduct => "FiniteProduct",
            NodeKind::OmegaIteratedExtension => "OmegaIteratedExtension",
            NodeKind::KernelOfSurjection => "KernelOfSurjection",
        }
    }
}

/// A tower `D_1 <- D_2 <- ... <- D_N` with `transitions[i]: D_{i+2} -> D_{i+1}`,
/// continued by identities past `D_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerPayload {
    #[serde(with = "wire")]
    pub stages: Vec<Vec<Int>>,
    #[serde(with = "wire")]
    pub transitions: Vec<Vec<Vec<Int>>>,
}

/// A concrete module, as cyclic orders, and the maps realizing the rule.
///
/// `maps` holds `[inclusion, projection]` for `DirectSummand` and
/// `Extension`, and the single map for `CokernelOfInjection` and
/// `KernelOfSurjection`. Matrices act on row vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    #[serde(with = "wire")]
    pub module: Vec<Int>,
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "wire")]
    pub maps: Vec<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerPayload>,
}

impl Payload {
    pub fn module(module: &Module) -> Self {
        Payload {
            module: module.orders().to_vec(),
            maps: Vec::new(),
            tower: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    #[serde(flatten)]
    pub kind: NodeKind,
    pub level: u8,
    #[serde(default)]
    pub children: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Payload>,
}

/// A derivation tree over `Z` (`modulus = 0`) or `Z/N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(default, with = "wire")]
    pub modulus: Int,
    pub root: usize,
    pub nodes: Vec<Node>,
}

impl Certificate {
    pub fn parse(text: &str) -> Result<Self, ObtainError> {
        serde_json::from_str(text).map_err(|e| ObtainError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn ring(&self) -> Ring {
        if self.modulus == 0 {
            Ring::Integers
        } else {
            Ring::ZMod(self.modulus)
        }
    }

    pub fn has_payloads(&self) -> bool {
        self.nodes.iter().any(|n| n.payload.is_some())
    }

    /// Nodes in post-order from the root, after checking indices, arities
    /// and acyclicity.
    pub fn post_order(&self) -> Result<Vec<usize>, ObtainError> {
        let n = self.nodes.len();
        if self.root >= n {
            return Err(ObtainError::MalformedTree(format!("root {} out of range", self.root)));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if !(1..=2).contains(&node.level) {
                return Err(ObtainError::MalformedTree(format!("node {i} claims level {}", node.level)));
            }
            let k = node.children.len();
            let ok = match node.kind {
                NodeKind::Seed { .. } => k == 0,
                NodeKind::DirectSummand => k == 1,
                NodeKind::Extension | NodeKind::CokernelOfInjection | NodeKind::KernelOfSurjection => k == 2,
                NodeKind::FiniteProduct | NodeKind::OmegaIteratedExtension => k >= 1,
            };
            if !ok {
                return Err(ObtainError::MalformedTree(format!(
                    "node {i} ({}) has {k} children",
                    node.kind.name()
                )));
            }
            if let Some(&c) = node.children.iter().find(|&&c| c >= n) {
                return Err(ObtainError::MalformedTree(format!("node {i} refers to missing node {c}")));
            }
        }
        // 0 unvisited, 1 on the stack, 2 done
        let mut state = vec![0u8; n];
        let mut order = Vec::new();
        let mut stack = vec![(self.root, 0usize)];
        state[self.root] = 1;
        while let Some((v, i)) = stack.pop() {
            if let Some(&c) = self.nodes[v].children.get(i) {
                stack.push((v, i + 1));
                match state[c] {
                    0 => {
                        state[c] = 1;
                        stack.push((c, 0));
                    }
                    1 => return Err(ObtainError::MalformedTree(format!("cycle through node {c}"))),
                    _ => {}
                }
            } else {
                state[v] = 2;
                order.push(v);
            }
        }
        Ok(order)
    }
}

/// The least level the rules give a node whose children have the levels
/// `kids`, or the name of the rule that does not apply.
fn rule_level(kind: &NodeKind, kids: &[u8]) -> Result<u8, &'static str> {
    let max = kids.iter().copied().max().unwrap_or(1);
    match kind {
        NodeKind::Seed { .. } => Ok(1),
        NodeKind::DirectSummand
        | NodeKind::Extension
        | NodeKind::FiniteProduct
        | NodeKind::OmegaIteratedExtension => Ok(max),
        // closure at level n, or a 2-obtainable source into a 1-obtainable target
        NodeKind::CokernelOfInjection => Ok(kids[1]),
        NodeKind::KernelOfSurjection if kids[1] == 1 => Ok(2),
        NodeKind::KernelOfSurjection => Err("a kernel of a surjection needs a 1-obtainable target"),
    }
}

/// Checks every claimed level against the rules applied to the children's
/// claims, and returns the least level the rules give the root.
pub fn verify_certificate(c: &Certificate) -> Result<u8, ObtainError> {
    let order = c.post_order()?;
    let mut least = vec![0u8; c.nodes.len()];
    for &v in &order {
        let node = &c.nodes[v];
        let claims: Vec<u8> = node.children.iter().map(|&k| c.nodes[k].level).collect();
        match rule_level(&node.kind, &claims) {
            Ok(l) if l <= node.level => {}
            Ok(l) => {
                return Err(ObtainError::LevelViolation {
                    node: v,
                    rule: format!(
                        "{} over children at levels {claims:?} is only {l}-obtainable, claimed {}",
                        node.kind.name(),
                        node.level
                    ),
                })
            }
            Err(rule) => {
                return Err(ObtainError::LevelViolation {
                    node: v,
                    rule: rule.into(),
                })
            }
        }
        let kids: Vec<u8> = node.children.iter().map(|&k| least[k]).collect();
        least[v] = rule_level(&node.kind, &kids).expect("least levels never exceed claims");
    }
    Ok(least[c.root])
}

/// Replaces the subtree at `node` by a seed with the same payload.
pub fn collapse_to_seed(c: &Certificate, node: usize) -> Certificate {
    let mut out = c.clone();
    let n = &mut out.nodes[node];
    n.kind = NodeKind::Seed {
        tag: SeedClass::Custom { label: "collapsed".into() },
    };
    n.children.clear();
    n.level = 1;
    if let Some(p) = n.payload.as_mut() {
        p.maps.clear();
        p.tower = None;
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn seed(level: u8) -> Node {
        Node {
            kind: NodeKind::Seed {
                tag: SeedClass::Custom { label: "e".into() },
            },
            level,
            children: vec![],
            payload: None,
        }
    }

    pub(crate) fn op(kind: NodeKind, level: u8, children: Vec<usize>) -> Node {
        Node {
            kind,
            level,
            children,
            payload: None,
        }
    }

    fn cert(root: usize, nodes: Vec<Node>) -> Certificate {
        Certificate {
            modulus: 0,
            root,
            nodes,
        }
    }

    #[test]
    fn seed_is_level_one() {
        assert_eq!(verify_certificate(&cert(0, vec![seed(1)])), Ok(1));
    }

    #[test]
    fn kernel_of_surjection_is_level_two() {
        let c = cert(2, vec![seed(1), seed(1), op(NodeKind::KernelOfSurjection, 2, vec![0, 1])]);
        assert_eq!(verify_certificate(&c), Ok(2));
        let c = cert(2, vec![seed(1), seed(1), op(NodeKind::KernelOfSurjection, 1, vec![0, 1])]);
        assert!(matches!(verify_certificate(&c), Err(ObtainError::LevelViolation { node: 2, .. })));
    }

    #[test]
    fn cokernel_needs_level_one_target() {
        let c = cert(2, vec![seed(2), seed(2), op(NodeKind::CokernelOfInjection, 1, vec![0, 1])]);
        assert!(matches!(verify_certificate(&c), Err(ObtainError::LevelViolation { node: 2, .. })));
        let c = cert(2, vec![seed(2), seed(1), op(NodeKind::CokernelOfInjection, 1, vec![0, 1])]);
        assert_eq!(verify_certificate(&c), Ok(1));
    }

    #[test]
    fn rule_four_lowers_the_level() {
        // coker(ker(B -> B/A) -> C) with C a seed
        let c = cert(
            4,
            vec![
                seed(1),
                seed(1),
                op(NodeKind::KernelOfSurjection, 2, vec![0, 1]),
                seed(1),
                op(NodeKind::CokernelOfInjection, 1, vec![2, 3]),
            ],
        );
        assert_eq!(verify_certificate(&c), Ok(1));
    }

    #[test]
    fn malformed_trees() {
        let c = cert(0, vec![op(NodeKind::Extension, 1, vec![0, 0])]);
        assert!(matches!(verify_certificate(&c), Err(ObtainError::MalformedTree(_))));
        let c = cert(0, vec![op(NodeKind::Extension, 1, vec![1])]);
        assert!(matches!(verify_certificate(&c), Err(ObtainError::MalformedTree(_))));
        let c = cert(3, vec![seed(1)]);
        assert!(matches!(verify_certificate(&c), Err(ObtainError::MalformedTree(_))));
        let c = cert(0, vec![seed(3)]);
        assert!(matches!(verify_certificate(&c), Err(ObtainError::MalformedTree(_))));
    }

    #[test]
    fn shared_children_are_allowed() {
        let c = cert(1, vec![seed(1), op(NodeKind::Extension, 1, vec![0, 0])]);
        assert_eq!(verify_certificate(&c), Ok(1));
    }

    #[test]
    fn json_round_trip() {
        let c = cert(2, vec![seed(1), seed(1), op(NodeKind::KernelOfSurjection, 2, vec![0, 1])]);
        let back = Certificate::parse(&c.to_json()).unwrap();
        assert_eq!(back, c);
        let text = r#"{"root":0,"nodes":[{"kind":"seed","tag":{"class":"localized_ring_module"},"level":1}]}"#;
        assert_eq!(verify_certificate(&Certificate::parse(text).unwrap()), Ok(1));
    }

    #[test]
    fn payloads_round_trip() {
        let c = decompose_weakly_cotorsion(&Module::from_i64(&[12]), 2).unwrap();
        assert_eq!(Certificate::parse(&c.to_json()).unwrap(), c);
        let c = embed_two_obtainable(&Module::from_i64(&[2, 6]), 12).unwrap();
        assert_eq!(Certificate::parse(&c.to_json()).unwrap(), c);
    }
}
