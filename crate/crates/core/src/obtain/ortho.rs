//! Ext orthogonality of certificate roots against test modules.
//!
//! Over `Z/N` every finite module has a 2-periodic free resolution, so
//! `Ext^i` for all `i >= 1` is determined by `Ext^1` and `Ext^2`. Over `Z`
//! only `Ext^1` can be nonzero.

use serde::Serialize;

use super::{instantiate_and_check, verify_certificate, Certificate, NodeKind, ObtainError};
use crate::abelian::{ext1, ext2};
use crate::{Int, Module, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityRow {
    pub test: Vec<Int>,
    pub ext1: Vec<Int>,
    pub ext2: Vec<Int>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub level: u8,
    pub seeds: usize,
    /// The degrees that must vanish at the root: `[1, 2]` for level 1,
    /// `[2]` for level 2.
    pub degrees: Vec<u8>,
    pub rows: Vec<OrthogonalityRow>,
    pub pass: bool,
}

fn exts(ring: &Ring, f: &Module, e: &Module) -> (Vec<Int>, Vec<Int>) {
    let one = ext1(ring, f, e).invariant_factors();
    let two = match ring {
        Ring::Integers => Vec::new(),
        Ring::ZMod(_) => ext2(ring, f, e).invariant_factors(),
    };
    (one, two)
}

/// Checks `Ext^{>=1}(F, E) = 0` for every seed `E`, then the vanishing at
/// the root that the certified level promises.
pub fn orthogonality_battery(c: &Certificate, tests: &[Module]) -> Result<OrthogonalityReport, ObtainError> {
    let level = verify_certificate(c)?;
    let inst = instantiate_and_check(c)?;
    if inst.structural_only {
        return Err(ObtainError::PayloadMismatch {
            node: c.root,
            joint: "missing payload".into(),
        });
    }
    let ring = c.ring();
    let order = c.post_order()?;
    let seeds: Vec<Module> = order
        .iter()
        .filter(|&&v| matches!(c.nodes[v].kind, NodeKind::Seed { .. }))
        .map(|&v| Module::new(c.nodes[v].payload.as_ref().expect("checked").module.clone()))
        .collect();
    let root = Module::new(c.nodes[c.root].payload.as_ref().expect("checked").module.clone());
    let mut rows = Vec::with_capacity(tests.len());
    for f in tests {
        if !ring.admits(f) {
            return Err(ObtainError::NotOverRing {
                module: f.orders().to_vec(),
                modulus: c.modulus,
            });
        }
        for e in &seeds {
            let (one, two) = exts(&ring, f, e);
            for (degree, ext) in [(1u8, one), (2u8, two)] {
                if !ext.is_empty() {
                    return Err(ObtainError::PreconditionFailed {
                        test: f.invariant_factors(),
                        seed: e.invariant_factors(),
                        degree,
                        ext,
                    });
                }
            }
        }
        let (one, two) = exts(&ring, f, &root);
        let pass = two.is_empty() && (level == 2 || one.is_empty());
        rows.push(OrthogonalityRow {
            test: f.invariant_factors(),
            ext1: one,
            ext2: two,
            pass,
        });
    }
    Ok(OrthogonalityReport {
        level,
        seeds: seeds.len(),
        degrees: if level == 1 { vec![1, 2] } else { vec![2] },
        pass: rows.iter().all(|r| r.pass),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{embed_two_obtainable, Node, Payload, SeedClass};
    use super::*;

    fn seed(orders: &[Int]) -> Node {
        Node {
            kind: NodeKind::Seed {
                tag: SeedClass::Custom { label: "e".into() },
            },
            level: 1,
            children: vec![],
            payload: Some(Payload {
                module: orders.to_vec(),
                maps: vec![],
                tower: None,
            }),
        }
    }

    #[test]
    fn z3_seeds_against_z4() {
        let c = Certificate {
            modulus: 12,
            root: 0,
            nodes: vec![seed(&[3, 3])],
        };
        let r = orthogonality_battery(&c, &[Module::from_i64(&[4])]).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn projective_tests_pass_on_extensions() {
        let c = Certificate {
            modulus: 4,
            root: 2,
            nodes: vec![
                seed(&[2]),
                seed(&[2]),
                Node {
                    kind: NodeKind::Extension,
                    level: 1,
                    children: vec![0, 1],
                    payload: Some(Payload {
                        module: vec![4],
                        maps: vec![vec![vec![2]], vec![vec![1]]],
                        tower: None,
                    }),
                },
            ],
        };
        let r = orthogonality_battery(&c, &[Module::from_i64(&[4])]).unwrap();
        assert!(r.pass && r.rows[0].ext1.is_empty());
    }

    #[test]
    fn nonsplit_test_fails_the_precondition() {
        let c = Certificate {
            modulus: 4,
            root: 0,
            nodes: vec![seed(&[2])],
        };
        match orthogonality_battery(&c, &[Module::from_i64(&[2])]) {
            Err(ObtainError::PreconditionFailed { degree, ext, .. }) => {
                assert_eq!((degree, ext), (1, vec![2]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn level_two_roots_only_need_ext2() {
        let c = embed_two_obtainable(&Module::from_i64(&[2]), 4).unwrap();
        let r = orthogonality_battery(&c, &[Module::from_i64(&[4])]).unwrap();
        assert_eq!(r.degrees, vec![2]);
        assert!(r.pass);
    }
}
