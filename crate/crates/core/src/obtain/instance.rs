//! Concrete checks of certificate payloads.

use serde::Serialize;

use super::{Certificate, NodeKind, ObtainError, Payload};
use crate::completion::{tower_lim, Tower};
use crate::{Int, Matrix, ModMap, Module};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    /// No node carries a payload, so only the tree was checked.
    pub structural_only: bool,
    pub nodes_checked: usize,
    pub joints: Vec<String>,
}

fn mismatch(node: usize, joint: impl Into<String>) -> ObtainError {
    ObtainError::PayloadMismatch {
        node,
        joint: joint.into(),
    }
}

fn payload(c: &Certificate, v: usize) -> Result<&Payload, ObtainError> {
    c.nodes[v].payload.as_ref().ok_or_else(|| mismatch(v, "missing payload"))
}

fn module(c: &Certificate, v: usize) -> Result<Module, ObtainError> {
    Ok(Module::new(payload(c, v)?.module.clone()))
}

fn map(v: usize, src: &Module, tgt: &Module, rows: &[Vec<Int>], what: &str) -> Result<ModMap, ObtainError> {
    if rows.len() != src.len() || rows.iter().any(|r| r.len() != tgt.len()) {
        return Err(mismatch(v, format!("{what} has the wrong shape")));
    }
    ModMap::new(src.clone(), tgt.clone(), Matrix::from_rows(tgt.len(), rows.to_vec()))
        .map_err(|e| mismatch(v, format!("{what} is not well defined: {e}")))
}

fn maps(v: usize, p: &Payload, k: usize) -> Result<&[Vec<Vec<Int>>], ObtainError> {
    if p.maps.len() != k {
        return Err(mismatch(v, format!("expected {k} maps, found {}", p.maps.len())));
    }
    Ok(&p.maps)
}

fn iso(v: usize, a: &Module, b: &Module, joint: &str) -> Result<(), ObtainError> {
    if a.is_isomorphic(b) {
        Ok(())
    } else {
        Err(mismatch(
            v,
            format!("{joint}: {:?} is not {:?}", a.invariant_factors(), b.invariant_factors()),
        ))
    }
}

fn require(v: usize, ok: bool, joint: &str) -> Result<(), ObtainError> {
    if ok {
        Ok(())
    } else {
        Err(mismatch(v, joint))
    }
}

fn check_node(c: &Certificate, v: usize) -> Result<String, ObtainError> {
    let node = &c.nodes[v];
    let p = payload(c, v)?;
    let m = module(c, v)?;
    if !c.ring().admits(&m) {
        return Err(mismatch(v, format!("{:?} is not a module over {}", m.orders(), c.ring())));
    }
    let kids = node
        .children
        .iter()
        .map(|&k| module(c, k))
        .collect::<Result<Vec<_>, _>>()?;
    let joint = match node.kind {
        NodeKind::Seed { .. } => "seed payload".to_string(),
        NodeKind::DirectSummand => {
            let ms = maps(v, p, 2)?;
            let incl = map(v, &m, &kids[0], &ms[0], "inclusion")?;
            let proj = map(v, &kids[0], &m, &ms[1], "projection")?;
            let round = incl.then(&proj).expect("composable");
            require(v, round == ModMap::identity(&m), "projection after inclusion is the identity")?;
            "split summand".into()
        }
        NodeKind::Extension => {
            let ms = maps(v, p, 2)?;
            let incl = map(v, &kids[0], &m, &ms[0], "inclusion")?;
            let proj = map(v, &m, &kids[1], &ms[1], "projection")?;
            require(v, incl.is_injective(), "inclusion is injective")?;
            require(v, proj.is_surjective(), "projection is surjective")?;
            require(v, incl.then(&proj).expect("composable").is_zero(), "composite is zero")?;
            let ker = proj.kernel();
            let img = incl.image();
            require(
                v,
                crate::abelian::same_submodule(&m, ker.inclusion.matrix(), img.inclusion.matrix()),
                "image of the inclusion is the kernel of the projection",
            )?;
            "short exact".into()
        }
        NodeKind::CokernelOfInjection => {
            let ms = maps(v, p, 1)?;
            let f = map(v, &kids[0], &kids[1], &ms[0], "map")?;
            require(v, f.is_injective(), "map is injective")?;
            iso(v, &m, &f.cokernel().module, "cokernel")?;
            "cokernel of an injection".into()
        }
        NodeKind::KernelOfSurjection => {
            let ms = maps(v, p, 1)?;
            let f = map(v, &kids[0], &kids[1], &ms[0], "map")?;
            require(v, f.is_surjective(), "map is surjective")?;
            iso(v, &m, &f.kernel().module, "kernel")?;
            "kernel of a surjection".into()
        }
        NodeKind::FiniteProduct => {
            let prod = kids.iter().fold(Module::zero(), |acc, k| acc.direct_sum(k));
            iso(v, &m, &prod, "product")?;
            "finite product".into()
        }
        NodeKind::OmegaIteratedExtension => {
            let tp = p.tower.as_ref().ok_or_else(|| mismatch(v, "missing tower"))?;
            let stages: Vec<Module> = tp.stages.iter().map(|o| Module::new(o.clone())).collect();
            if stages.is_empty() || tp.transitions.len() + 1 != stages.len() {
                return Err(mismatch(v, "tower has the wrong number of transitions"));
            }
            if stages.len() != kids.len() {
                return Err(mismatch(v, "one child per tower stage is needed"));
            }
            let fs = tp
                .transitions
                .iter()
                .enumerate()
                .map(|(i, rows)| map(v, &stages[i + 1], &stages[i], rows, &format!("transition {}", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            for (i, f) in fs.iter().enumerate() {
                require(v, f.is_surjective(), &format!("transition {} is surjective", i + 1))?;
                iso(v, &kids[i + 1], &f.kernel().module, &format!("kernel of transition {}", i + 1))?;
            }
            iso(v, &kids[0], &stages[0], "first stage")?;
            let (mut stages, mut fs) = (stages, fs);
            let top = stages.last().expect("nonempty").clone();
            for _ in 0..2 {
                stages.push(top.clone());
                fs.push(ModMap::identity(&top));
            }
            let tower = Tower::new(stages, fs).map_err(|e| mismatch(v, e.to_string()))?;
            let (lim, _) = tower_lim(&tower).map_err(|e| mismatch(v, format!("limit: {e}")))?;
            iso(v, &m, &lim, "limit")?;
            "iterated extension".into()
        }
    };
    Ok(format!("node {v} {}: {joint}", node.kind.name()))
}

/// Checks every payload against the rule of its node.
pub fn instantiate_and_check(c: &Certificate) -> Result<InstanceReport, ObtainError> {
    let order = c.post_order()?;
    if !c.has_payloads() {
        return Ok(InstanceReport {
            structural_only: true,
            nodes_checked: 0,
            joints: Vec::new(),
        });
    }
    let joints = order.iter().map(|&v| check_node(c, v)).collect::<Result<Vec<_>, _>>()?;
    Ok(InstanceReport {
        structural_only: false,
        nodes_checked: joints.len(),
        joints,
    })
}
