//! Certificates produced from concrete modules.

use super::{Certificate, Node, NodeKind, ObtainError, Payload, SeedClass, TowerPayload};
use crate::abelian::quotient;
use crate::completion::{
    annihilated, delta_truncated, is_weakly_cotorsion_fg, multiple, quotient_tower, sufficient_depth,
    MultSubsetSeq, DEFAULT_DEPTH,
};
use crate::ring::coprime_part;
use crate::scalar::factorize;
use crate::{Int, Matrix, ModMap, Module};

fn seed(tag: SeedClass, m: &Module) -> Node {
    Node {
        kind: NodeKind::Seed { tag },
        level: 1,
        children: vec![],
        payload: Some(Payload::module(m)),
    }
}

fn with_maps(kind: NodeKind, level: u8, children: Vec<usize>, m: &Module, maps: &[&Matrix]) -> Node {
    Node {
        kind,
        level,
        children,
        payload: Some(Payload {
            module: m.orders().to_vec(),
            maps: maps.iter().map(|f| f.to_rows()).collect(),
            tower: None,
        }),
    }
}

/// `C` as an extension of `Delta(C)` by the cokernel of
/// `Hom(S^-1R/R, C) -> Hom(S^-1R, C)`, with `Delta(C)` an iterated
/// extension of `R/t_nR`-modules along its quotient tower.
pub fn decompose_weakly_cotorsion(c: &Module, m: Int) -> Result<Certificate, ObtainError> {
    if !is_weakly_cotorsion_fg(c, m) {
        return Err(ObtainError::NotWeaklyCotorsion {
            module: c.invariant_factors(),
            m,
        });
    }
    let single = |node| Certificate {
        modulus: 0,
        root: 0,
        nodes: vec![node],
    };
    if m.abs() == 1 {
        return Ok(single(seed(SeedClass::LocalizedRingModule, c)));
    }
    let s = MultSubsetSeq::over_integers(&[m])?;
    let depth = DEFAULT_DEPTH.max(sufficient_depth(c, &s));
    let n0 = delta_truncated(c, &s, depth)?.lambda_stable_at;
    let t = s.t(n0, c.exponent())?;
    let delta = quotient(c, multiple(c, t).inclusion.matrix());
    if delta.module.is_zero() {
        return Ok(single(seed(SeedClass::LocalizedRingModule, c)));
    }
    let local = annihilated(c, coprime_part(c.exponent(), m));
    let tower = quotient_tower(c, &s, n0 + 2)?;

    let mut nodes = vec![
        seed(SeedClass::QuotientRingModule { s: m }, &Module::zero()),
        seed(SeedClass::LocalizedRingModule, &local.module),
        with_maps(
            NodeKind::CokernelOfInjection,
            1,
            vec![0, 1],
            &local.module,
            &[&Matrix::zeros(0, local.module.len())],
        ),
    ];
    let mut kids = vec![nodes.len()];
    nodes.push(seed(SeedClass::QuotientRingModule { s: s.t(1, 0)? }, tower.stage(1)));
    for (i, f) in tower.maps().iter().enumerate() {
        kids.push(nodes.len());
        nodes.push(seed(SeedClass::QuotientRingModule { s: s.t(i + 2, 0)? }, &f.kernel().module));
    }
    let summary = tower.summary();
    nodes.push(Node {
        kind: NodeKind::OmegaIteratedExtension,
        level: 1,
        children: kids,
        payload: Some(Payload {
            module: delta.module.orders().to_vec(),
            maps: vec![],
            tower: Some(TowerPayload {
                stages: tower.stages().iter().map(|q| q.orders().to_vec()).collect(),
                transitions: summary.transitions,
            }),
        }),
    });
    let omega = nodes.len() - 1;
    nodes.push(with_maps(
        NodeKind::Extension,
        1,
        vec![2, omega],
        c,
        &[local.inclusion.matrix(), delta.projection.matrix()],
    ));
    Ok(Certificate {
        modulus: 0,
        root: nodes.len() - 1,
        nodes,
    })
}

/// An injective hull of `a` over `Z/n`: each `Z/d` goes into the sum of
/// `Z/p^k`, `p^k || n`, over the primes `p | d`.
pub fn injective_hull(a: &Module, n: Int) -> Result<(Module, ModMap), ObtainError> {
    let not_over = || ObtainError::NotOverRing {
        module: a.orders().to_vec(),
        modulus: n,
    };
    if n < 2 || !crate::Ring::ZMod(n).admits(a) {
        return Err(not_over());
    }
    let primes = factorize(n as u128, u128::MAX).expect("unbounded trial division");
    let mut orders = Vec::new();
    let mut entries = Vec::new();
    for (i, &d) in a.orders().iter().enumerate() {
        for &(p, k) in &primes {
            let p = p as Int;
            let mut v = 0;
            let mut r = d;
            while r % p == 0 {
                r /= p;
                v += 1;
            }
            if v > 0 {
                entries.push((i, orders.len(), p.pow(k - v)));
                orders.push(p.pow(k));
            }
        }
    }
    let mut mat = Matrix::zeros(a.len(), orders.len());
    for (i, j, x) in entries {
        mat[(i, j)] = x;
    }
    let b = Module::new(orders);
    let f = ModMap::new(a.clone(), b.clone(), mat).expect("hull embedding is well defined");
    Ok((b, f))
}

/// `A` as the kernel of `B -> B/A` for an injective hull `B` over `Z/n`.
pub fn embed_two_obtainable(a: &Module, n: Int) -> Result<Certificate, ObtainError> {
    let (b, f) = injective_hull(a, n)?;
    let q = quotient(&b, f.matrix());
    let label = |l: &str| SeedClass::Custom { label: l.into() };
    let nodes = vec![
        seed(label("injective"), &b),
        seed(label("injective quotient"), &q.module),
        with_maps(NodeKind::KernelOfSurjection, 2, vec![0, 1], a, &[q.projection.matrix()]),
    ];
    Ok(Certificate {
        modulus: n,
        root: 2,
        nodes,
    })
}
