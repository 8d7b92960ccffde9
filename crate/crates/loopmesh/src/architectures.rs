//! Ordered loss diagrams for the dual-loop and chain-loop architectures:
//! mesh gates interleaved with single-mode attenuators in chronological
//! order, plus structural audits of the attenuator counts.

use std::fmt::Write as _;

use crate::mesh::{ArchKind, MeshDecomposition, PlacedGate};
use crate::{Error, Result};

/// Per-architecture component transmissions. The dual-loop outer delay is a
/// power law in N: η_o = outer_base^N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArchitectureConfig {
    Spatial {
        eta_gate: f64,
    },
    DualLoop {
        eta_gate: f64,
        eta_switch: f64,
        eta_inner: f64,
        outer_base: f64,
    },
    ChainLoop {
        eta_gate: f64,
        eta_inner: f64,
    },
}

fn check_transmission(name: &'static str, value: f64) -> Result<()> {
    if !(value > 0.0 && value <= 1.0) {
        return Err(Error::InvalidTransmission { name, value });
    }
    Ok(())
}

impl ArchitectureConfig {
    pub fn spatial(eta_gate: f64) -> Result<Self> {
        check_transmission("eta_gate", eta_gate)?;
        Ok(Self::Spatial { eta_gate })
    }

    pub fn dual_loop(eta_gate: f64, eta_switch: f64, eta_inner: f64, outer_base: f64) -> Result<Self> {
        check_transmission("eta_gate", eta_gate)?;
        check_transmission("eta_switch", eta_switch)?;
        check_transmission("eta_inner", eta_inner)?;
        check_transmission("outer_base", outer_base)?;
        Ok(Self::DualLoop {
            eta_gate,
            eta_switch,
            eta_inner,
            outer_base,
        })
    }

    pub fn chain_loop(eta_gate: f64, eta_inner: f64) -> Result<Self> {
        check_transmission("eta_gate", eta_gate)?;
        check_transmission("eta_inner", eta_inner)?;
        Ok(Self::ChainLoop { eta_gate, eta_inner })
    }

    pub fn kind(&self) -> ArchKind {
        match self {
            Self::Spatial { .. } => ArchKind::Spatial,
            Self::DualLoop { .. } => ArchKind::DualLoop,
            Self::ChainLoop { .. } => ArchKind::ChainLoop,
        }
    }

    pub fn eta_gate(&self) -> f64 {
        match *self {
            Self::Spatial { eta_gate }
            | Self::DualLoop { eta_gate, .. }
            | Self::ChainLoop { eta_gate, .. } => eta_gate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AttenuatorKind {
    Gate,
    Switch,
    Inner,
    Outer,
    ExtraGate,
}

impl AttenuatorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttenuatorKind::Gate => "gate",
            AttenuatorKind::Switch => "switch",
            AttenuatorKind::Inner => "inner",
            AttenuatorKind::Outer => "outer",
            AttenuatorKind::ExtraGate => "extra_gate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagramElement {
    Gate(PlacedGate),
    Attenuator {
        mode: usize,
        factor: f64,
        kind: AttenuatorKind,
    },
}

/// Chronologically ordered gates and single-mode attenuators for one
/// architecture instance.
#[derive(Debug, Clone, PartialEq)]
pub struct LossDiagram {
    n: usize,
    kind: ArchKind,
    elements: Vec<DiagramElement>,
}

impl LossDiagram {
    /// Assemble a diagram from explicit elements, e.g. for hand-built loss
    /// placements in tests or tooling.
    pub fn from_elements(n: usize, kind: ArchKind, elements: Vec<DiagramElement>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension { min: 2, got: n });
        }
        for el in &elements {
            match el {
                DiagramElement::Gate(g) => {
                    if g.pair < 1 || g.pair + 1 > n {
                        return Err(Error::InvalidArgument(format!(
                            "gate pair {} out of range for n = {n}",
                            g.pair
                        )));
                    }
                }
                DiagramElement::Attenuator { mode, factor, .. } => {
                    if *mode < 1 || *mode > n {
                        return Err(Error::InvalidArgument(format!(
                            "attenuator mode {mode} out of range for n = {n}"
                        )));
                    }
                    if !(*factor > 0.0 && *factor <= 1.0) {
                        return Err(Error::InvalidTransmission {
                            name: "factor",
                            value: *factor,
                        });
                    }
                }
            }
        }
        Ok(Self { n, kind, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ArchKind {
        self.kind
    }

    pub fn elements(&self) -> &[DiagramElement] {
        &self.elements
    }

    /// One element per line: index, type, mode(s), factor, kind.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (idx, el) in self.elements.iter().enumerate() {
            match el {
                DiagramElement::Gate(g) => {
                    writeln!(
                        out,
                        "{idx}\tgate\tmodes {},{}\tlayer {} pair {}{}",
                        g.pair,
                        g.pair + 1,
                        g.layer,
                        g.pair,
                        if g.is_padding { " (padding)" } else { "" }
                    )
                    .unwrap();
                }
                DiagramElement::Attenuator { mode, factor, kind } => {
                    writeln!(out, "{idx}\tattenuator\tmode {mode}\t{factor}\t{}", kind.as_str())
                        .unwrap();
                }
            }
        }
        out
    }
}

/// Build the loss diagram for one architecture on top of a padded mesh.
///
/// Per layer the chain-loop block is: push-in gate loss and inner-loop loss
/// on mode 1, then each gate followed by gate losses on both its modes and an
/// inner-loop loss on the wire to the next gate, then inner-loop and push-out
/// gate losses on mode N. The dual-loop adds switch losses on every mode at
/// the start and end, and a switch/outer/switch sandwich on every mode at
/// each layer boundary.
pub fn build_diagram(mesh: &MeshDecomposition, config: &ArchitectureConfig) -> Result<LossDiagram> {
    let n = mesh.n();
    if n < 2 {
        return Err(Error::InvalidDimension { min: 2, got: n });
    }
    let (eta_gate, eta_switch, eta_inner, eta_outer) = match *config {
        ArchitectureConfig::Spatial { .. } => return Err(Error::UnsupportedDiagram),
        ArchitectureConfig::ChainLoop { eta_gate, eta_inner } => (eta_gate, 0.0, eta_inner, 0.0),
        ArchitectureConfig::DualLoop {
            eta_gate,
            eta_switch,
            eta_inner,
            outer_base,
        } => (eta_gate, eta_switch, eta_inner, outer_base.powi(n as i32)),
    };
    let dual = matches!(config, ArchitectureConfig::DualLoop { .. });

    let mut elements = Vec::new();
    let att = |mode: usize, factor: f64, kind: AttenuatorKind| DiagramElement::Attenuator {
        mode,
        factor,
        kind,
    };

    if dual {
        for mode in 1..=n {
            elements.push(att(mode, eta_switch, AttenuatorKind::Switch));
        }
    }
    for layer in 1..=n - 1 {
        if dual && layer > 1 {
            // layer boundary: out through a switch, around the outer loop,
            // back in through a switch
            for mode in 1..=n {
                elements.push(att(mode, eta_switch, AttenuatorKind::Switch));
                elements.push(att(mode, eta_outer, AttenuatorKind::Outer));
                elements.push(att(mode, eta_switch, AttenuatorKind::Switch));
            }
        }
        elements.push(att(1, eta_gate, AttenuatorKind::ExtraGate));
        elements.push(att(1, eta_inner, AttenuatorKind::Inner));
        for pair in 1..=n - 1 {
            elements.push(DiagramElement::Gate(*mesh.gate(layer, pair)));
            elements.push(att(pair, eta_gate, AttenuatorKind::Gate));
            elements.push(att(pair + 1, eta_gate, AttenuatorKind::Gate));
            if pair < n - 1 {
                elements.push(att(pair + 1, eta_inner, AttenuatorKind::Inner));
            }
        }
        elements.push(att(n, eta_inner, AttenuatorKind::Inner));
        elements.push(att(n, eta_gate, AttenuatorKind::ExtraGate));
    }
    if dual {
        for mode in 1..=n {
            elements.push(att(mode, eta_switch, AttenuatorKind::Switch));
        }
    }

    Ok(LossDiagram {
        n,
        kind: config.kind(),
        elements,
    })
}

/// Product of all attenuator factors touching each mode line.
pub fn mode_line_transmissions(diagram: &LossDiagram) -> Vec<f64> {
    let mut products = vec![1.0; diagram.n];
    for el in &diagram.elements {
        if let DiagramElement::Attenuator { mode, factor, .. } = el {
            products[mode - 1] *= factor;
        }
    }
    products
}

/// Element tallies of a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AuditCounts {
    pub gates: usize,
    pub gate: usize,
    pub extra_gate: usize,
    pub inner: usize,
    pub switch: usize,
    pub outer: usize,
}

pub fn audit_counts(diagram: &LossDiagram) -> AuditCounts {
    let mut counts = AuditCounts::default();
    for el in &diagram.elements {
        match el {
            DiagramElement::Gate(_) => counts.gates += 1,
            DiagramElement::Attenuator { kind, .. } => match kind {
                AttenuatorKind::Gate => counts.gate += 1,
                AttenuatorKind::Switch => counts.switch += 1,
                AttenuatorKind::Inner => counts.inner += 1,
                AttenuatorKind::Outer => counts.outer += 1,
                AttenuatorKind::ExtraGate => counts.extra_gate += 1,
            },
        }
    }
    counts
}
