//! MZI gate convention, triangular (Reck-style) decomposition of a unitary
//! into a padded rectangular mesh, reconstruction, and emission of the
//! time-ordered control schedule for the loop architectures.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::numerics::ComplexMatrix;
use crate::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// MZI phases: `theta` sets the effective transmission, `phi` is the input
/// phase. Both are canonicalized into [0, 2π) at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateParams {
    theta: f64,
    phi: f64,
}

impl GateParams {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidArgument("gate angles must be finite".into()));
        }
        Ok(Self {
            theta: canonical_angle(theta),
            phi: canonical_angle(phi),
        })
    }

    /// Exact-identity configuration under this convention.
    pub fn bar() -> Self {
        Self { theta: PI, phi: PI }
    }

    /// Full-swap configuration, used for push-in / push-out.
    pub fn cross() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn is_bar(&self) -> bool {
        self.theta == PI && self.phi == PI
    }
}

fn canonical_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TWO_PI);
    if r == TWO_PI {
        0.0
    } else {
        r
    }
}

/// 2x2 unitary of one MZI: M = B·P(θ)·B·P(φ) with B = (1/√2)[[1,i],[i,1]]
/// and P(α) = diag(e^{iα}, 1). The bar configuration (π, π) is returned as
/// the exact identity so padding gates are exact identity factors.
pub fn mzi_matrix(params: &GateParams) -> ComplexMatrix {
    if params.is_bar() {
        return ComplexMatrix::identity(2);
    }
    let et = Complex64::from_polar(1.0, params.theta);
    let ep = Complex64::from_polar(1.0, params.phi);
    let i = Complex64::new(0.0, 1.0);
    let half = Complex64::new(0.5, 0.0);
    let m00 = half * (et - 1.0) * ep;
    let m01 = half * i * (et + 1.0);
    let m10 = half * i * (et + 1.0) * ep;
    let m11 = half * (1.0 - et);
    ComplexMatrix::from_entries(2, 2, vec![m00, m01, m10, m11]).expect("2x2")
}

/// One MZI placed in the padded rectangular mesh. `layer` and `pair` are
/// 1-based; the gate acts on modes `pair` and `pair + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacedGate {
    pub layer: usize,
    pub pair: usize,
    pub params: GateParams,
    pub is_padding: bool,
}

/// Triangular mesh padded to (N−1)² gates, plus the residual output phases.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshDecomposition {
    n: usize,
    gates: Vec<PlacedGate>,
    output_phases: Vec<Complex64>,
}

impl MeshDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[PlacedGate] {
        &self.gates
    }

    pub fn output_phases(&self) -> &[Complex64] {
        &self.output_phases
    }

    /// Gate at (layer, pair), both 1-based. Layers ascending, pair ascending
    /// within a layer, so the index is direct.
    pub fn gate(&self, layer: usize, pair: usize) -> &PlacedGate {
        &self.gates[(layer - 1) * (self.n - 1) + (pair - 1)]
    }
}

/// Decompose a unitary into the canonical padded triangular mesh: layer ℓ
/// carries real gates at pairs 1..N−ℓ and bar-configured padding at pairs
/// N−ℓ+1..N−1. Gate (ℓ, j) nulls the running matrix's element
/// (row N−ℓ+1, column j) by right-multiplication with its inverse; what
/// remains after all layers is the diagonal of output phases.
pub fn decompose_reck(u: &ComplexMatrix) -> Result<MeshDecomposition> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let n = u.rows();
    if n < 2 {
        return Err(Error::InvalidDimension { min: 2, got: n });
    }
    let defect = u.unitarity_defect();
    if !(defect < 1e-10) {
        return Err(Error::NotUnitary { defect });
    }

    let mut w = u.clone();
    let mut gates = Vec::with_capacity((n - 1) * (n - 1));
    for layer in 1..=n - 1 {
        let row = n - layer; // 0-based row index of the element being nulled
        for pair in 1..=n - layer {
            let x = w[(row, pair - 1)];
            let y = w[(row, pair)];
            let params = nulling_params(x, y)?;
            if !params.is_bar() {
                let ginv = mzi_matrix(&params).adjoint();
                w.apply_two_mode_right(&ginv, pair);
            }
            gates.push(PlacedGate {
                layer,
                pair,
                params,
                is_padding: false,
            });
        }
        for pair in n - layer + 1..=n - 1 {
            gates.push(PlacedGate {
                layer,
                pair,
                params: GateParams::bar(),
                is_padding: true,
            });
        }
    }

    let output_phases = (0..n).map(|i| w[(i, i)]).collect();
    Ok(MeshDecomposition {
        n,
        gates,
        output_phases,
    })
}

/// Gate parameters nulling element x in favor of y when the running matrix
/// is right-multiplied by the gate's inverse on this column pair.
fn nulling_params(x: Complex64, y: Complex64) -> Result<GateParams> {
    let ax = x.norm();
    let ay = y.norm();
    if ax == 0.0 && ay == 0.0 {
        return Ok(GateParams::bar());
    }
    if ay == 0.0 {
        // full swap; phi is free and fixed to 0
        return GateParams::new(0.0, 0.0);
    }
    if ax == 0.0 {
        // already null; emit the identity configuration
        return Ok(GateParams::bar());
    }
    let theta = 2.0 * ay.atan2(ax);
    let phi = x.arg() - y.arg() + PI;
    GateParams::new(theta, phi)
}

/// Apply the mesh gates in order (layer ascending, pair ascending within a
/// layer), then the diagonal of output phases.
pub fn reconstruct(mesh: &MeshDecomposition) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(mesh.n);
    for gate in &mesh.gates {
        if gate.params.is_bar() {
            continue; // exact identity factor
        }
        let g = mzi_matrix(&gate.params);
        acc.apply_two_mode_left(&g, gate.pair);
    }
    for (k, phase) in mesh.output_phases.iter().enumerate() {
        for j in 0..mesh.n {
            acc[(k, j)] *= phase;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchKind {
    Spatial,
    DualLoop,
    ChainLoop,
}

impl ArchKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ArchKind::Spatial => "spatial",
            ArchKind::DualLoop => "dual_loop",
            ArchKind::ChainLoop => "chain_loop",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventRole {
    PushIn,
    Interaction,
    PushOut,
    RouteIn,
    RouteOut,
}

impl EventRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventRole::PushIn => "push_in",
            EventRole::Interaction => "interaction",
            EventRole::PushOut => "push_out",
            EventRole::RouteIn => "route_in",
            EventRole::RouteOut => "route_out",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Routing {
    FromInput,
    FromOuter,
    ToOuter,
    ToOutput,
}

impl Routing {
    pub fn as_str(&self) -> &'static str {
        match self {
            Routing::FromInput => "from_input",
            Routing::FromOuter => "from_outer",
            Routing::ToOuter => "to_outer",
            Routing::ToOutput => "to_output",
        }
    }
}

/// One timed control event. MZI events carry gate parameters; switch events
/// carry a routing direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlEvent {
    pub device_id: usize,
    pub time: f64,
    pub role: EventRole,
    pub params: Option<GateParams>,
    pub routing: Option<Routing>,
}

/// Time-ordered control sequence; ties broken by device id.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSchedule {
    events: Vec<ControlEvent>,
}

impl ControlSchedule {
    pub fn events(&self) -> &[ControlEvent] {
        &self.events
    }
}

/// Emit the control schedule for a mesh on the given architecture.
///
/// Chain-loop: device k ∈ 1..N−1 realizes layer k and fires N+1 MZI events at
/// t = (s + k)·τ + (k−1)·d for s = 0..N (s = 0 push-in, s = 1..N−1 the layer's
/// gates, s = N push-out). Dual-loop: MZI device 0 plays the layers back to
/// back at t = ((ℓ−1)(N+1) + s)·τ, switch device 1 routes bins in at each bin
/// arrival, switch device 2 routes them to the outer loop or to the output.
pub fn control_schedule(
    mesh: &MeshDecomposition,
    architecture: ArchKind,
    tau: f64,
    d: f64,
) -> Result<ControlSchedule> {
    if !(tau > 0.0) {
        return Err(Error::InvalidTiming(format!("tau must be positive, got {tau}")));
    }
    if !(d >= 0.0) {
        return Err(Error::InvalidTiming(format!("d must be non-negative, got {d}")));
    }
    let n = mesh.n();
    let mut events = Vec::new();
    match architecture {
        ArchKind::ChainLoop => {
            for device in 1..=n - 1 {
                for s in 0..=n {
                    let time = (s + device) as f64 * tau + (device - 1) as f64 * d;
                    let (role, params) = mzi_event(mesh, device, s, n);
                    events.push(ControlEvent {
                        device_id: device,
                        time,
                        role,
                        params: Some(params),
                        routing: None,
                    });
                }
            }
        }
        ArchKind::DualLoop => {
            for layer in 1..=n - 1 {
                let base = (layer - 1) * (n + 1);
                for s in 0..=n {
                    let time = (base + s) as f64 * tau;
                    let (role, params) = mzi_event(mesh, layer, s, n);
                    events.push(ControlEvent {
                        device_id: 0,
                        time,
                        role,
                        params: Some(params),
                        routing: None,
                    });
                }
                let route_in = if layer == 1 {
                    Routing::FromInput
                } else {
                    Routing::FromOuter
                };
                let route_out = if layer < n - 1 {
                    Routing::ToOuter
                } else {
                    Routing::ToOutput
                };
                for bin in 1..=n {
                    events.push(ControlEvent {
                        device_id: 1,
                        time: (base + bin - 1) as f64 * tau,
                        role: EventRole::RouteIn,
                        params: None,
                        routing: Some(route_in),
                    });
                    events.push(ControlEvent {
                        device_id: 2,
                        time: (base + bin) as f64 * tau,
                        role: EventRole::RouteOut,
                        params: None,
                        routing: Some(route_out),
                    });
                }
            }
        }
        ArchKind::Spatial => {
            return Err(Error::InvalidArgument(
                "spatial encoding has no control schedule".into(),
            ));
        }
    }
    events.sort_by(|a, b| {
        a.time
            .partial_cmp(&b.time)
            .unwrap()
            .then(a.device_id.cmp(&b.device_id))
            .then_with(|| role_rank(a.role).cmp(&role_rank(b.role)))
    });
    Ok(ControlSchedule { events })
}

fn role_rank(role: EventRole) -> u8 {
    match role {
        EventRole::RouteIn => 0,
        EventRole::PushIn => 1,
        EventRole::Interaction => 2,
        EventRole::PushOut => 3,
        EventRole::RouteOut => 4,
    }
}

fn mzi_event(mesh: &MeshDecomposition, layer: usize, s: usize, n: usize) -> (EventRole, GateParams) {
    if s == 0 {
        (EventRole::PushIn, GateParams::cross())
    } else if s == n {
        (EventRole::PushOut, GateParams::cross())
    } else {
        (EventRole::Interaction, mesh.gate(layer, s).params)
    }
}
