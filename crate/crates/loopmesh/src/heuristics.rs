//! Closed-form architecture transmissions, the chain-loop competitiveness
//! threshold, dB/length unit conversions, the physical component catalog and
//! the boson-sampling feasibility advisory.

use std::collections::BTreeMap;

use crate::mesh::ArchKind;
use crate::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0; // m/s

fn check_transmission(name: &'static str, value: f64) -> Result<()> {
    if !(value > 0.0 && value <= 1.0) {
        return Err(Error::InvalidTransmission { name, value });
    }
    Ok(())
}

/// Spatial encoding: η_g^N.
pub fn eta_spatial(eta_g: f64, n: usize) -> Result<f64> {
    check_transmission("eta_g", eta_g)?;
    if n < 1 {
        return Err(Error::InvalidDimension { min: 1, got: n });
    }
    Ok(eta_g.powi(n as i32))
}

/// Dual-loop: (η_g²η_s²η_iη_o)^{N−1}·η_o^{−1} with η_o = outer_base^N.
pub fn eta_dual_loop(eta_g: f64, eta_s: f64, eta_i: f64, outer_base: f64, n: usize) -> Result<f64> {
    check_transmission("eta_g", eta_g)?;
    check_transmission("eta_s", eta_s)?;
    check_transmission("eta_i", eta_i)?;
    check_transmission("outer_base", outer_base)?;
    if n < 2 {
        return Err(Error::InvalidDimension { min: 2, got: n });
    }
    let eta_o = outer_base.powi(n as i32);
    Ok((eta_g * eta_g * eta_s * eta_s * eta_i * eta_o).powi(n as i32 - 1) / eta_o)
}

/// Chain-loop: (η_g²η_i)^{N−1}.
pub fn eta_chain_loop(eta_g: f64, eta_i: f64, n: usize) -> Result<f64> {
    check_transmission("eta_g", eta_g)?;
    check_transmission("eta_i", eta_i)?;
    if n < 2 {
        return Err(Error::InvalidDimension { min: 2, got: n });
    }
    Ok((eta_g * eta_g * eta_i).powi(n as i32 - 1))
}

/// Per-layer excess loss of the dual-loop over the chain-loop at equal
/// η_g, η_i: η_s²·outer_base^N.
pub fn per_layer_ratio(eta_s: f64, outer_base: f64, n: usize) -> Result<f64> {
    check_transmission("eta_s", eta_s)?;
    check_transmission("outer_base", outer_base)?;
    Ok(eta_s * eta_s * outer_base.powi(n as i32))
}

/// Chain-loop gate transmission above which the on-chip chain-loop beats the
/// dual-loop per layer: η_{g,DL}·η_s·√(η_o/η_{i,CL}).
pub fn chain_competitive_threshold(eta_g_dl: f64, eta_s: f64, eta_o: f64, eta_i_cl: f64) -> Result<f64> {
    check_transmission("eta_g_dl", eta_g_dl)?;
    check_transmission("eta_s", eta_s)?;
    check_transmission("eta_o", eta_o)?;
    check_transmission("eta_i_cl", eta_i_cl)?;
    Ok(eta_g_dl * eta_s * (eta_o / eta_i_cl).sqrt())
}

/// dB attenuation over a length to transmission: 10^(−rate·length/10).
pub fn transmission_from_loss(loss_rate_db_per_m: f64, length_m: f64) -> Result<f64> {
    if loss_rate_db_per_m < 0.0 || length_m < 0.0 {
        return Err(Error::InvalidArgument(
            "loss rate and length must be non-negative".into(),
        ));
    }
    Ok(10f64.powf(-loss_rate_db_per_m * length_m / 10.0))
}

/// Physical length of a delay loop holding one bin spacing: τ·c/n.
pub fn loop_length(tau: f64, refractive_index: f64) -> Result<f64> {
    if tau < 0.0 {
        return Err(Error::InvalidTiming(format!("tau must be non-negative, got {tau}")));
    }
    if refractive_index < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "refractive index must be at least 1, got {refractive_index}"
        )));
    }
    Ok(tau * SPEED_OF_LIGHT / refractive_index)
}

/// Catalog identifiers, one per physical platform considered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogId {
    DlFs,
    ClFs,
    ClIntCurrent,
    ClIntFuture,
    SeIntCurrent,
    SeIntOptimistic,
}

impl CatalogId {
    pub const ALL: [CatalogId; 6] = [
        CatalogId::DlFs,
        CatalogId::ClFs,
        CatalogId::ClIntCurrent,
        CatalogId::ClIntFuture,
        CatalogId::SeIntCurrent,
        CatalogId::SeIntOptimistic,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogId::DlFs => "DL_FS",
            CatalogId::ClFs => "CL_FS",
            CatalogId::ClIntCurrent => "CL_INT_CURRENT",
            CatalogId::ClIntFuture => "CL_INT_FUTURE",
            CatalogId::SeIntCurrent => "SE_INT_CURRENT",
            CatalogId::SeIntOptimistic => "SE_INT_OPTIMISTIC",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == name)
            .ok_or_else(|| Error::UnknownCatalogName {
                name: name.to_string(),
                valid: Self::ALL
                    .iter()
                    .map(|id| id.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    /// Whether the entry describes currently demonstrated technology rather
    /// than projected improvements.
    pub fn is_current_technology(&self) -> bool {
        !matches!(self, CatalogId::ClIntFuture | CatalogId::SeIntOptimistic)
    }
}

/// One row of the component-transmission catalog. Inapplicable fields are
/// `None`, never silently defaulted.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentCatalogEntry {
    pub name: CatalogId,
    pub kind: ArchKind,
    pub eta_gate: f64,
    pub eta_switch: Option<f64>,
    pub eta_inner: Option<f64>,
    pub outer_base: Option<f64>,
    pub tau: Option<f64>,
    pub provenance: &'static str,
}

impl ComponentCatalogEntry {
    /// Closed-form heuristic transmission for this entry at N modes.
    pub fn heuristic(&self, n: usize) -> Result<f64> {
        match self.kind {
            ArchKind::Spatial => eta_spatial(self.eta_gate, n),
            ArchKind::ChainLoop => eta_chain_loop(self.eta_gate, self.eta_inner.unwrap(), n),
            ArchKind::DualLoop => eta_dual_loop(
                self.eta_gate,
                self.eta_switch.unwrap(),
                self.eta_inner.unwrap(),
                self.outer_base.unwrap(),
                n,
            ),
        }
    }
}

/// The full component catalog: free-space dual-loop and chain-loop, current
/// and future integrated chain-loop (lithium niobate), and current and
/// optimistic integrated spatial encodings (silicon).
pub fn catalog() -> Vec<ComponentCatalogEntry> {
    vec![
        ComponentCatalogEntry {
            name: CatalogId::DlFs,
            kind: ArchKind::DualLoop,
            eta_gate: 0.9604,
            eta_switch: Some(0.9146),
            eta_inner: Some(1.0),
            outer_base: Some(0.9999),
            tau: Some(1e-8),
            provenance: "free space; MZI 0.98^2 from two bulk modulators; switch 0.98 times 0.3 dB fiber coupling; outer loop 0.2 dB/km silica fiber at 2.1 m per bin",
        },
        ComponentCatalogEntry {
            name: CatalogId::ClFs,
            kind: ArchKind::ChainLoop,
            eta_gate: 0.9604,
            eta_switch: None,
            eta_inner: Some(1.0),
            outer_base: None,
            tau: Some(1e-8),
            provenance: "free space; same MZI as DL_FS; lossless free-space delay loops",
        },
        ComponentCatalogEntry {
            name: CatalogId::ClIntCurrent,
            kind: ArchKind::ChainLoop,
            eta_gate: 0.7943,
            eta_switch: None,
            eta_inner: Some(0.9188),
            outer_base: None,
            tau: Some(1e-9),
            provenance: "integrated lithium niobate; MZI 10^-0.1 from two 0.5 dB modulators; loop 2.7 dB/m over 14 cm",
        },
        ComponentCatalogEntry {
            name: CatalogId::ClIntFuture,
            kind: ArchKind::ChainLoop,
            eta_gate: 0.9998,
            eta_switch: None,
            eta_inner: Some(0.9906),
            outer_base: None,
            tau: Some(1e-9),
            provenance: "projected lithium niobate at 0.3 dB/m; MZI value counts a single propagation-loss-limited 3 mm modulator pass while the current value counts two 0.5 dB modulators",
        },
        ComponentCatalogEntry {
            name: CatalogId::SeIntCurrent,
            kind: ArchKind::Spatial,
            eta_gate: 0.987,
            eta_switch: None,
            eta_inner: None,
            outer_base: None,
            tau: None,
            provenance: "silicon spatial encoding; 2.4 dB/cm over a 235 um MZI",
        },
        ComponentCatalogEntry {
            name: CatalogId::SeIntOptimistic,
            kind: ArchKind::Spatial,
            eta_gate: 0.998,
            eta_switch: None,
            eta_inner: None,
            outer_base: None,
            tau: None,
            provenance: "silicon spatial encoding at an optimistic 0.03 dB/cm",
        },
    ]
}

pub fn catalog_entry(id: CatalogId) -> ComponentCatalogEntry {
    catalog().into_iter().find(|e| e.name == id).expect("catalog is total")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityVerdict {
    Feasible,
    Infeasible,
    UnknownN,
}

impl FeasibilityVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            FeasibilityVerdict::Feasible => "feasible",
            FeasibilityVerdict::Infeasible => "infeasible",
            FeasibilityVerdict::UnknownN => "unknown_N",
        }
    }
}

/// Threshold data for boson-sampling advantage; only the 50-photon point is
/// established.
pub fn default_feasibility_thresholds() -> BTreeMap<usize, f64> {
    BTreeMap::from([(50, 0.7)])
}

/// Advisory verdict: does the given overall transmission clear the quantum
/// advantage threshold for N input photons?
pub fn bs_feasibility(eta: f64, n: usize, thresholds: &BTreeMap<usize, f64>) -> Result<FeasibilityVerdict> {
    check_transmission("eta", eta)?;
    Ok(match thresholds.get(&n) {
        None => FeasibilityVerdict::UnknownN,
        Some(&threshold) if eta >= threshold => FeasibilityVerdict::Feasible,
        Some(_) => FeasibilityVerdict::Infeasible,
    })
}
