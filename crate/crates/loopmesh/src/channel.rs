//! Lossy process matrix assembly and singular-value loss metrics.

use crate::architectures::{DiagramElement, LossDiagram};
use crate::mesh::mzi_matrix;
use crate::numerics::{svd_values, ComplexMatrix};
use crate::{Error, Result};

/// Effective transmissions recovered from a process matrix: η_i are the
/// squared singular values, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct LossMetrics {
    pub etas: Vec<f64>,
    pub eta_max: f64,
    pub eta_min: f64,
    pub eta_bar: f64,
    /// Population standard deviation of the η_i.
    pub delta_eta: f64,
}

/// Multiply the diagram's elements in application order: gates as embedded
/// 2x2 unitaries, attenuators as diagonal factors of √η on the affected mode.
pub fn process_matrix(diagram: &LossDiagram) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(diagram.n());
    for el in diagram.elements() {
        match el {
            DiagramElement::Gate(g) => {
                if g.params.is_bar() {
                    continue;
                }
                let m = mzi_matrix(&g.params);
                acc.apply_two_mode_left(&m, g.pair);
            }
            DiagramElement::Attenuator { mode, factor, .. } => {
                acc.scale_row(*mode, factor.sqrt());
            }
        }
    }
    acc
}

/// Extract η metrics from a process matrix.
pub fn loss_metrics(a: &ComplexMatrix) -> Result<LossMetrics> {
    let singular = svd_values(a)?;
    if let Some(&worst) = singular.first() {
        if worst > 1.0 + 1e-6 {
            return Err(Error::Physicality { value: worst });
        }
    }
    let etas: Vec<f64> = singular.iter().map(|s| s * s).collect();
    let n = etas.len() as f64;
    let eta_max = etas[0];
    let eta_min = *etas.last().unwrap();
    let eta_bar = etas.iter().sum::<f64>() / n;
    let variance = etas.iter().map(|e| (e - eta_bar).powi(2)).sum::<f64>() / n;
    Ok(LossMetrics {
        etas,
        eta_max,
        eta_min,
        eta_bar,
        delta_eta: variance.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::architectures::{build_diagram, mode_line_transmissions, ArchitectureConfig};
    use crate::mesh::{decompose_reck, reconstruct, GateParams, MeshDecomposition, PlacedGate};
    use crate::numerics::{frobenius_distance, haar_unitary, RandomSource};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lossless_reproduces_decomposed_unitary() {
        let u = haar_unitary(4, &RandomSource::new(50, 0)).unwrap();
        let mesh = decompose_reck(&u).unwrap();
        let config = ArchitectureConfig::chain_loop(1.0, 1.0).unwrap();
        let a = process_matrix(&build_diagram(&mesh, &config).unwrap());
        let d = ComplexMatrix::diagonal(mesh.output_phases());
        let da = d.mul(&a).unwrap();
        assert!(frobenius_distance(&da, &u).unwrap() < 1e-9);
    }

    fn bar_mesh(n: usize) -> MeshDecomposition {
        decompose_reck(&ComplexMatrix::identity(n)).unwrap()
    }

    #[test]
    fn bar_mesh_gives_scalar_channel() {
        // identity gates commute with the attenuators: A = 0.392·I at N=3
        let mesh = bar_mesh(3);
        let config = ArchitectureConfig::chain_loop(0.7, 0.8).unwrap();
        let a = process_matrix(&build_diagram(&mesh, &config).unwrap());
        let t = (0.49f64 * 0.8).powi(2); // per-line product, 0.153664
        assert!((t - 0.153664).abs() < 1e-12);
        let amp = t.sqrt();
        assert!((amp - 0.392).abs() < 1e-12);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { amp } else { 0.0 };
                assert!((a[(i, j)] - c(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn n2_uniform_placement_recovers_mode_line_product() {
        // with the per-layer loss placed uniformly on both modes, the channel
        // is a scalar times a unitary: every η equals the mode-line product
        use crate::architectures::{AttenuatorKind, DiagramElement, LossDiagram};
        use crate::mesh::ArchKind;
        let u = haar_unitary(2, &RandomSource::new(51, 0)).unwrap();
        let mesh = decompose_reck(&u).unwrap();
        let (g, i) = (0.7, 0.8);
        let t = g * g * i;
        let diagram = LossDiagram::from_elements(
            2,
            ArchKind::ChainLoop,
            vec![
                DiagramElement::Attenuator { mode: 1, factor: t, kind: AttenuatorKind::Gate },
                DiagramElement::Attenuator { mode: 2, factor: t, kind: AttenuatorKind::Gate },
                DiagramElement::Gate(*mesh.gate(1, 1)),
            ],
        )
        .unwrap();
        let metrics = loss_metrics(&process_matrix(&diagram)).unwrap();
        let line = mode_line_transmissions(&diagram)[0];
        assert!((line - t).abs() < 1e-15);
        for eta in &metrics.etas {
            assert!((eta - line).abs() < 1e-10, "{eta} vs {line}");
        }
    }

    #[test]
    fn n2_canonical_diagram_preserves_line_product_as_determinant() {
        // the canonical N=2 block is not segment-uniform, but the product of
        // the two η still equals the squared mode-line product
        let u = haar_unitary(2, &RandomSource::new(51, 1)).unwrap();
        let mesh = decompose_reck(&u).unwrap();
        let config = ArchitectureConfig::chain_loop(0.7, 0.8).unwrap();
        let diagram = build_diagram(&mesh, &config).unwrap();
        let metrics = loss_metrics(&process_matrix(&diagram)).unwrap();
        let line = mode_line_transmissions(&diagram)[0];
        let product: f64 = metrics.etas.iter().product();
        assert!((product - line * line).abs() < 1e-10);
        assert!(metrics.eta_min <= line && line <= metrics.eta_max);
    }

    #[test]
    fn loss_metrics_scalar_channel() {
        let a = ComplexMatrix::identity(4).scale(c(0.5, 0.0));
        let m = loss_metrics(&a).unwrap();
        for eta in &m.etas {
            assert!((eta - 0.25).abs() < 1e-12);
        }
        assert!((m.eta_bar - 0.25).abs() < 1e-12);
        assert!(m.delta_eta < 1e-12);
    }

    #[test]
    fn loss_metrics_diagonal() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.6, 0.0)]);
        let m = loss_metrics(&a).unwrap();
        assert!((m.eta_max - 1.0).abs() < 1e-12);
        assert!((m.eta_min - 0.36).abs() < 1e-12);
        assert!((m.eta_bar - 0.68).abs() < 1e-12);
        assert!((m.delta_eta - 0.32).abs() < 1e-12);
    }

    #[test]
    fn loss_metrics_rejects_unphysical() {
        let a = ComplexMatrix::identity(2).scale(c(1.5, 0.0));
        assert!(matches!(loss_metrics(&a), Err(Error::Physicality { .. })));
    }

    #[test]
    fn heuristic_bracketing_per_sample_shape() {
        // chain-loop N=6 with η_g=0.7, η_i=0.8: the per-sample η spectrum
        // spans the heuristic value (0.49·0.8)^5
        let heuristic = (0.49f64 * 0.8).powi(5);
        let config = ArchitectureConfig::chain_loop(0.7, 0.8).unwrap();
        let mut bracketed = 0;
        for t in 0..20 {
            let u = haar_unitary(6, &RandomSource::new(52, t)).unwrap();
            let mesh = decompose_reck(&u).unwrap();
            let a = process_matrix(&build_diagram(&mesh, &config).unwrap());
            let m = loss_metrics(&a).unwrap();
            if m.eta_min <= heuristic && heuristic <= m.eta_max {
                bracketed += 1;
            }
        }
        assert_eq!(bracketed, 20);
    }

    #[test]
    fn physicality_over_random_cases() {
        let mut rng = RandomSource::new(53, 0).rng();
        use rand::Rng;
        for t in 0..50 {
            let n = rng.gen_range(2..=8);
            let u = haar_unitary(n, &RandomSource::new(54, t)).unwrap();
            let mesh = decompose_reck(&u).unwrap();
            let config = if rng.gen_bool(0.5) {
                ArchitectureConfig::chain_loop(rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0))
                    .unwrap()
            } else {
                ArchitectureConfig::dual_loop(
                    rng.gen_range(0.05..1.0),
                    rng.gen_range(0.05..1.0),
                    rng.gen_range(0.05..1.0),
                    rng.gen_range(0.05..1.0),
                )
                .unwrap()
            };
            let a = process_matrix(&build_diagram(&mesh, &config).unwrap());
            let m = loss_metrics(&a).unwrap();
            for eta in &m.etas {
                assert!(*eta > 0.0 && *eta <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn lossless_etas_are_one() {
        let u = haar_unitary(5, &RandomSource::new(55, 0)).unwrap();
        let mesh = decompose_reck(&u).unwrap();
        for config in [
            ArchitectureConfig::chain_loop(1.0, 1.0).unwrap(),
            ArchitectureConfig::dual_loop(1.0, 1.0, 1.0, 1.0).unwrap(),
        ] {
            let a = process_matrix(&build_diagram(&mesh, &config).unwrap());
            let m = loss_metrics(&a).unwrap();
            for eta in &m.etas {
                assert!((eta - 1.0).abs() < 1e-10);
            }
        }
        // sanity: the lossless diagram still applies the mesh unitary
        let config = ArchitectureConfig::chain_loop(1.0, 1.0).unwrap();
        let a = process_matrix(&build_diagram(&mesh, &config).unwrap());
        let mut without_phases = reconstruct(&mesh);
        for (k, phase) in mesh.output_phases().iter().enumerate() {
            for j in 0..mesh.n() {
                without_phases[(k, j)] /= phase;
            }
        }
        assert!(frobenius_distance(&a, &without_phases).unwrap() < 1e-10);
    }

    #[test]
    fn bar_gate_in_diagram_is_exact() {
        let gate = PlacedGate {
            layer: 1,
            pair: 1,
            params: GateParams::bar(),
            is_padding: true,
        };
        let m = mzi_matrix(&gate.params);
        assert_eq!(m, ComplexMatrix::identity(2));
    }
}
