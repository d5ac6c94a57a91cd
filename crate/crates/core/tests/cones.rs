use std::collections::BTreeSet;

use hive_forge::cones::{
    check_unimodular, check_wgs, classify_rays, edge_certificate, pstar, xi_cone, RayKind,
    XiVariant,
};
use hive_forge::counting::{dominant_grid, fiber_points, hives};
use hive_forge::lattice::{enumerate_h, IntVector};

#[test]
fn unit_covectors_are_edges_of_xi() {
    for n in 3..=5 {
        let xi = xi_cone(n, XiVariant::Full).unwrap();
        for &v in enumerate_h(n).unwrap().iter() {
            let e = IntVector::unit(n, v);
            assert!(xi.contains(&e), "n={n} v={v}");
            let c = edge_certificate(&xi, &e).unwrap();
            if !v.is_corner() {
                assert!(c.is_edge, "n={n} v={v}: {c:?}");
            }
        }
    }
}

#[test]
fn pstar_certificates_through_seven() {
    for n in 2..=7 {
        let u = check_unimodular(&pstar(n).unwrap()).unwrap();
        assert!(
            u.passed() && u.snf_diagonal.iter().all(|&d| d == 1),
            "{u:?}"
        );
        let w = check_wgs(n).unwrap();
        assert!(
            w.passed() && w.monomials == 3 * n * (n - 1) / 2 && w.rhombi == w.monomials,
            "{w:?}"
        );
    }
}

#[test]
fn rays_are_the_generated_families() {
    for n in 3..=4 {
        let c = classify_rays(n).unwrap();
        assert!(c.passed(), "{c:?}");
        assert!(!c.by_kind.contains_key(&RayKind::Unclassified));
    }
}

#[test]
fn hives_transport_onto_fibers() {
    for n in 2..=3 {
        let p = pstar(n).unwrap();
        let xi = xi_cone(n, XiVariant::Full).unwrap();
        for w in dominant_grid(n, -1, 2) {
            let hs = hives(&w).unwrap();
            let images: BTreeSet<IntVector> = hs.iter().map(|h| p.transpose_apply(h)).collect();
            assert_eq!(images.len(), hs.len());
            for g in &images {
                assert!(xi.contains(g) && g.sum() == 0, "{w}: {g}");
            }
            let fiber: BTreeSet<IntVector> = fiber_points(&w, &xi).unwrap().into_iter().collect();
            assert_eq!(images, fiber, "{w}");
        }
    }
}
