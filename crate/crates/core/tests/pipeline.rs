mod common;

use ltp_saliency::pipeline::{
    center_correlation, fuse, normalize_01, orient, pearson, space_map, CenterTemplate,
};
use ltp_saliency::synthetic::textured_scene;
use ltp_saliency::{
    detect, ColorSpace, Error, NeighborhoodSpec, RasterU8, SaliencyConfig, SaliencyMap,
    SuperpixelLabeling,
};
use proptest::prelude::*;

fn template_map(w: usize, h: usize) -> SaliencyMap {
    SaliencyMap::from_values(w, h, CenterTemplate::new(w, h).values()).unwrap()
}

fn assert_superpixel_constant(map: &SaliencyMap, lab: &SuperpixelLabeling) {
    let mut seen = vec![None; lab.count()];
    for (&l, &v) in lab.labels().iter().zip(map.values()) {
        assert!((0.0..=1.0).contains(&v));
        let slot = &mut seen[l as usize];
        assert!(
            slot.is_none_or(|s| s == v),
            "superpixel {l} is not constant"
        );
        *slot = Some(v);
    }
}

#[test]
fn defaults() {
    let cfg = SaliencyConfig::default();
    assert_eq!(cfg.superpixels, 100);
    assert_eq!(
        cfg.spaces,
        vec![
            ColorSpace::Rgb,
            ColorSpace::Hsl,
            ColorSpace::Luv,
            ColorSpace::Cmy
        ]
    );
    assert_eq!(cfg.neighborhood, NeighborhoodSpec::new(5, 1.0).unwrap());
    assert_eq!(cfg.bins, 75);
}

#[test]
fn template_rectangles() {
    assert_eq!(CenterTemplate::new(400, 300).rect(), (100, 75, 200, 150));
    assert_eq!(CenterTemplate::new(7, 9).rect(), (2, 2, 3, 4));
}

#[test]
fn orient_examples() {
    let t = template_map(12, 10);
    assert!((center_correlation(&t).unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(orient(t.clone()), t);
    let flipped = orient(t.complement());
    assert_eq!(flipped, t);
    let flat = SaliencyMap::from_values(12, 10, vec![0.3; 120]).unwrap();
    assert_eq!(center_correlation(&flat), None);
    assert_eq!(orient(flat.clone()), flat);
}

#[test]
fn pearson_examples() {
    assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-12);
    assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
    assert_eq!(pearson(&[1.0, 1.0], &[0.0, 5.0]), None);
}

#[test]
fn constant_image_gives_zero_map() {
    let img = RasterU8::from_fn_rgb(40, 30, |_, _| [90, 140, 30]).unwrap();
    let d = detect(&img, &SaliencyConfig::default()).unwrap();
    assert!(d.saliency.values().iter().all(|&v| v == 0.0));
    for (_, m) in &d.space_maps {
        assert!(m.values().iter().all(|&v| v == 0.0));
    }
}

#[test]
fn textured_center_patch_is_salient() {
    let img = common::two_texture(64, 16..48);
    let lab = common::grid_labeling(64, 64, 8);
    let cfg = SaliencyConfig::default();
    for space in ColorSpace::ALL {
        let map = space_map(&img, space, &lab, &cfg).unwrap();
        for y in 0..64 {
            for x in 0..64 {
                let inside = (16..48).contains(&x) && (16..48).contains(&y);
                let v = map.get(x, y);
                if inside {
                    assert!(v >= 0.5, "{space}: center pixel ({x},{y}) = {v}");
                } else {
                    assert!(v <= 0.5, "{space}: background pixel ({x},{y}) = {v}");
                }
            }
        }
    }
}

#[test]
fn detection_maps_are_superpixel_constant() {
    let scene = textured_scene(120, 90, 4);
    let d = detect(&scene.image, &SaliencyConfig::default()).unwrap();
    assert_eq!(d.space_maps.len(), 4);
    assert_superpixel_constant(&d.saliency, &d.superpixels);
    for (space, m) in &d.space_maps {
        assert_superpixel_constant(m, &d.superpixels);
        assert!(center_correlation(m).is_none_or(|r| r >= 0.0), "{space}");
    }
}

#[test]
fn space_selection_follows_fusion_order() {
    let scene = textured_scene(60, 45, 8);
    let cfg = SaliencyConfig {
        spaces: vec![ColorSpace::Cmy, ColorSpace::Rgb, ColorSpace::Cmy],
        ..SaliencyConfig::default()
    };
    let d = detect(&scene.image, &cfg).unwrap();
    let order: Vec<ColorSpace> = d.space_maps.iter().map(|(s, _)| *s).collect();
    assert_eq!(order, vec![ColorSpace::Rgb, ColorSpace::Cmy]);
    let none = SaliencyConfig {
        spaces: vec![],
        ..SaliencyConfig::default()
    };
    assert!(matches!(
        detect(&scene.image, &none),
        Err(Error::EmptySet(_))
    ));
}

#[test]
fn fuse_errors_and_constant_input() {
    let lab = common::grid_labeling(8, 8, 4);
    assert!(matches!(fuse(&[], &lab), Err(Error::EmptySet(_))));
    let small = SaliencyMap::from_values(4, 4, vec![0.0; 16]).unwrap();
    assert!(matches!(
        fuse(&[small], &lab),
        Err(Error::DimensionMismatch { .. })
    ));
    let flat = SaliencyMap::from_values(8, 8, vec![0.7; 64]).unwrap();
    let fused = fuse(&[flat.clone(), flat.clone(), flat.clone(), flat], &lab).unwrap();
    assert!(fused.values().iter().all(|&v| v == 0.0));
}

fn block_map(levels: &[u8], lab: &SuperpixelLabeling) -> SaliencyMap {
    let values = lab
        .labels()
        .iter()
        .map(|&l| f64::from(levels[l as usize]) / 64.0)
        .collect();
    SaliencyMap::from_values(lab.width(), lab.height(), values).unwrap()
}

proptest! {
    #[test]
    fn orient_is_idempotent(values in prop::collection::vec(0.0f64..=1.0, 9 * 7)) {
        let m = SaliencyMap::from_values(9, 7, values).unwrap();
        let once = orient(m);
        prop_assert!(center_correlation(&once).is_none_or(|r| r >= 0.0));
        prop_assert_eq!(orient(once.clone()), once);
    }

    #[test]
    fn normalization_is_idempotent(values in prop::collection::vec(-5.0f64..5.0, 12)) {
        let once = normalize_01(4, 3, &values).unwrap();
        prop_assert!(once.values().iter().all(|v| (0.0..=1.0).contains(v)));
        prop_assert_eq!(normalize_01(4, 3, once.values()).unwrap(), once);
    }

    #[test]
    fn fusing_copies_of_one_map_keeps_its_order(
        levels in prop::collection::vec(0u8..=64, 16),
        copies in 1usize..=4,
    ) {
        let lab = common::grid_labeling(16, 16, 4);
        let m = orient(block_map(&levels, &lab));
        prop_assume!(center_correlation(&m).is_some_and(|r| r > 1e-6));
        let maps = vec![m.clone(); copies];
        let fused = fuse(&maps, &lab).unwrap();
        let expected = normalize_01(16, 16, m.values()).unwrap();
        for (a, b) in fused.values().iter().zip(expected.values()) {
            prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }
}
