use image::{GrayImage, Luma, Rgb, RgbImage};
use ltp_saliency::imageio::{load_saliency, quantize};
use ltp_saliency::pipeline::SaliencyMap;
use ltp_saliency::{load_ground_truth, load_image, save_saliency, Error, GroundTruth};
use proptest::prelude::*;

#[test]
fn rgb_png_decodes_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scene.png");
    let src = RgbImage::from_fn(400, 300, |x, y| Rgb([(x % 256) as u8, (y % 256) as u8, 7]));
    src.save(&path).unwrap();

    let img = load_image(&path).unwrap();
    assert_eq!((img.width(), img.height(), img.channels()), (400, 300, 3));
    assert_eq!(img.rgb(399, 299), [143, 43, 7]);
    assert_eq!(img.data(), src.as_raw().as_slice());
}

#[test]
fn gray_sources_are_replicated() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gray.png");
    GrayImage::from_fn(5, 4, |x, y| Luma([(10 * x + y) as u8]))
        .save(&path)
        .unwrap();
    let img = load_image(&path).unwrap();
    assert_eq!(img.channels(), 3);
    for y in 0..4 {
        for x in 0..5 {
            let v = (10 * x + y) as u8;
            assert_eq!(img.rgb(x, y), [v, v, v]);
        }
    }
}

#[test]
fn jpeg_is_supported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("photo.jpg");
    RgbImage::from_pixel(16, 8, Rgb([120, 60, 30]))
        .save(&path)
        .unwrap();
    let img = load_image(&path).unwrap();
    assert_eq!((img.width(), img.height()), (16, 8));
}

#[test]
fn tiny_missing_and_corrupt_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let tiny = dir.path().join("tiny.png");
    RgbImage::new(2, 2).save(&tiny).unwrap();
    assert!(matches!(
        load_image(&tiny),
        Err(Error::TooSmall {
            width: 2,
            height: 2
        })
    ));

    let missing = dir.path().join("nope.png");
    assert!(matches!(load_image(&missing), Err(Error::Io { .. })));

    let junk = dir.path().join("junk.png");
    std::fs::write(&junk, b"definitely not a png").unwrap();
    assert!(matches!(load_image(&junk), Err(Error::Format { .. })));
    assert!(matches!(
        load_ground_truth(&junk),
        Err(Error::Format { .. })
    ));
}

#[test]
fn ground_truth_thresholds_at_128() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mask.png");
    let values = [0u8, 127, 128, 255, 200, 3];
    GrayImage::from_raw(3, 2, values.to_vec())
        .unwrap()
        .save(&path)
        .unwrap();
    let gt = load_ground_truth(&path).unwrap();
    assert_eq!(gt.mask(), &[0, 0, 1, 1, 1, 0]);
    assert_eq!(gt.positives(), 3);

    let white = dir.path().join("white.png");
    GrayImage::from_pixel(4, 4, Luma([255]))
        .save(&white)
        .unwrap();
    assert!(load_ground_truth(&white)
        .unwrap()
        .mask()
        .iter()
        .all(|&m| m == 1));
    let black = dir.path().join("black.png");
    GrayImage::from_pixel(4, 4, Luma([0])).save(&black).unwrap();
    assert_eq!(load_ground_truth(&black).unwrap().positives(), 0);
}

#[test]
fn color_masks_use_the_first_channel() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mask.png");
    let mut m = RgbImage::new(3, 3);
    m.put_pixel(0, 0, Rgb([200, 0, 0]));
    m.put_pixel(1, 0, Rgb([0, 255, 255]));
    m.save(&path).unwrap();
    let gt = load_ground_truth(&path).unwrap();
    assert_eq!(gt.mask()[0], 1);
    assert_eq!(gt.mask()[1], 0);
}

#[test]
fn ground_truth_size_check() {
    let gt = GroundTruth::from_fn(4, 3, |x, _| x > 1);
    assert!(gt.check_dims(4, 3).is_ok());
    assert!(matches!(
        gt.check_dims(3, 4),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn export_rounding() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.png");
    let map = SaliencyMap::from_values(3, 1, vec![0.0, 1.0, 0.5]).unwrap();
    save_saliency(&map, &path).unwrap();
    let back = image::open(&path).unwrap();
    assert_eq!(back.color(), image::ColorType::L8);
    assert_eq!(back.into_luma8().into_raw(), vec![0, 255, 128]);
}

proptest! {
    #[test]
    fn save_load_round_trip(values in prop::collection::vec(0.0f64..=1.0, 12)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("map.png");
        let map = SaliencyMap::from_values(4, 3, values.clone()).unwrap();
        save_saliency(&map, &path).unwrap();
        let raw = image::open(&path).unwrap().into_luma8().into_raw();
        let loaded = load_saliency(&path).unwrap();
        for (i, s) in values.iter().enumerate() {
            let expected = (255.0 * s + 0.5).floor() as u8;
            prop_assert_eq!(raw[i], expected);
            prop_assert_eq!(quantize(loaded.values()[i]), expected);
        }
    }

    #[test]
    fn binarization_is_idempotent(values in prop::collection::vec(any::<u8>(), 16)) {
        let gt = GroundTruth::from_gray(4, 4, &values).unwrap();
        prop_assert_eq!(gt.binarized(), gt.clone());
        let again = GroundTruth::from_gray(4, 4, &gt.mask().iter().map(|&m| m * 255).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(again, gt);
    }
}
