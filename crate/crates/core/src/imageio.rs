//! Raster input and saliency map output.
//!
//! Source images are always lifted to 3-channel 8-bit RGB; grayscale inputs
//! are replicated across channels. Ground-truth masks are binarized on their
//! first channel at 128. Saliency maps are written as 8-bit grayscale PNG.

use std::path::{Path, PathBuf};

use image::{DynamicImage, GrayImage, ImageError, ImageFormat, RgbImage};

use crate::error::{Error, Result};
use crate::pipeline::SaliencyMap;

/// Smallest side length that still admits a radius-1 neighborhood.
pub const MIN_SIDE: usize = 3;

/// Binarization threshold applied to the first channel of a mask.
pub const GT_THRESHOLD: u8 = 128;

/// An 8-bit raster stored row-major, channels interleaved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterU8 {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl RasterU8 {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if channels != 1 && channels != 3 {
            return Err(Error::Invalid(format!(
                "raster must have 1 or 3 channels, got {channels}"
            )));
        }
        if width < MIN_SIDE || height < MIN_SIDE {
            return Err(Error::TooSmall { width, height });
        }
        if data.len() != width * height * channels {
            return Err(Error::Invalid(format!(
                "raster data has {} samples, expected {}",
                data.len(),
                width * height * channels
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    /// Builds a 3-channel raster from a per-pixel closure.
    pub fn from_fn_rgb(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [u8; 3],
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self::new(width, height, 3, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    /// RGB triple at `(x, y)`. Single-channel rasters report the gray value
    /// on all three channels.
    pub fn rgb(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * self.channels;
        if self.channels == 1 {
            let v = self.data[i];
            [v, v, v]
        } else {
            [self.data[i], self.data[i + 1], self.data[i + 2]]
        }
    }

    /// Lifts a single-channel raster to three channels; 3-channel input is cloned.
    pub fn to_rgb(&self) -> RasterU8 {
        if self.channels == 3 {
            return self.clone();
        }
        let data = self.data.iter().flat_map(|&v| [v, v, v]).collect();
        RasterU8 {
            width: self.width,
            height: self.height,
            channels: 3,
            data,
        }
    }

    pub fn to_rgb_image(&self) -> RgbImage {
        let rgb = self.to_rgb();
        RgbImage::from_raw(self.width as u32, self.height as u32, rgb.data)
            .expect("raster length checked at construction")
    }
}

/// A binary mask, one byte per pixel, values in {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    width: usize,
    height: usize,
    mask: Vec<u8>,
}

impl GroundTruth {
    /// Binarizes arbitrary 8-bit samples at [`GT_THRESHOLD`].
    pub fn from_gray(width: usize, height: usize, values: &[u8]) -> Result<Self> {
        if values.len() != width * height {
            return Err(Error::Invalid(format!(
                "mask has {} samples, expected {}",
                values.len(),
                width * height
            )));
        }
        let mask = values
            .iter()
            .map(|&v| u8::from(v >= GT_THRESHOLD))
            .collect();
        Ok(Self {
            width,
            height,
            mask,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut mask = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                mask.push(u8::from(f(x, y)));
            }
        }
        Self {
            width,
            height,
            mask,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn mask(&self) -> &[u8] {
        &self.mask
    }

    pub fn positives(&self) -> usize {
        self.mask.iter().filter(|&&m| m == 1).count()
    }

    /// Fails with [`Error::DimensionMismatch`] unless the mask is `width`×`height`.
    pub fn check_dims(&self, width: usize, height: usize) -> Result<()> {
        if (self.width, self.height) != (width, height) {
            return Err(Error::DimensionMismatch {
                expected: (width, height),
                actual: (self.width, self.height),
            });
        }
        Ok(())
    }

    /// Re-binarizes the mask; a no-op on valid masks.
    pub fn binarized(&self) -> GroundTruth {
        let values: Vec<u8> = self.mask.iter().map(|&m| m * 255).collect();
        GroundTruth::from_gray(self.width, self.height, &values).expect("dimensions carried over")
    }
}

fn decode(path: &Path) -> Result<DynamicImage> {
    let reader = image::ImageReader::open(path).map_err(|e| Error::io(path, e))?;
    let reader = reader
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?;
    reader.decode().map_err(|e| match e {
        ImageError::IoError(source) => Error::io(path, source),
        other => Error::Format {
            path: path.to_path_buf(),
            message: other.to_string(),
        },
    })
}

/// Loads a PNG/JPEG/BMP file as a 3-channel raster.
pub fn load_image(path: impl AsRef<Path>) -> Result<RasterU8> {
    let img = decode(path.as_ref())?.into_rgb8();
    let (w, h) = (img.width() as usize, img.height() as usize);
    RasterU8::new(w, h, 3, img.into_raw())
}

/// Loads a mask and binarizes its first channel at [`GT_THRESHOLD`].
pub fn load_ground_truth(path: impl AsRef<Path>) -> Result<GroundTruth> {
    let img = decode(path.as_ref())?.into_rgba8();
    let (w, h) = (img.width() as usize, img.height() as usize);
    let first: Vec<u8> = img.pixels().map(|p| p.0[0]).collect();
    GroundTruth::from_gray(w, h, &first)
}

/// Reads an 8-bit grayscale map back as a [`SaliencyMap`] with values `v / 255`.
pub fn load_saliency(path: impl AsRef<Path>) -> Result<SaliencyMap> {
    let img = decode(path.as_ref())?.into_luma8();
    let (w, h) = (img.width() as usize, img.height() as usize);
    let values = img
        .into_raw()
        .into_iter()
        .map(|v| f64::from(v) / 255.0)
        .collect();
    SaliencyMap::from_values(w, h, values)
}

/// Quantizes a saliency value to 8 bits, rounding half up.
pub fn quantize(s: f64) -> u8 {
    (255.0 * s + 0.5).floor().clamp(0.0, 255.0) as u8
}

pub fn to_gray_image(map: &SaliencyMap) -> GrayImage {
    let data = map.values().iter().map(|&s| quantize(s)).collect();
    GrayImage::from_raw(map.width() as u32, map.height() as u32, data)
        .expect("map length matches its dimensions")
}

/// Writes `map` as an 8-bit grayscale PNG with pixel value `round(255 s)`.
pub fn save_saliency(map: &SaliencyMap, path: impl AsRef<Path>) -> Result<()> {
    save_png(&DynamicImage::ImageLuma8(to_gray_image(map)), path.as_ref())
}

pub(crate) fn save_png(img: &DynamicImage, path: &Path) -> Result<()> {
    img.save_with_format(path, ImageFormat::Png)
        .map_err(|e| match e {
            ImageError::IoError(source) => Error::io(path, source),
            other => Error::io(path, std::io::Error::other(other.to_string())),
        })
}

/// Output name for an input image: its basename with a `.png` extension.
pub fn output_file_name(input: &Path) -> PathBuf {
    PathBuf::from(input.file_stem().unwrap_or_default()).with_extension("png")
}

/// True for file extensions the loaders understand.
pub fn is_supported_image(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| {
            matches!(
                e.to_ascii_lowercase().as_str(),
                "png" | "jpg" | "jpeg" | "bmp"
            )
        })
        .unwrap_or(false)
}
