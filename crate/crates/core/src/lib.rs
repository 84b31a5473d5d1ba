//! Salient object detection from color micro-textures.
//!
//! The detector codes local ternary patterns (LTP) on the nine opposing
//! channel pairs of a color space, summarizes them as requantized histograms
//! over SLICO superpixels, and collapses those descriptors to one dimension
//! with FastMap. Maps from RGB, HSL, LUV and CMY are fused the same way into
//! the final saliency map. [`metrics`] and [`batch`] provide the usual
//! benchmark measures (MAE, precision/recall, `F_β`) over image folders.
//!
//! ```no_run
//! use ltp_saliency::{detect, load_image, save_saliency, SaliencyConfig};
//!
//! let img = load_image("bird.jpg")?;
//! let detection = detect(&img, &SaliencyConfig::default())?;
//! save_saliency(&detection.saliency, "bird.png")?;
//! # Ok::<(), ltp_saliency::Error>(())
//! ```

pub mod batch;
pub mod colorspace;
pub mod error;
pub mod fastmap;
pub mod features;
pub mod imageio;
pub mod ltp;
pub mod metrics;
pub mod pipeline;
pub mod slico;
pub mod synthetic;

pub use colorspace::{convert, enumerate_pairs, ChannelPair, ColorImage, ColorSpace};
pub use error::{Error, Result};
pub use fastmap::{embed, Embedding, EmbeddingProblem};
pub use features::{build_feature_field, FeatureField};
pub use imageio::{load_ground_truth, load_image, save_saliency, GroundTruth, RasterU8};
pub use ltp::{code_pair, CodeMap, NeighborhoodSpec};
pub use metrics::{best_fbeta, f_beta, mae, EvalReport};
pub use pipeline::{detect, Detection, SaliencyConfig, SaliencyMap};
pub use slico::{segment, SuperpixelLabeling};
