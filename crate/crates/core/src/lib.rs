//! Lexicon-based affect scoring of text and its rendering as a mosaic of
//! colored tiles.
//!
//! The pipeline runs [`segmenter`] → [`affect`] → [`colormap`] → [`render`]:
//! words are looked up in a valence/arousal/dominance [`lexicon`], averaged
//! per segment at the chosen [`Granularity`], and each segment's emotion is
//! mapped to a color through an invertible [`MappingConfig`].

pub mod affect;
pub mod colormap;
pub mod error;
pub mod lexicon;
mod numfmt;
pub mod pipeline;
pub mod render;
pub mod segmenter;

pub use affect::{reaggregate, score_all, score_segment, weighted_summary, SegmentScore};
pub use colormap::{
    hsl_to_srgb, hsl_to_vad, legend_slice, srgb_to_hex, srgb_to_hsl, vad_to_hsl, vad_to_srgb,
    AxisAssignment, ColorHsl, ColorSrgb, HueDirection, LegendSlice, MappingConfig,
    MappingOverrides, MappingParams,
};
pub use error::{ConfigError, GamutError, InvariantError, LexiconError, ScaleError};
pub use lexicon::{
    normalize_scale, parse_lexicon, Axis, DuplicatePolicy, Lexicon, LexiconEntry, Scale,
    VadVector,
};
pub use numfmt::round6;
pub use pipeline::analyze;
pub use render::{
    emit_json, emit_legend_svg, emit_svg, layout_mosaic, mosaic_for, AnalysisResult, MosaicOptions,
    MosaicSpec, Tile,
};
pub use segmenter::{
    segments_for, split_paragraphs, split_sentences, tokenize, Granularity, Segment, SourceText,
    TextSpan, Token,
};
