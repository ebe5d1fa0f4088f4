//! Mosaic layout and the SVG / canonical JSON emitters.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::affect::{weighted_summary, SegmentScore};
use crate::colormap::{vad_to_srgb, ColorSrgb, LegendSlice, MappingConfig};
use crate::error::InvariantError;
use crate::lexicon::VadVector;
use crate::numfmt::{ser_opt_vad, ser_vad};
use crate::segmenter::Granularity;

/// Words kept per segment for tooltips.
pub const TOP_WORDS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopWord {
    pub word: String,
    #[serde(serialize_with = "ser_vad")]
    pub vad: VadVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentResult {
    pub start: usize,
    pub end: usize,
    pub matched: usize,
    pub total: usize,
    #[serde(serialize_with = "ser_opt_vad")]
    pub vad: Option<VadVector>,
    pub color: ColorSrgb,
    pub top_words: Vec<TopWord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(serialize_with = "ser_vad")]
    pub vad: VadVector,
    pub color: ColorSrgb,
}

/// Everything the mosaic displays, in serialization order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisResult {
    /// Length of the source text in characters.
    pub text_length: usize,
    pub granularity: Granularity,
    pub segments: Vec<SegmentResult>,
    pub summary: Option<Summary>,
    pub config: MappingConfig,
}

impl AnalysisResult {
    pub fn from_scores(
        text_length: usize,
        granularity: Granularity,
        scores: &[SegmentScore],
        cfg: &MappingConfig,
    ) -> Self {
        let color_of = |vad: Option<VadVector>| match vad {
            Some(v) => vad_to_srgb(v, cfg),
            None => cfg.no_data_color(),
        };
        let segments = scores
            .iter()
            .map(|s| SegmentResult {
                start: s.segment.span.start,
                end: s.segment.span.end,
                matched: s.matched,
                total: s.total,
                vad: s.vad,
                color: color_of(s.vad),
                top_words: top_words(&s.contributors, TOP_WORDS),
            })
            .collect();
        let summary = weighted_summary(scores).map(|vad| Summary {
            vad,
            color: vad_to_srgb(vad, cfg),
        });
        AnalysisResult {
            text_length,
            granularity,
            segments,
            summary,
            config: *cfg,
        }
    }
}

/// Distinct contributor words ranked by distance from neutral, strongest
/// first, ties broken by the word itself.
pub fn top_words(contributors: &[(String, VadVector)], k: usize) -> Vec<TopWord> {
    let mut words: Vec<&(String, VadVector)> = Vec::with_capacity(contributors.len());
    let mut seen = std::collections::HashSet::new();
    for c in contributors {
        if seen.insert(c.0.as_str()) {
            words.push(c);
        }
    }
    words.sort_by(|a, b| {
        b.1.intensity()
            .total_cmp(&a.1.intensity())
            .then_with(|| a.0.cmp(&b.0))
    });
    words
        .into_iter()
        .take(k)
        .map(|(word, vad)| TopWord {
            word: word.clone(),
            vad: *vad,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub index: usize,
    pub row: usize,
    pub col: usize,
    pub color: ColorSrgb,
    pub no_data: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MosaicSpec {
    pub columns: usize,
    pub rows: usize,
    pub tile_size: u32,
    pub gap: u32,
    pub tiles: Vec<Tile>,
}

impl MosaicSpec {
    pub fn width(&self) -> u64 {
        span_px(self.columns, self.tile_size, self.gap)
    }

    pub fn height(&self) -> u64 {
        span_px(self.rows, self.tile_size, self.gap)
    }

    /// Top-left corner of a tile in px.
    pub fn origin(&self, tile: &Tile) -> (u64, u64) {
        let step = u64::from(self.tile_size) + u64::from(self.gap);
        (tile.col as u64 * step, tile.row as u64 * step)
    }

    /// Colors the tiles from the result's segments, one per tile.
    pub fn paint(&mut self, result: &AnalysisResult) -> Result<(), InvariantError> {
        check_correspondence(self, result)?;
        let no_data = result.config.no_data_color();
        for (tile, seg) in self.tiles.iter_mut().zip(&result.segments) {
            tile.color = seg.color;
            tile.no_data = seg.vad.is_none();
            debug_assert_eq!(tile.no_data, seg.color == no_data);
        }
        Ok(())
    }
}

fn span_px(count: usize, tile: u32, gap: u32) -> u64 {
    match count {
        0 => 0,
        n => n as u64 * u64::from(tile) + (n as u64 - 1) * u64::from(gap),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MosaicOptions {
    /// `None` picks `ceil(sqrt(n))` for a near-square grid.
    pub columns: Option<usize>,
    pub tile_size: u32,
    pub gap: u32,
}

impl Default for MosaicOptions {
    fn default() -> Self {
        MosaicOptions {
            columns: None,
            tile_size: 16,
            gap: 2,
        }
    }
}

pub fn default_columns(n: usize) -> usize {
    let mut c = (n as f64).sqrt().ceil() as usize;
    // guard against float error around perfect squares
    while c * c < n {
        c += 1;
    }
    while c > 1 && (c - 1) * (c - 1) >= n {
        c -= 1;
    }
    c.max(1)
}

/// Row-major grid skeleton for `n` tiles. Tiles start uncolored (black, no data)
/// until [`MosaicSpec::paint`] is applied.
pub fn layout_mosaic(n: usize, columns: usize, tile_size: u32, gap: u32) -> MosaicSpec {
    let columns = columns.max(1);
    let tiles = (0..n)
        .map(|index| Tile {
            index,
            row: index / columns,
            col: index % columns,
            color: ColorSrgb::new(0, 0, 0),
            no_data: true,
        })
        .collect();
    MosaicSpec {
        columns,
        rows: n.div_ceil(columns),
        tile_size,
        gap,
        tiles,
    }
}

/// Lays out and paints the mosaic for a result.
pub fn mosaic_for(result: &AnalysisResult, options: &MosaicOptions) -> MosaicSpec {
    let n = result.segments.len();
    let columns = options.columns.unwrap_or_else(|| default_columns(n));
    let mut mosaic = layout_mosaic(n, columns, options.tile_size, options.gap);
    mosaic
        .paint(result)
        .expect("fresh layout has one tile per segment");
    mosaic
}

fn check_correspondence(mosaic: &MosaicSpec, result: &AnalysisResult) -> Result<(), InvariantError> {
    if mosaic.tiles.len() != result.segments.len() {
        return Err(InvariantError(format!(
            "mosaic has {} tiles for {} segments",
            mosaic.tiles.len(),
            result.segments.len()
        )));
    }
    for (i, tile) in mosaic.tiles.iter().enumerate() {
        if tile.index != i || tile.row * mosaic.columns + tile.col != i {
            return Err(InvariantError(format!(
                "tile {i} sits at index {} / ({}, {})",
                tile.index, tile.row, tile.col
            )));
        }
    }
    Ok(())
}

/// Standalone SVG of the mosaic; byte-deterministic.
pub fn emit_svg(mosaic: &MosaicSpec, result: &AnalysisResult) -> Result<String, InvariantError> {
    check_correspondence(mosaic, result)?;
    let (w, h) = (mosaic.width(), mosaic.height());
    let mut out = String::with_capacity(128 + 120 * mosaic.tiles.len());
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" data-granularity="{}">"#,
        result.granularity
    )
    .unwrap();
    for (tile, seg) in mosaic.tiles.iter().zip(&result.segments) {
        if tile.color != seg.color {
            return Err(InvariantError(format!(
                "tile {} painted {} but segment color is {}",
                tile.index, tile.color, seg.color
            )));
        }
        let (x, y) = mosaic.origin(tile);
        let class = if tile.no_data { r#" class="no-data""# } else { "" };
        writeln!(
            out,
            r#"<rect x="{x}" y="{y}" width="{s}" height="{s}" fill="{fill}"{class} data-index="{i}" data-start="{start}" data-end="{end}"/>"#,
            s = mosaic.tile_size,
            fill = tile.color,
            i = tile.index,
            start = seg.start,
            end = seg.end,
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Canonical compact JSON: fixed key order, floats rounded to 6 decimals.
pub fn emit_json(result: &AnalysisResult) -> String {
    serde_json::to_string(result).expect("analysis result is always serializable")
}

/// Legend grid as SVG, one rect per cell, row 0 at the top.
pub fn emit_legend_svg(legend: &LegendSlice, tile_size: u32, gap: u32) -> String {
    let w = span_px(legend.nx, tile_size, gap);
    let h = span_px(legend.ny, tile_size, gap);
    let step = u64::from(tile_size) + u64::from(gap);
    let mut out = String::with_capacity(160 + 110 * legend.cells.len());
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" data-fixed-axis="{}" data-fixed-value="{}" data-x-axis="{}" data-y-axis="{}">"#,
        legend.fixed_axis,
        crate::numfmt::round6(legend.fixed_value),
        legend.x_axis,
        legend.y_axis,
    )
    .unwrap();
    for y in 0..legend.ny {
        for x in 0..legend.nx {
            writeln!(
                out,
                r#"<rect class="cell" x="{}" y="{}" width="{tile_size}" height="{tile_size}" fill="{}" data-x="{x}" data-y="{y}"/>"#,
                x as u64 * step,
                y as u64 * step,
                legend.cell(x, y),
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}
