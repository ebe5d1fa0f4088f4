//! Invertible mapping from the VAD unit cube into HSL, plus display conversions.
//!
//! Each VAD axis drives exactly one HSL component through an affine,
//! strictly monotone interpolation:
//!
//! * hue walks an arc from `hue_negative` to `hue_positive` in the configured
//!   direction,
//! * saturation spans `[saturation_min, saturation_max]`,
//! * lightness spans `[lightness_min, lightness_max]`.
//!
//! Keeping saturation above zero and lightness strictly inside `(0, 1)` makes
//! every component recoverable, so the map is a bijection onto its image and
//! [`hsl_to_vad`] inverts it in closed form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, GamutError};
use crate::lexicon::{Axis, VadVector};
use crate::numfmt::ser_f64;

/// Slack allowed when reading a color back at the edge of the mapped range.
const GAMUT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorHsl {
    h: f64,
    s: f64,
    l: f64,
}

impl ColorHsl {
    /// `h` in `[0, 360)`, `s` and `l` in `[0, 1]`.
    pub fn new(h: f64, s: f64, l: f64) -> Option<Self> {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        ((0.0..360.0).contains(&h) && unit(s) && unit(l)).then_some(ColorHsl { h, s, l })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn l(&self) -> f64 {
        self.l
    }
}

/// 8-bit sRGB color; serializes as `#rrggbb`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorSrgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl ColorSrgb {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        ColorSrgb { r, g, b }
    }

    pub fn is_achromatic(&self) -> bool {
        self.r == self.g && self.g == self.b
    }

    pub fn to_hex(&self) -> String {
        srgb_to_hex(*self)
    }
}

impl fmt::Display for ColorSrgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }
}

impl FromStr for ColorSrgb {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || format!("invalid color {s:?}: expected #rrggbb");
        let hex = s.strip_prefix('#').ok_or_else(err)?;
        if hex.len() != 6 || !hex.is_ascii() {
            return Err(err());
        }
        let channel = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| err());
        Ok(ColorSrgb::new(channel(0)?, channel(2)?, channel(4)?))
    }
}

impl Serialize for ColorSrgb {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColorSrgb {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Lowercase `#rrggbb`.
pub fn srgb_to_hex(color: ColorSrgb) -> String {
    color.to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HueDirection {
    ShorterArc,
    Increasing,
    Decreasing,
}

impl FromStr for HueDirection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "shorter-arc" => Ok(HueDirection::ShorterArc),
            "increasing" => Ok(HueDirection::Increasing),
            "decreasing" => Ok(HueDirection::Decreasing),
            other => Err(format!(
                "unknown hue direction {other:?}: expected shorter-arc, increasing or decreasing"
            )),
        }
    }
}

/// Which VAD axis drives each HSL component. Serialized as the list
/// `[hue, saturation, lightness]` of axis names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[Axis; 3]", into = "[Axis; 3]")]
pub struct AxisAssignment {
    hue: Axis,
    saturation: Axis,
    lightness: Axis,
}

impl AxisAssignment {
    pub const DEFAULT: AxisAssignment = AxisAssignment {
        hue: Axis::Valence,
        saturation: Axis::Arousal,
        lightness: Axis::Dominance,
    };

    pub fn new(hue: Axis, saturation: Axis, lightness: Axis) -> Result<Self, ConfigError> {
        if hue == saturation || hue == lightness || saturation == lightness {
            return Err(ConfigError::new(
                "axis_assignment",
                format!("[{hue}, {saturation}, {lightness}] is not a permutation of valence, arousal, dominance"),
            ));
        }
        Ok(AxisAssignment {
            hue,
            saturation,
            lightness,
        })
    }

    pub fn hue(&self) -> Axis {
        self.hue
    }

    pub fn saturation(&self) -> Axis {
        self.saturation
    }

    pub fn lightness(&self) -> Axis {
        self.lightness
    }

    /// The HSL component driven by `axis`.
    pub fn component_for(&self, axis: Axis) -> HslComponent {
        if axis == self.hue {
            HslComponent::Hue
        } else if axis == self.saturation {
            HslComponent::Saturation
        } else {
            HslComponent::Lightness
        }
    }
}

impl Default for AxisAssignment {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl TryFrom<[Axis; 3]> for AxisAssignment {
    type Error = ConfigError;

    fn try_from([h, s, l]: [Axis; 3]) -> Result<Self, Self::Error> {
        AxisAssignment::new(h, s, l)
    }
}

impl From<AxisAssignment> for [Axis; 3] {
    fn from(a: AxisAssignment) -> Self {
        [a.hue, a.saturation, a.lightness]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HslComponent {
    Hue,
    Saturation,
    Lightness,
}

/// Raw, unvalidated mapping parameters. Key names double as the config-file
/// and JSON keys.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MappingParams {
    #[serde(serialize_with = "ser_f64")]
    pub hue_negative: f64,
    #[serde(serialize_with = "ser_f64")]
    pub hue_positive: f64,
    pub hue_direction: HueDirection,
    #[serde(serialize_with = "ser_f64")]
    pub saturation_min: f64,
    #[serde(serialize_with = "ser_f64")]
    pub saturation_max: f64,
    #[serde(serialize_with = "ser_f64")]
    pub lightness_min: f64,
    #[serde(serialize_with = "ser_f64")]
    pub lightness_max: f64,
    pub axis_assignment: AxisAssignment,
    pub no_data_color: ColorSrgb,
}

impl Default for MappingParams {
    fn default() -> Self {
        MappingParams {
            hue_negative: 0.0,
            hue_positive: 120.0,
            hue_direction: HueDirection::Increasing,
            saturation_min: 0.05,
            saturation_max: 0.95,
            lightness_min: 0.25,
            lightness_max: 0.75,
            axis_assignment: AxisAssignment::DEFAULT,
            no_data_color: ColorSrgb::new(0xd9, 0xd9, 0xd9),
        }
    }
}

/// Partial parameters: every field optional, unknown keys rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingOverrides {
    pub hue_negative: Option<f64>,
    pub hue_positive: Option<f64>,
    pub hue_direction: Option<HueDirection>,
    pub saturation_min: Option<f64>,
    pub saturation_max: Option<f64>,
    pub lightness_min: Option<f64>,
    pub lightness_max: Option<f64>,
    pub axis_assignment: Option<AxisAssignment>,
    pub no_data_color: Option<ColorSrgb>,
}

impl MappingOverrides {
    /// Parses a flat TOML key-value file.
    pub fn from_toml(src: &str) -> Result<Self, String> {
        toml::from_str(src).map_err(|e| e.message().to_string())
    }

    pub fn apply(&self, base: MappingParams) -> MappingParams {
        MappingParams {
            hue_negative: self.hue_negative.unwrap_or(base.hue_negative),
            hue_positive: self.hue_positive.unwrap_or(base.hue_positive),
            hue_direction: self.hue_direction.unwrap_or(base.hue_direction),
            saturation_min: self.saturation_min.unwrap_or(base.saturation_min),
            saturation_max: self.saturation_max.unwrap_or(base.saturation_max),
            lightness_min: self.lightness_min.unwrap_or(base.lightness_min),
            lightness_max: self.lightness_max.unwrap_or(base.lightness_max),
            axis_assignment: self.axis_assignment.unwrap_or(base.axis_assignment),
            no_data_color: self.no_data_color.unwrap_or(base.no_data_color),
        }
    }

    /// Fields set in `other` win over fields set here.
    pub fn merge(&self, other: &MappingOverrides) -> MappingOverrides {
        MappingOverrides {
            hue_negative: other.hue_negative.or(self.hue_negative),
            hue_positive: other.hue_positive.or(self.hue_positive),
            hue_direction: other.hue_direction.or(self.hue_direction),
            saturation_min: other.saturation_min.or(self.saturation_min),
            saturation_max: other.saturation_max.or(self.saturation_max),
            lightness_min: other.lightness_min.or(self.lightness_min),
            lightness_max: other.lightness_max.or(self.lightness_max),
            axis_assignment: other.axis_assignment.or(self.axis_assignment),
            no_data_color: other.no_data_color.or(self.no_data_color),
        }
    }
}

/// Validated mapping parameters. Only constructible through [`MappingConfig::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MappingConfig {
    params: MappingParams,
    #[serde(skip)]
    hue_arc: f64,
}

impl MappingConfig {
    pub fn new(params: MappingParams) -> Result<Self, ConfigError> {
        let p = &params;
        for (field, hue) in [("hue_negative", p.hue_negative), ("hue_positive", p.hue_positive)] {
            if !(0.0..360.0).contains(&hue) {
                return Err(ConfigError::new(field, format!("{hue} outside [0, 360)")));
            }
        }
        if p.hue_negative == p.hue_positive {
            return Err(ConfigError::new(
                "hue_positive",
                "must differ from hue_negative or valence cannot be recovered",
            ));
        }
        check_range("saturation", p.saturation_min, p.saturation_max)?;
        check_range("lightness", p.lightness_min, p.lightness_max)?;
        if p.saturation_min <= 0.0 {
            return Err(ConfigError::new(
                "saturation_min",
                "must be > 0 or hue cannot be recovered",
            ));
        }
        if p.lightness_min <= 0.0 {
            return Err(ConfigError::new("lightness_min", "must be > 0"));
        }
        if p.lightness_max >= 1.0 {
            return Err(ConfigError::new("lightness_max", "must be < 1"));
        }
        // Every mapped color must stay chromatic after 8-bit rounding, so it can
        // never collide with the achromatic no-data color.
        for (field, l) in [("lightness_min", p.lightness_min), ("lightness_max", p.lightness_max)] {
            let chroma = 255.0 * p.saturation_min * (1.0 - (2.0 * l - 1.0).abs());
            if chroma < 1.0 {
                return Err(ConfigError::new(
                    field,
                    format!("with saturation_min {} the weakest mapped color is gray at 8 bits", p.saturation_min),
                ));
            }
        }
        if !p.no_data_color.is_achromatic() {
            return Err(ConfigError::new(
                "no_data_color",
                format!("{} must be a gray (r = g = b)", p.no_data_color),
            ));
        }
        Ok(MappingConfig {
            params,
            hue_arc: signed_arc(p.hue_negative, p.hue_positive, p.hue_direction),
        })
    }

    pub fn params(&self) -> &MappingParams {
        &self.params
    }

    /// Signed hue travel in degrees from `hue_negative` to `hue_positive`.
    pub fn hue_arc(&self) -> f64 {
        self.hue_arc
    }

    pub fn no_data_color(&self) -> ColorSrgb {
        self.params.no_data_color
    }

    pub fn axis_assignment(&self) -> AxisAssignment {
        self.params.axis_assignment
    }

    pub fn with_overrides(&self, overrides: &MappingOverrides) -> Result<Self, ConfigError> {
        MappingConfig::new(overrides.apply(self.params))
    }

    fn hue_at(&self, t: f64) -> f64 {
        let h = (self.params.hue_negative + t * self.hue_arc).rem_euclid(360.0);
        if h >= 360.0 {
            0.0
        } else {
            h
        }
    }

    /// Inverse of [`Self::hue_at`]; position along the arc in `[0, 1]`.
    fn hue_position(&self, h: f64) -> Result<f64, GamutError> {
        let arc = self.hue_arc.abs();
        let neg = self.params.hue_negative;
        let mut offset = if self.hue_arc > 0.0 {
            (h - neg).rem_euclid(360.0)
        } else {
            (neg - h).rem_euclid(360.0)
        };
        // a hue a hair before the arc start wraps to ~360
        if offset > 360.0 - GAMUT_EPS {
            offset -= 360.0;
        }
        let t = offset / arc;
        if !(-GAMUT_EPS..=1.0 + GAMUT_EPS).contains(&t) {
            let (lo, hi) = if self.hue_arc > 0.0 {
                (neg, self.params.hue_positive)
            } else {
                (self.params.hue_positive, neg)
            };
            return Err(GamutError {
                component: "h",
                value: h,
                min: lo,
                max: hi,
            });
        }
        Ok(t.clamp(0.0, 1.0))
    }
}

impl Default for MappingConfig {
    fn default() -> Self {
        MappingConfig::new(MappingParams::default()).expect("default mapping is valid")
    }
}

impl<'de> Deserialize<'de> for MappingConfig {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        MappingConfig::new(MappingParams::deserialize(deserializer)?)
            .map_err(serde::de::Error::custom)
    }
}

fn check_range(name: &'static str, min: f64, max: f64) -> Result<(), ConfigError> {
    let (min_field, max_field) = match name {
        "saturation" => ("saturation_min", "saturation_max"),
        _ => ("lightness_min", "lightness_max"),
    };
    if !(0.0..=1.0).contains(&min) {
        return Err(ConfigError::new(min_field, format!("{min} outside [0, 1]")));
    }
    if !(0.0..=1.0).contains(&max) {
        return Err(ConfigError::new(max_field, format!("{max} outside [0, 1]")));
    }
    if min >= max {
        return Err(ConfigError::new(
            min_field,
            format!("{min} must be below {max_field} {max}"),
        ));
    }
    Ok(())
}

fn signed_arc(from: f64, to: f64, direction: HueDirection) -> f64 {
    let up = (to - from).rem_euclid(360.0);
    match direction {
        HueDirection::Increasing => up,
        HueDirection::Decreasing => up - 360.0,
        HueDirection::ShorterArc if up <= 180.0 => up,
        HueDirection::ShorterArc => up - 360.0,
    }
}

fn lerp(min: f64, max: f64, t: f64) -> f64 {
    min + t * (max - min)
}

fn unlerp(component: &'static str, value: f64, min: f64, max: f64) -> Result<f64, GamutError> {
    let t = (value - min) / (max - min);
    if !(-GAMUT_EPS..=1.0 + GAMUT_EPS).contains(&t) {
        return Err(GamutError {
            component,
            value,
            min,
            max,
        });
    }
    Ok(t.clamp(0.0, 1.0))
}

/// Forward emotion → color map.
pub fn vad_to_hsl(vad: VadVector, cfg: &MappingConfig) -> ColorHsl {
    let p = cfg.params();
    let axes = p.axis_assignment;
    ColorHsl {
        h: cfg.hue_at(vad.get(axes.hue)),
        s: lerp(p.saturation_min, p.saturation_max, vad.get(axes.saturation)),
        l: lerp(p.lightness_min, p.lightness_max, vad.get(axes.lightness)),
    }
}

/// Exact inverse of [`vad_to_hsl`] on its image.
pub fn hsl_to_vad(color: ColorHsl, cfg: &MappingConfig) -> Result<VadVector, GamutError> {
    let p = cfg.params();
    let axes = p.axis_assignment;
    let hue_t = cfg.hue_position(color.h)?;
    let sat_t = unlerp("s", color.s, p.saturation_min, p.saturation_max)?;
    let light_t = unlerp("l", color.l, p.lightness_min, p.lightness_max)?;

    let mut out = [0.0; 3];
    for (axis, t) in [(axes.hue, hue_t), (axes.saturation, sat_t), (axes.lightness, light_t)] {
        out[axis as usize] = t;
    }
    let [v, a, d] = out;
    Ok(VadVector::new(v, a, d).expect("unit-clamped components"))
}

fn hue_channel(p: f64, q: f64, t: f64) -> f64 {
    let t = t.rem_euclid(1.0);
    if t < 1.0 / 6.0 {
        p + (q - p) * 6.0 * t
    } else if t < 0.5 {
        q
    } else if t < 2.0 / 3.0 {
        p + (q - p) * (2.0 / 3.0 - t) * 6.0
    } else {
        p
    }
}

fn to_byte(x: f64) -> u8 {
    (x.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Hexcone HSL → 8-bit sRGB, rounding half away from zero.
pub fn hsl_to_srgb(color: ColorHsl) -> ColorSrgb {
    let ColorHsl { h, s, l } = color;
    if s == 0.0 {
        let v = to_byte(l);
        return ColorSrgb::new(v, v, v);
    }
    let q = if l < 0.5 { l * (1.0 + s) } else { l + s - l * s };
    let p = 2.0 * l - q;
    let k = h / 360.0;
    ColorSrgb::new(
        to_byte(hue_channel(p, q, k + 1.0 / 3.0)),
        to_byte(hue_channel(p, q, k)),
        to_byte(hue_channel(p, q, k - 1.0 / 3.0)),
    )
}

/// 8-bit sRGB → HSL. Grays get hue 0 and saturation 0.
pub fn srgb_to_hsl(color: ColorSrgb) -> ColorHsl {
    let [r, g, b] = [color.r, color.g, color.b].map(|c| c as f64 / 255.0);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let l = (max + min) / 2.0;
    let delta = max - min;
    if delta == 0.0 {
        return ColorHsl { h: 0.0, s: 0.0, l };
    }
    let s = delta / (1.0 - (2.0 * l - 1.0).abs());
    let h = if max == r {
        60.0 * ((g - b) / delta).rem_euclid(6.0)
    } else if max == g {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    ColorHsl {
        h: if h >= 360.0 { h - 360.0 } else { h },
        s: s.min(1.0),
        l,
    }
}

/// Convenience: emotion straight to display color.
pub fn vad_to_srgb(vad: VadVector, cfg: &MappingConfig) -> ColorSrgb {
    hsl_to_srgb(vad_to_hsl(vad, cfg))
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LegendError {
    #[error("legend grid must be at least 2x2, got {nx}x{ny}")]
    GridTooSmall { nx: usize, ny: usize },
    #[error("fixed value {0} outside [0, 1]")]
    FixedValue(f64),
}

/// A 2D slice through the mapping with one VAD axis held constant.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendSlice {
    pub fixed_axis: Axis,
    pub fixed_value: f64,
    /// Free axis sampled along x (columns).
    pub x_axis: Axis,
    /// Free axis sampled along y (rows).
    pub y_axis: Axis,
    pub nx: usize,
    pub ny: usize,
    /// Row-major, `ny` rows of `nx` cells.
    pub cells: Vec<ColorSrgb>,
}

impl LegendSlice {
    pub fn cell(&self, x: usize, y: usize) -> ColorSrgb {
        self.cells[y * self.nx + x]
    }
}

/// VAD point sampled at grid cell `(x, y)` of a legend slice.
pub fn legend_point(
    fixed_axis: Axis,
    fixed_value: f64,
    x: usize,
    y: usize,
    nx: usize,
    ny: usize,
) -> VadVector {
    let (x_axis, y_axis) = free_axes(fixed_axis);
    let mut c = [0.0; 3];
    c[fixed_axis as usize] = fixed_value;
    c[x_axis as usize] = x as f64 / (nx - 1) as f64;
    c[y_axis as usize] = y as f64 / (ny - 1) as f64;
    let [v, a, d] = c;
    VadVector::from_aggregate(v, a, d)
}

fn free_axes(fixed: Axis) -> (Axis, Axis) {
    let mut free = Axis::ALL.into_iter().filter(|&a| a != fixed);
    (free.next().unwrap(), free.next().unwrap())
}

/// Samples the two free axes on an inclusive uniform `nx × ny` grid over `[0, 1]²`.
pub fn legend_slice(
    fixed_axis: Axis,
    fixed_value: f64,
    nx: usize,
    ny: usize,
    cfg: &MappingConfig,
) -> Result<LegendSlice, LegendError> {
    if nx < 2 || ny < 2 {
        return Err(LegendError::GridTooSmall { nx, ny });
    }
    if !(0.0..=1.0).contains(&fixed_value) {
        return Err(LegendError::FixedValue(fixed_value));
    }
    let (x_axis, y_axis) = free_axes(fixed_axis);
    let cells = (0..ny)
        .flat_map(|y| (0..nx).map(move |x| (x, y)))
        .map(|(x, y)| vad_to_srgb(legend_point(fixed_axis, fixed_value, x, y, nx, ny), cfg))
        .collect();
    Ok(LegendSlice {
        fixed_axis,
        fixed_value,
        x_axis,
        y_axis,
        nx,
        ny,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vad(v: f64, a: f64, d: f64) -> VadVector {
        VadVector::new(v, a, d).unwrap()
    }

    fn assert_hsl(c: ColorHsl, h: f64, s: f64, l: f64) {
        assert!((c.h - h).abs() < 1e-9, "h {} vs {h}", c.h);
        assert!((c.s - s).abs() < 1e-9, "s {} vs {s}", c.s);
        assert!((c.l - l).abs() < 1e-9, "l {} vs {l}", c.l);
    }

    /// Independent chroma-based HSL → RGB.
    fn oracle_hsl_to_rgb(h: f64, s: f64, l: f64) -> (u8, u8, u8) {
        let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
        let hp = h / 60.0;
        let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
        let (r1, g1, b1) = match hp as u32 {
            0 => (c, x, 0.0),
            1 => (x, c, 0.0),
            2 => (0.0, c, x),
            3 => (0.0, x, c),
            4 => (x, 0.0, c),
            _ => (c, 0.0, x),
        };
        let m = l - c / 2.0;
        let f = |v: f64| ((v + m) * 255.0).round() as u8;
        (f(r1), f(g1), f(b1))
    }

    #[test]
    fn forward_examples() {
        let cfg = MappingConfig::default();
        assert_hsl(vad_to_hsl(vad(0.5, 0.5, 0.5), &cfg), 60.0, 0.5, 0.5);
        assert_hsl(vad_to_hsl(vad(1.0, 1.0, 1.0), &cfg), 120.0, 0.95, 0.75);
        assert_hsl(vad_to_hsl(vad(0.0, 0.0, 0.0), &cfg), 0.0, 0.05, 0.25);
    }

    #[test]
    fn inverse_examples() {
        let cfg = MappingConfig::default();
        let back = hsl_to_vad(ColorHsl::new(60.0, 0.5, 0.5).unwrap(), &cfg).unwrap();
        assert!(back.to_array().iter().all(|x| (x - 0.5).abs() < 1e-12));
        let top = hsl_to_vad(ColorHsl::new(120.0, 0.95, 0.75).unwrap(), &cfg).unwrap();
        assert!(top.to_array().iter().all(|x| (x - 1.0).abs() < 1e-12));

        let err = hsl_to_vad(ColorHsl::new(60.0, 0.01, 0.5).unwrap(), &cfg).unwrap_err();
        assert_eq!(err.component, "s");
        let err = hsl_to_vad(ColorHsl::new(200.0, 0.5, 0.5).unwrap(), &cfg).unwrap_err();
        assert_eq!(err.component, "h");
        let err = hsl_to_vad(ColorHsl::new(60.0, 0.5, 0.9).unwrap(), &cfg).unwrap_err();
        assert_eq!(err.component, "l");
    }

    #[test]
    fn srgb_examples() {
        assert_eq!(hsl_to_srgb(ColorHsl::new(0.0, 1.0, 0.5).unwrap()), ColorSrgb::new(255, 0, 0));
        assert_eq!(hsl_to_srgb(ColorHsl::new(240.0, 1.0, 0.5).unwrap()), ColorSrgb::new(0, 0, 255));
        for h in [0.0, 97.0, 359.9] {
            assert_eq!(
                hsl_to_srgb(ColorHsl::new(h, 0.0, 0.5).unwrap()),
                ColorSrgb::new(128, 128, 128)
            );
        }
    }

    #[test]
    fn hex_examples() {
        assert_eq!(srgb_to_hex(ColorSrgb::new(255, 0, 0)), "#ff0000");
        assert_eq!(srgb_to_hex(ColorSrgb::new(0, 0, 0)), "#000000");
        assert_eq!(srgb_to_hex(ColorSrgb::new(171, 205, 239)), "#abcdef");
        assert_eq!("#abcdef".parse::<ColorSrgb>().unwrap(), ColorSrgb::new(171, 205, 239));
        assert!("abcdef".parse::<ColorSrgb>().is_err());
        assert!("#abcde".parse::<ColorSrgb>().is_err());
        assert!("#gg0000".parse::<ColorSrgb>().is_err());
    }

    #[test]
    fn config_validation() {
        let base = MappingParams::default();
        let bad = [
            MappingParams { saturation_min: 0.0, ..base },
            MappingParams { saturation_min: 0.95, ..base },
            MappingParams { saturation_min: 0.96, ..base },
            MappingParams { lightness_min: 0.0, ..base },
            MappingParams { lightness_max: 1.0, ..base },
            MappingParams { lightness_min: 0.8, ..base },
            MappingParams { hue_negative: 360.0, ..base },
            MappingParams { hue_positive: 0.0, ..base },
            MappingParams { hue_negative: -1.0, ..base },
            MappingParams { no_data_color: ColorSrgb::new(1, 2, 3), ..base },
            MappingParams { saturation_min: 0.001, ..base },
        ];
        for p in bad {
            assert!(MappingConfig::new(p).is_err(), "{p:?} accepted");
        }
        assert!(AxisAssignment::new(Axis::Valence, Axis::Valence, Axis::Dominance).is_err());
    }

    #[test]
    fn hue_directions() {
        let base = MappingParams { hue_negative: 300.0, hue_positive: 60.0, ..Default::default() };
        let inc = MappingConfig::new(MappingParams { hue_direction: HueDirection::Increasing, ..base }).unwrap();
        assert_eq!(inc.hue_arc(), 120.0);
        assert_hsl(vad_to_hsl(vad(0.5, 0.0, 0.0), &inc), 0.0, 0.05, 0.25);

        let dec = MappingConfig::new(MappingParams { hue_direction: HueDirection::Decreasing, ..base }).unwrap();
        assert_eq!(dec.hue_arc(), -240.0);
        assert_hsl(vad_to_hsl(vad(0.5, 0.0, 0.0), &dec), 180.0, 0.05, 0.25);

        let short = MappingConfig::new(MappingParams { hue_direction: HueDirection::ShorterArc, ..base }).unwrap();
        assert_eq!(short.hue_arc(), 120.0);

        let rev = MappingConfig::new(MappingParams {
            hue_negative: 0.0,
            hue_positive: 300.0,
            hue_direction: HueDirection::ShorterArc,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(rev.hue_arc(), -60.0);
        for cfg in [inc, dec, short, rev] {
            for v in [0.0, 0.25, 0.999, 1.0] {
                let p = vad(v, 0.3, 0.6);
                let back = hsl_to_vad(vad_to_hsl(p, &cfg), &cfg).unwrap();
                assert!((back.valence() - v).abs() < 1e-9, "{cfg:?} {v}");
            }
        }
    }

    #[test]
    fn permuted_axes() {
        let cfg = MappingConfig::new(MappingParams {
            axis_assignment: AxisAssignment::new(Axis::Dominance, Axis::Valence, Axis::Arousal).unwrap(),
            ..Default::default()
        })
        .unwrap();
        assert_hsl(vad_to_hsl(vad(1.0, 0.0, 0.5), &cfg), 60.0, 0.95, 0.25);
        let back = hsl_to_vad(vad_to_hsl(vad(0.1, 0.2, 0.3), &cfg), &cfg).unwrap();
        assert!((back.valence() - 0.1).abs() < 1e-12);
        assert!((back.arousal() - 0.2).abs() < 1e-12);
        assert!((back.dominance() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn config_file_overrides() {
        let o = MappingOverrides::from_toml(
            "hue_positive = 240.0\naxis_assignment = [\"arousal\", \"valence\", \"dominance\"]\nno_data_color = \"#cccccc\"\n",
        )
        .unwrap();
        let cfg = MappingConfig::default().with_overrides(&o).unwrap();
        assert_eq!(cfg.params().hue_positive, 240.0);
        assert_eq!(cfg.axis_assignment().hue(), Axis::Arousal);
        assert_eq!(cfg.no_data_color(), ColorSrgb::new(0xcc, 0xcc, 0xcc));
        assert!(MappingOverrides::from_toml("hue_postive = 1.0").is_err());
        assert!(MappingOverrides::from_toml("axis_assignment = [\"valence\", \"valence\", \"dominance\"]").is_err());
    }

    #[test]
    fn legend_examples() {
        let cfg = MappingConfig::default();
        let legend = legend_slice(Axis::Dominance, 0.5, 2, 2, &cfg).unwrap();
        assert_eq!(legend.cells.len(), 4);
        assert_eq!((legend.x_axis, legend.y_axis), (Axis::Valence, Axis::Arousal));
        for (x, y) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let expected = vad_to_srgb(vad(x as f64, y as f64, 0.5), &cfg);
            assert_eq!(legend.cell(x, y), expected);
        }
        assert_eq!(legend_slice(Axis::Valence, 0.2, 2, 3, &cfg).unwrap().cells.len(), 6);
        assert!(legend_slice(Axis::Valence, 0.2, 1, 3, &cfg).is_err());
        assert!(legend_slice(Axis::Valence, 1.5, 2, 3, &cfg).is_err());

        for y in 0..5 {
            for x in 0..7 {
                let p = legend_point(Axis::Valence, 1.0, x, y, 7, 5);
                assert_eq!(vad_to_hsl(p, &cfg).h(), cfg.params().hue_positive);
            }
        }
    }

    #[test]
    fn no_data_color_is_outside_the_image() {
        let cfg = MappingConfig::default();
        for v in 0..=10 {
            for a in 0..=10 {
                for d in 0..=10 {
                    let c = vad_to_srgb(vad(v as f64 / 10.0, a as f64 / 10.0, d as f64 / 10.0), &cfg);
                    assert!(!c.is_achromatic(), "{c}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn hsl_to_srgb_matches_chroma_oracle(h in 0.0f64..360.0, s in 0.0f64..=1.0, l in 0.0f64..=1.0) {
            let ours = hsl_to_srgb(ColorHsl::new(h, s, l).unwrap());
            let (r, g, b) = oracle_hsl_to_rgb(h, s, l);
            // the two routes may land on opposite sides of a .5 rounding edge
            prop_assert!((ours.r as i32 - r as i32).abs() <= 1);
            prop_assert!((ours.g as i32 - g as i32).abs() <= 1);
            prop_assert!((ours.b as i32 - b as i32).abs() <= 1);
        }

        #[test]
        fn srgb_hsl_srgb_is_identity(r: u8, g: u8, b: u8) {
            let c = ColorSrgb::new(r, g, b);
            prop_assert_eq!(hsl_to_srgb(srgb_to_hsl(c)), c);
        }
    }
}
