mod common;

use std::path::PathBuf;

use affect_mosaic::{
    analyze, emit_json, emit_svg, mosaic_for, split_sentences, AnalysisResult, Granularity,
    MappingConfig, MosaicOptions,
};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against a stored snapshot; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()));
    assert!(expected == actual, "{name} differs from snapshot");
}

fn render(text: &str, g: Granularity) -> (AnalysisResult, String, String) {
    let lexicon = common::sample_lexicon();
    let result = analyze(text, g, &lexicon, &MappingConfig::default());
    let svg = emit_svg(&mosaic_for(&result, &MosaicOptions::default()), &result).unwrap();
    let json = emit_json(&result);
    (result, json, svg)
}

#[test]
fn two_sentence_snapshot() {
    let (result, json, svg) = render("What a happy day. Nothing else.", Granularity::Sentence);
    assert_eq!(result.segments.len(), 2);
    assert_eq!(svg.matches("<rect").count(), 2);
    assert_eq!(result.segments[1].color.to_string(), "#d9d9d9");
    assert_golden("two_sentences.json", &format!("{json}\n"));
    assert_golden("two_sentences.svg", &svg);
}

#[test]
fn walkthrough_snapshot() {
    let text = std::fs::read_to_string(common::data_dir().join("fixtures/fables.txt")).unwrap();
    let (result, json, svg) = render(&text, Granularity::Sentence);
    assert_eq!(result.segments.len(), split_sentences(&text).len());
    assert_golden("fables_sentence.json", &format!("{json}\n"));
    assert_golden("fables_sentence.svg", &svg);

    let (_, json, svg) = render(&text, Granularity::Paragraph);
    assert_golden("fables_paragraph.json", &format!("{json}\n"));
    assert_golden("fables_paragraph.svg", &svg);
}

#[test]
fn empty_text_result() {
    let (result, json, svg) = render("", Granularity::Sentence);
    assert!(result.segments.is_empty());
    assert!(json.contains(r#""segments":[]"#), "{json}");
    assert!(json.contains(r#""summary":null"#), "{json}");
    assert!(!svg.contains("<rect"));
}

#[test]
fn json_key_order_and_round_trip() {
    let text = std::fs::read_to_string(common::data_dir().join("fixtures/mixed.txt")).unwrap();
    let (result, json, _) = render(&text, Granularity::Sentence);

    let top = ["\"text_length\"", "\"granularity\"", "\"segments\"", "\"summary\"", "\"config\""];
    let positions: Vec<usize> = top.iter().map(|k| json.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
    let seg_keys = ["\"start\"", "\"end\"", "\"matched\"", "\"total\"", "\"vad\"", "\"color\"", "\"top_words\""];
    let first_seg = &json[json.find("\"segments\"").unwrap()..];
    let positions: Vec<usize> = seg_keys.iter().map(|k| first_seg.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");

    let parsed: AnalysisResult = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed.segments.len(), result.segments.len());
    assert_eq!(parsed.granularity, result.granularity);
    assert_eq!(parsed.config, result.config);
    for (a, b) in parsed.segments.iter().zip(&result.segments) {
        assert_eq!((a.start, a.end, a.matched, a.total), (b.start, b.end, b.matched, b.total));
        assert_eq!(a.color, b.color);
        match (a.vad, b.vad) {
            (Some(x), Some(y)) => assert!(common::max_abs_diff(x.to_array(), y.to_array()) <= 1e-6),
            (None, None) => {}
            other => panic!("{other:?}"),
        }
        assert_eq!(a.top_words.len(), b.top_words.len());
    }
    let (x, y) = (parsed.summary.unwrap().vad, result.summary.unwrap().vad);
    assert!(common::max_abs_diff(x.to_array(), y.to_array()) <= 1e-6);
}

#[test]
fn no_data_styling() {
    let text = std::fs::read_to_string(common::data_dir().join("fixtures/mixed.txt")).unwrap();
    let (result, _, svg) = render(&text, Granularity::Sentence);
    let no_data = result.config.no_data_color();
    assert!(result.segments.iter().any(|s| s.vad.is_none()));
    for (i, seg) in result.segments.iter().enumerate() {
        assert_eq!(seg.vad.is_none(), seg.color == no_data, "segment {i}");
        let rect = svg.lines().find(|l| l.contains(&format!("data-index=\"{i}\""))).unwrap();
        assert!(rect.contains(&format!("fill=\"{}\"", seg.color)));
        assert!(rect.contains(&format!("data-start=\"{}\" data-end=\"{}\"", seg.start, seg.end)));
    }
}

#[test]
fn svg_geometry_is_closed() {
    let text = std::fs::read_to_string(common::data_dir().join("fixtures/fables.txt")).unwrap();
    let lexicon = common::sample_lexicon();
    let result = analyze(&text, Granularity::Word, &lexicon, &MappingConfig::default());
    for options in [
        MosaicOptions::default(),
        MosaicOptions { columns: Some(7), tile_size: 10, gap: 0 },
        MosaicOptions { columns: Some(1000), tile_size: 3, gap: 5 },
    ] {
        let mosaic = mosaic_for(&result, &options);
        let (w, h) = (mosaic.width(), mosaic.height());
        for tile in &mosaic.tiles {
            let (x, y) = mosaic.origin(tile);
            assert!(x + u64::from(mosaic.tile_size) <= w && y + u64::from(mosaic.tile_size) <= h);
        }
        let indices: Vec<usize> = mosaic.tiles.iter().map(|t| t.index).collect();
        assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let svg = emit_svg(&mosaic, &result).unwrap();
        assert_eq!(svg, emit_svg(&mosaic, &result).unwrap());
    }
}
