//! Times the full pipeline on ~1 MB of repeated fixture text.

use std::time::Instant;

use affect_mosaic::{analyze, emit_json, parse_lexicon, DuplicatePolicy, Granularity, MappingConfig, Scale};

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");
    let lexicon = parse_lexicon(
        &std::fs::read(format!("{data}/sample-vad.tsv")).unwrap()[..],
        Scale::UNIT,
        DuplicatePolicy::Reject,
    )
    .unwrap();
    let chunk = std::fs::read_to_string(format!("{data}/fixtures/fables.txt")).unwrap();
    let text = chunk.repeat(1_000_000 / chunk.len() + 1);
    for g in [Granularity::Word, Granularity::Sentence, Granularity::Document] {
        let t = Instant::now();
        let json = emit_json(&analyze(&text, g, &lexicon, &MappingConfig::default()));
        println!("{g}: {} bytes in, {} bytes out, {:?}", text.len(), json.len(), t.elapsed());
    }
}
