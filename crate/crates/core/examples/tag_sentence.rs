//! Tags a sentence with the shipped lexicon and context rules.
//!
//! cargo run --example tag_sentence -- "She kept knocking my head against the wall"

use homeguard::assets;
use homeguard::tagger::{context_rule_names, TagLexicon, Tagger};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "My husband come home drunk and hit me every day".into());
    let tagger = Tagger::new(TagLexicon::parse(assets::LEXICON)?);
    let tagged: Vec<String> = tagger.tag_text(&text).iter().map(|t| format!("{}/{}", t.surface, t.tag)).collect();
    println!("{}", tagged.join(" "));
    println!("\n{} lexicon entries; context rules:", tagger.lexicon().len());
    for name in context_rule_names() {
        println!("  - {name}");
    }
    Ok(())
}
