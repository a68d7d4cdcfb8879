//! Default data files, compiled into the binary. Each has an on-disk twin
//! under `assets/` that deployments may edit and load instead.

pub const ABBREVIATIONS: &str = include_str!("../assets/abbreviations.txt");
pub const LEXICON: &str = include_str!("../assets/lexicon.tsv");
pub const LEMMA_EXCEPTIONS: &str = include_str!("../assets/lemma_exceptions.tsv");
pub const VERB_LEMMAS: &str = include_str!("../assets/verb_lemmas.txt");
pub const SYNSETS: &str = include_str!("../assets/synsets.tsv");
pub const ONTOLOGY: &str = include_str!("../assets/ontology.ttl");
pub const KEYWORDS: &str = include_str!("../assets/keywords.txt");
pub const CONFIG: &str = include_str!("../assets/homeguard.conf");
pub const MINI_CORPUS: &str = include_str!("../assets/minicorpus.txt");
pub const TABLE1: &str = include_str!("../assets/table1.tsv");
