use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Reduced Penn Treebank tag set. Wh-pronouns fold into `PRP`/`PRP$`/`DT`,
/// wh-adverbs and particles into `RB`, punctuation into `SYM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PosTag {
    NN,
    NNS,
    NNP,
    PRP,
    #[serde(rename = "PRP$")]
    PRPS,
    VB,
    VBD,
    VBG,
    VBN,
    VBP,
    VBZ,
    MD,
    JJ,
    RB,
    IN,
    CC,
    DT,
    TO,
    CD,
    UH,
    SYM,
    OTHER,
}

impl PosTag {
    pub const ALL: [PosTag; 22] = [
        PosTag::NN,
        PosTag::NNS,
        PosTag::NNP,
        PosTag::PRP,
        PosTag::PRPS,
        PosTag::VB,
        PosTag::VBD,
        PosTag::VBG,
        PosTag::VBN,
        PosTag::VBP,
        PosTag::VBZ,
        PosTag::MD,
        PosTag::JJ,
        PosTag::RB,
        PosTag::IN,
        PosTag::CC,
        PosTag::DT,
        PosTag::TO,
        PosTag::CD,
        PosTag::UH,
        PosTag::SYM,
        PosTag::OTHER,
    ];

    pub fn is_verb(self) -> bool {
        matches!(
            self,
            PosTag::VB | PosTag::VBD | PosTag::VBG | PosTag::VBN | PosTag::VBP | PosTag::VBZ
        )
    }

    /// Finite verb forms: past, present third-person and non-third-person.
    pub fn is_finite_verb(self) -> bool {
        matches!(self, PosTag::VBD | PosTag::VBP | PosTag::VBZ)
    }

    pub fn is_noun(self) -> bool {
        matches!(self, PosTag::NN | PosTag::NNS | PosTag::NNP)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::NN => "NN",
            PosTag::NNS => "NNS",
            PosTag::NNP => "NNP",
            PosTag::PRP => "PRP",
            PosTag::PRPS => "PRP$",
            PosTag::VB => "VB",
            PosTag::VBD => "VBD",
            PosTag::VBG => "VBG",
            PosTag::VBN => "VBN",
            PosTag::VBP => "VBP",
            PosTag::VBZ => "VBZ",
            PosTag::MD => "MD",
            PosTag::JJ => "JJ",
            PosTag::RB => "RB",
            PosTag::IN => "IN",
            PosTag::CC => "CC",
            PosTag::DT => "DT",
            PosTag::TO => "TO",
            PosTag::CD => "CD",
            PosTag::UH => "UH",
            PosTag::SYM => "SYM",
            PosTag::OTHER => "OTHER",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTag(pub String);

impl fmt::Display for UnknownTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown tag '{}'", self.0)
    }
}

impl std::error::Error for UnknownTag {}

impl FromStr for PosTag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownTag(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verb_tags_are_exactly_the_vb_family() {
        let verbs: Vec<PosTag> = PosTag::ALL.iter().copied().filter(|t| t.is_verb()).collect();
        assert_eq!(
            verbs,
            vec![PosTag::VB, PosTag::VBD, PosTag::VBG, PosTag::VBN, PosTag::VBP, PosTag::VBZ]
        );
        assert!(!PosTag::MD.is_verb());
    }

    #[test]
    fn string_round_trip() {
        for t in PosTag::ALL {
            assert_eq!(t.as_str().parse::<PosTag>().unwrap(), t);
        }
        assert!("XYZ".parse::<PosTag>().is_err());
    }
}
