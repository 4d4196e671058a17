//! BFI-10 Likert validation, reverse keying, and Big Five trait computation.
//!
//! Each of the five traits is scored as the mean of two keyed items, one of
//! which is reverse-keyed (reflected as `6 - x` on the 1-5 scale) before
//! averaging. The keying follows the standard ten-item inventory: items
//! BFI_1, BFI_3, BFI_4, BFI_5 and BFI_7 are reversed.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Tolerance for deciding that a value sits on the 0.1 quantization grid.
pub const QUANT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScoreError {
    #[error("score {0} outside the Likert range [1.0, 5.0]")]
    OutOfRange(f64),
    #[error("score {0} is not a multiple of 0.1")]
    NotQuantized(f64),
    #[error("score {0} is not an integer (required for gold data)")]
    NotInteger(f64),
    #[error("keying table is inconsistent")]
    InvalidKeying,
}

/// The five Big Five personality traits, in canonical reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BigFiveTrait {
    Extraversion,
    Agreeableness,
    Conscientiousness,
    Neuroticism,
    Openness,
}

impl BigFiveTrait {
    /// All five traits in canonical reporting order.
    pub const ALL: [BigFiveTrait; 5] = [
        BigFiveTrait::Extraversion,
        BigFiveTrait::Agreeableness,
        BigFiveTrait::Conscientiousness,
        BigFiveTrait::Neuroticism,
        BigFiveTrait::Openness,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BigFiveTrait::Extraversion => "Extraversion",
            BigFiveTrait::Agreeableness => "Agreeableness",
            BigFiveTrait::Conscientiousness => "Conscientiousness",
            BigFiveTrait::Neuroticism => "Neuroticism",
            BigFiveTrait::Openness => "Openness",
        }
    }

    pub fn from_name(name: &str) -> Option<BigFiveTrait> {
        BigFiveTrait::ALL.iter().copied().find(|t| t.name() == name)
    }

    fn index(&self) -> usize {
        BigFiveTrait::ALL.iter().position(|t| t == self).unwrap()
    }
}

impl fmt::Display for BigFiveTrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the ten inventory items, identified by its 1-based number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemId(u8);

impl ItemId {
    /// All ten items in numeric order.
    pub const ALL: [ItemId; 10] = [
        ItemId(1),
        ItemId(2),
        ItemId(3),
        ItemId(4),
        ItemId(5),
        ItemId(6),
        ItemId(7),
        ItemId(8),
        ItemId(9),
        ItemId(10),
    ];

    pub fn new(number: u8) -> Option<ItemId> {
        (1..=10).contains(&number).then_some(ItemId(number))
    }

    pub fn number(&self) -> u8 {
        self.0
    }

    /// The item label as it appears in prompts and responses, e.g. `BFI_3`.
    pub fn label(&self) -> String {
        format!("BFI_{}", self.0)
    }

    pub fn from_label(label: &str) -> Option<ItemId> {
        let number = label.strip_prefix("BFI_")?.parse::<u8>().ok()?;
        ItemId::new(number)
    }

    fn index(&self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BFI_{}", self.0)
    }
}

/// Which of the two keyed items feeds a trait, and whether it is reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyedItem {
    pub item: ItemId,
    pub reversed: bool,
}

/// The fixed mapping from traits to their two keyed items.
///
/// Every item appears in exactly one pair and exactly five items are
/// reversed; `verify()` checks both and is exercised in tests.
#[derive(Debug, Clone, Copy)]
pub struct KeyingTable;

impl KeyingTable {
    /// The two keyed items for a trait, in item-number order.
    pub fn pair(trait_: BigFiveTrait) -> [KeyedItem; 2] {
        let (reversed, plain) = match trait_ {
            BigFiveTrait::Extraversion => (1, 6),
            BigFiveTrait::Agreeableness => (7, 2),
            BigFiveTrait::Conscientiousness => (3, 8),
            BigFiveTrait::Neuroticism => (4, 9),
            BigFiveTrait::Openness => (5, 10),
        };
        let rev = KeyedItem {
            item: ItemId(reversed),
            reversed: true,
        };
        let pl = KeyedItem {
            item: ItemId(plain),
            reversed: false,
        };
        if reversed < plain {
            [rev, pl]
        } else {
            [pl, rev]
        }
    }

    /// Checks that the ten items are used exactly once and five are reversed.
    pub fn verify() -> Result<(), ScoreError> {
        let mut seen = [0u8; 10];
        let mut reversed = 0usize;
        for trait_ in BigFiveTrait::ALL {
            for keyed in KeyingTable::pair(trait_) {
                seen[keyed.item.index()] += 1;
                if keyed.reversed {
                    reversed += 1;
                }
            }
        }
        if seen.iter().any(|&count| count != 1) || reversed != 5 {
            return Err(ScoreError::InvalidKeying);
        }
        Ok(())
    }

    /// Plain-text rendering for audit output: one line per trait.
    pub fn render() -> String {
        let mut out = String::new();
        for trait_ in BigFiveTrait::ALL {
            let pair = KeyingTable::pair(trait_);
            let cells: Vec<String> = pair
                .iter()
                .map(|k| {
                    if k.reversed {
                        format!("{} (reversed)", k.item)
                    } else {
                        k.item.to_string()
                    }
                })
                .collect();
            out.push_str(&format!(
                "{:<17} {} + {}\n",
                trait_.name(),
                cells[0],
                cells[1]
            ));
        }
        out
    }
}

/// Validates a Likert score on the 1-5 scale.
///
/// Accepts values within [1, 5] that sit on the 0.1 grid (within
/// [`QUANT_EPSILON`]) and returns the snapped value; with `integer_only` the
/// snapped value must be a whole number.
pub fn validate_likert(value: f64, integer_only: bool) -> Result<f64, ScoreError> {
    if !value.is_finite() || value < 1.0 - QUANT_EPSILON || value > 5.0 + QUANT_EPSILON {
        return Err(ScoreError::OutOfRange(value));
    }
    let snapped = (value * 10.0).round() / 10.0;
    if (value - snapped).abs() > QUANT_EPSILON {
        return Err(ScoreError::NotQuantized(value));
    }
    if integer_only && snapped.fract() != 0.0 {
        return Err(ScoreError::NotInteger(value));
    }
    Ok(snapped)
}

/// Reflects a Likert score: `6 - x` on the 1-5 scale.
///
/// Scores on the 0.1 grid are snapped back onto it after reflection so that
/// reflecting twice returns the input bit-for-bit; plain f64 subtraction
/// breaks that round trip for grid values such as 1.1.
pub fn reverse_key(score: f64) -> Result<f64, ScoreError> {
    if !score.is_finite() || score < 1.0 - QUANT_EPSILON || score > 5.0 + QUANT_EPSILON {
        return Err(ScoreError::OutOfRange(score));
    }
    let reflected = 6.0 - score;
    let snapped = (reflected * 10.0).round() / 10.0;
    if (reflected - snapped).abs() <= QUANT_EPSILON {
        Ok(snapped)
    } else {
        Ok(reflected)
    }
}

/// The ten item scores of one participant or one model response.
///
/// `integer_only` marks gold questionnaire data, which is whole-numbered;
/// predicted scores are accepted at 0.1 granularity.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemScores {
    values: [f64; 10],
    integer_only: bool,
}

impl ItemScores {
    /// Builds gold item scores: all ten values must be integers in 1..=5.
    pub fn gold(values: [f64; 10]) -> Result<ItemScores, ScoreError> {
        let mut validated = [0.0; 10];
        for (slot, &value) in validated.iter_mut().zip(values.iter()) {
            *slot = validate_likert(value, true)?;
        }
        Ok(ItemScores {
            values: validated,
            integer_only: true,
        })
    }

    /// Builds predicted item scores: 0.1 granularity within [1, 5].
    pub fn predicted(values: [f64; 10]) -> Result<ItemScores, ScoreError> {
        let mut validated = [0.0; 10];
        for (slot, &value) in validated.iter_mut().zip(values.iter()) {
            *slot = validate_likert(value, false)?;
        }
        Ok(ItemScores {
            values: validated,
            integer_only: false,
        })
    }

    pub fn get(&self, item: ItemId) -> f64 {
        self.values[item.index()]
    }

    pub fn is_integer_only(&self) -> bool {
        self.integer_only
    }

    /// Values in item-number order.
    pub fn as_array(&self) -> [f64; 10] {
        self.values
    }
}

/// The five trait scores, each within [1, 5].
#[derive(Debug, Clone, PartialEq)]
pub struct TraitScores {
    values: [f64; 5],
}

impl TraitScores {
    pub fn new(values: [f64; 5]) -> Result<TraitScores, ScoreError> {
        for &value in &values {
            if !value.is_finite() || value < 1.0 - QUANT_EPSILON || value > 5.0 + QUANT_EPSILON {
                return Err(ScoreError::OutOfRange(value));
            }
        }
        Ok(TraitScores { values })
    }

    pub fn get(&self, trait_: BigFiveTrait) -> f64 {
        self.values[trait_.index()]
    }

    /// Values in canonical trait order.
    pub fn as_array(&self) -> [f64; 5] {
        self.values
    }
}

/// Computes the five trait scores from ten item scores.
///
/// Each trait is the mean of its two keyed items after reflecting the
/// reversed member of the pair. Integer inputs yield multiples of 0.5.
pub fn traits_from_items(items: &ItemScores) -> TraitScores {
    let mut values = [0.0; 5];
    for trait_ in BigFiveTrait::ALL {
        let pair = KeyingTable::pair(trait_);
        let sum: f64 = pair
            .iter()
            .map(|keyed| {
                let raw = items.get(keyed.item);
                if keyed.reversed {
                    // Input is constructor-validated, so reflection cannot fail.
                    reverse_key(raw).expect("validated score reflects within range")
                } else {
                    raw
                }
            })
            .sum();
        values[trait_.index()] = sum / 2.0;
    }
    TraitScores { values }
}
