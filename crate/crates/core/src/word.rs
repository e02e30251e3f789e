//! External word syntax: `"e"` for the identity, concatenated digits `1..9`
//! for rank at most 9 (`"121"`), comma-separated integers otherwise.

use crate::bits::SimpleSet;
use crate::error::{Error, Result};

/// Parses a word into 0-based simple indices. The word need not be reduced.
pub fn parse_word(text: &str, rank: usize) -> Result<Vec<usize>> {
    let bad = || Error::MalformedWord(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if s == "e" {
        return Ok(Vec::new());
    }
    let letters: Vec<usize> = if s.contains(',') || rank > 9 {
        s.split(',')
            .map(|tok| tok.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_>>()?
    };
    letters
        .into_iter()
        .map(|i| if (1..=rank).contains(&i) { Ok(i - 1) } else { Err(bad()) })
        .collect()
}

/// Formats a word of 0-based simple indices.
pub fn format_word(letters: &[u8], rank: usize) -> String {
    if letters.is_empty() {
        return "e".to_string();
    }
    let parts = letters.iter().map(|&i| (i as usize + 1).to_string());
    if rank <= 9 {
        parts.collect()
    } else {
        parts.collect::<Vec<_>>().join(",")
    }
}

/// `"∅"` or `"{1,3}"` with 1-based indices.
pub fn format_simple_set(set: SimpleSet) -> String {
    if set.is_empty() {
        return "∅".to_string();
    }
    let items: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_word("e", 2).unwrap(), Vec::<usize>::new());
        assert_eq!(parse_word("121", 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("1,2,1", 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("10,2", 12).unwrap(), vec![9, 1]);
        assert!(parse_word("", 2).is_err());
        assert!(parse_word("13", 2).is_err());
        assert!(parse_word("0", 2).is_err());
        assert!(parse_word("1a", 2).is_err());
        assert!(parse_word("1,,2", 3).is_err());
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_word(&[], 3), "e");
        assert_eq!(format_word(&[0, 1], 3), "12");
        assert_eq!(format_word(&[9, 0], 10), "10,1");
        assert_eq!(format_simple_set(SimpleSet::EMPTY), "∅");
        assert_eq!(format_simple_set(SimpleSet::from_indices([0, 2])), "{1,3}");
    }

    proptest! {
        #[test]
        fn format_then_parse(rank in 1usize..14, raw in proptest::collection::vec(0u8..14, 0..20)) {
            let letters: Vec<u8> = raw.into_iter().map(|i| i % rank as u8).collect();
            let parsed = parse_word(&format_word(&letters, rank), rank).unwrap();
            prop_assert_eq!(parsed, letters.iter().map(|&i| i as usize).collect::<Vec<_>>());
        }
    }
}
