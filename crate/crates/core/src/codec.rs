//! The `.bcz` container.
//!
//! ```text
//! "BCZ1" | version 0x01 | model 0x01 | original length (u64 LE) | phrases
//! ```
//!
//! Each phrase starts with a header byte `H`: bits 7-6 hold the number of
//! distance bytes minus one, bit 5 flags a length-extension byte and bits
//! 4-0 hold the low five bits of the length. The extension byte, when
//! present, holds `length >> 5`. The distance follows in the fewest
//! little-endian bytes that fit it. A literal is the header `0x01`, a zero
//! distance byte and the raw byte.

use thiserror::Error;

use crate::cost::{distance_bytes, CostError, Phrase};

pub const MAGIC: &[u8; 4] = b"BCZ1";
pub const VERSION: u8 = 0x01;
pub const MODEL_BYTE_ORIENTED: u8 = 0x01;
pub const HEADER_LEN: usize = 14;

/// Largest number of output bytes one payload byte can describe: a 3-byte
/// copy of length 8191.
const MAX_EXPANSION: u64 = 2731;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("BadMagic: not a BCZ1 container")]
    BadMagic,
    #[error("BadVersion: unsupported container version {0}")]
    BadVersion(u8),
    #[error("UnknownModel: unknown space model id {0}")]
    UnknownModel(u8),
    #[error("CorruptStream: {0}")]
    CorruptStream(&'static str),
    #[error("NonCanonical: {0}")]
    NonCanonical(&'static str),
    #[error("ParsingMismatch: parsing does not reproduce the input at byte {0}")]
    ParsingMismatch(usize),
    #[error("EmptyInput: nothing to compress")]
    EmptyInput,
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// Appends the codeword of `phrase` to `out`.
pub fn encode_phrase_into(phrase: &Phrase, out: &mut Vec<u8>) -> Result<(), CodecError> {
    phrase.validate()?;
    match *phrase {
        Phrase::Literal(c) => out.extend_from_slice(&[0x01, 0x00, c]),
        Phrase::Copy { distance, length } => {
            let db = distance_bytes(distance);
            let ext = length > 31;
            let header = (((db - 1) as u8) << 6) | (u8::from(ext) << 5) | (length & 31) as u8;
            out.push(header);
            if ext {
                out.push((length >> 5) as u8);
            }
            out.extend_from_slice(&distance.to_le_bytes()[..db as usize]);
        }
    }
    Ok(())
}

pub fn encode_phrase(phrase: &Phrase) -> Result<Vec<u8>, CodecError> {
    let mut out = Vec::with_capacity(6);
    encode_phrase_into(phrase, &mut out)?;
    Ok(out)
}

/// Checks that `parsing` spells `text`, then serializes it.
pub fn compress_bytes(text: &[u8], parsing: &[Phrase]) -> Result<Vec<u8>, CodecError> {
    if text.is_empty() {
        return Err(CodecError::EmptyInput);
    }
    let mut pos = 0usize;
    for phrase in parsing {
        phrase.validate()?;
        match *phrase {
            Phrase::Literal(c) => {
                if text.get(pos) != Some(&c) {
                    return Err(CodecError::ParsingMismatch(pos));
                }
            }
            Phrase::Copy { distance, length } => {
                let (d, l) = (distance as usize, length as usize);
                if d > pos || pos + l > text.len() {
                    return Err(CodecError::ParsingMismatch(pos));
                }
                if let Some(k) = (0..l).find(|&k| text[pos + k] != text[pos - d + k]) {
                    return Err(CodecError::ParsingMismatch(pos + k));
                }
            }
        }
        pos += phrase.len();
    }
    if pos != text.len() {
        return Err(CodecError::ParsingMismatch(pos));
    }

    let mut out = Vec::with_capacity(HEADER_LEN + 3 * parsing.len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(MODEL_BYTE_ORIENTED);
    out.extend_from_slice(&(text.len() as u64).to_le_bytes());
    for phrase in parsing {
        encode_phrase_into(phrase, &mut out)?;
    }
    Ok(out)
}

/// Reads phrases from a payload without a container header.
pub struct PhraseReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> PhraseReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        PhraseReader { data, pos: 0 }
    }

    fn byte(&mut self) -> Result<u8, CodecError> {
        let b = *self
            .data
            .get(self.pos)
            .ok_or(CodecError::CorruptStream("truncated phrase"))?;
        self.pos += 1;
        Ok(b)
    }

    pub fn next_phrase(&mut self) -> Option<Result<Phrase, CodecError>> {
        (self.pos < self.data.len()).then(|| self.read())
    }

    fn read(&mut self) -> Result<Phrase, CodecError> {
        let h = self.byte()?;
        let db = (h >> 6) as usize + 1;
        let ext = h & 0x20 != 0;
        let mut length = (h & 31) as u32;
        if ext {
            let hi = self.byte()?;
            if hi == 0 {
                return Err(CodecError::NonCanonical("length extension byte is zero"));
            }
            length |= (hi as u32) << 5;
        }
        let mut distance = 0u32;
        for k in 0..db {
            distance |= (self.byte()? as u32) << (8 * k);
        }
        if distance == 0 {
            if db != 1 || ext || length != 1 {
                return Err(CodecError::CorruptStream("zero distance outside a literal"));
            }
            return Ok(Phrase::Literal(self.byte()?));
        }
        if length == 0 {
            return Err(CodecError::CorruptStream("zero copy length"));
        }
        if distance_bytes(distance) as usize != db {
            return Err(CodecError::NonCanonical("distance not in minimal bytes"));
        }
        Ok(Phrase::Copy { distance, length })
    }
}

pub fn decode_phrases(payload: &[u8]) -> Result<Vec<Phrase>, CodecError> {
    let mut reader = PhraseReader::new(payload);
    let mut out = Vec::new();
    while let Some(p) = reader.next_phrase() {
        out.push(p?);
    }
    Ok(out)
}

/// Decodes a container back into the original bytes.
pub fn decompress(container: &[u8]) -> Result<Vec<u8>, CodecError> {
    if container.len() < 4 || &container[..4] != MAGIC {
        return Err(CodecError::BadMagic);
    }
    if container.len() < HEADER_LEN {
        return Err(CodecError::CorruptStream("truncated header"));
    }
    if container[4] != VERSION {
        return Err(CodecError::BadVersion(container[4]));
    }
    if container[5] != MODEL_BYTE_ORIENTED {
        return Err(CodecError::UnknownModel(container[5]));
    }
    let original = u64::from_le_bytes(container[6..14].try_into().unwrap());
    let payload = &container[HEADER_LEN..];
    if original > payload.len() as u64 * MAX_EXPANSION {
        return Err(CodecError::CorruptStream("declared length exceeds what the payload can hold"));
    }
    let original = original as usize;
    let mut out: Vec<u8> = Vec::with_capacity(original);
    let mut reader = PhraseReader::new(payload);
    while let Some(phrase) = reader.next_phrase() {
        match phrase? {
            Phrase::Literal(c) => {
                if out.len() == original {
                    return Err(CodecError::CorruptStream("output overrun"));
                }
                out.push(c);
            }
            Phrase::Copy { distance, length } => {
                let (d, mut l) = (distance as usize, length as usize);
                if d > out.len() {
                    return Err(CodecError::CorruptStream("copy reaches before the start"));
                }
                if out.len() + l > original {
                    return Err(CodecError::CorruptStream("output overrun"));
                }
                // Overlapping copies repeat the last `d` bytes; copy in
                // chunks that never read unwritten output.
                while l > 0 {
                    let start = out.len() - d;
                    let chunk = l.min(d);
                    out.extend_from_within(start..start + chunk);
                    l -= chunk;
                }
            }
        }
    }
    if out.len() != original {
        return Err(CodecError::CorruptStream("stream ends early"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn copy(d: u64, l: u64) -> Phrase {
        Phrase::copy(d, l).unwrap()
    }

    fn container(payload: &[u8], original: u64) -> Vec<u8> {
        let mut c = MAGIC.to_vec();
        c.extend_from_slice(&[VERSION, MODEL_BYTE_ORIENTED]);
        c.extend_from_slice(&original.to_le_bytes());
        c.extend_from_slice(payload);
        c
    }

    #[test]
    fn phrase_layouts() {
        assert_eq!(encode_phrase(&Phrase::Literal(0x61)).unwrap(), [0x01, 0x00, 0x61]);
        assert_eq!(encode_phrase(&copy(1, 3)).unwrap(), [0x03, 0x01]);
        assert_eq!(
            encode_phrase(&copy(70_000, 100)).unwrap(),
            [0xA4, 0x03, 0x70, 0x11, 0x01]
        );
        assert_eq!(encode_phrase(&copy(u32::MAX as u64, 8191)).unwrap().len(), 6);
        assert!(matches!(
            encode_phrase(&Phrase::Copy { distance: 1, length: 8192 }),
            Err(CodecError::Cost(CostError::CapExceeded { .. }))
        ));
    }

    #[test]
    fn compress_aaaa() {
        let out = compress_bytes(b"aaaa", &[Phrase::Literal(b'a'), copy(1, 3)]).unwrap();
        assert_eq!(&out[HEADER_LEN..], [0x01, 0x00, 0x61, 0x03, 0x01]);
        assert_eq!(&out[..4], b"BCZ1");
        assert_eq!(out[6], 4);
        assert_eq!(decompress(&out).unwrap(), b"aaaa");
    }

    #[test]
    fn compress_rejects_bad_parsings() {
        assert_eq!(compress_bytes(b"", &[]), Err(CodecError::EmptyInput));
        assert_eq!(
            compress_bytes(b"ab", &[Phrase::Literal(b'a'), copy(1, 1)]),
            Err(CodecError::ParsingMismatch(1))
        );
        assert_eq!(
            compress_bytes(b"abc", &[Phrase::Literal(b'a')]),
            Err(CodecError::ParsingMismatch(1))
        );
    }

    #[test]
    fn overlapping_copy() {
        let payload = [0x01, 0x00, b'a', 0x01, 0x00, b'b', 0x04, 0x02];
        assert_eq!(decompress(&container(&payload, 6)).unwrap(), b"ababab");
    }

    #[test]
    fn decode_errors() {
        assert_eq!(decompress(b"BCZ2........."), Err(CodecError::BadMagic));
        assert_eq!(decompress(b"BC"), Err(CodecError::BadMagic));
        let mut c = container(&[0x01, 0x00, b'a'], 1);
        c[4] = 2;
        assert_eq!(decompress(&c), Err(CodecError::BadVersion(2)));
        let mut c = container(&[0x01, 0x00, b'a'], 1);
        c[5] = 7;
        assert_eq!(decompress(&c), Err(CodecError::UnknownModel(7)));

        let early = container(&[0x01, 0x00, b'a', 0x01, 0x00, b'b', 0x03, 0x05], 5);
        assert!(matches!(decompress(&early), Err(CodecError::CorruptStream(_))));
        let truncated = container(&[0x01, 0x00], 1);
        assert!(matches!(decompress(&truncated), Err(CodecError::CorruptStream(_))));
        let overrun = container(&[0x01, 0x00, b'a', 0x05, 0x01], 3);
        assert!(matches!(decompress(&overrun), Err(CodecError::CorruptStream(_))));
        let trailing = container(&[0x01, 0x00, b'a', 0x01, 0x00, b'a'], 1);
        assert!(matches!(decompress(&trailing), Err(CodecError::CorruptStream(_))));
        let short = container(&[0x01, 0x00, b'a'], 2);
        assert!(matches!(decompress(&short), Err(CodecError::CorruptStream(_))));
        let zero_len = container(&[0x01, 0x00, b'a', 0x00, 0x01], 2);
        assert!(matches!(decompress(&zero_len), Err(CodecError::CorruptStream(_))));
        let bad_literal = container(&[0x02, 0x00, b'a'], 2);
        assert!(matches!(decompress(&bad_literal), Err(CodecError::CorruptStream(_))));

        let wide = container(&[0x01, 0x00, b'a', 0x41, 0x01, 0x00], 2);
        assert!(matches!(decompress(&wide), Err(CodecError::NonCanonical(_))));
        let zero_ext = container(&[0x01, 0x00, b'a', 0x21, 0x00, 0x01], 2);
        assert!(matches!(decompress(&zero_ext), Err(CodecError::NonCanonical(_))));
        let huge = container(&[0x01, 0x00, b'a'], u64::MAX);
        assert!(matches!(decompress(&huge), Err(CodecError::CorruptStream(_))));
    }

    #[test]
    fn phrase_stream_roundtrip() {
        let phrases = vec![
            Phrase::Literal(0),
            Phrase::Literal(255),
            copy(1, 1),
            copy(255, 31),
            copy(256, 32),
            copy(65_535, 8191),
            copy(65_536, 100),
            copy(16_777_216, 7),
        ];
        let mut bytes = Vec::new();
        for p in &phrases {
            encode_phrase_into(p, &mut bytes).unwrap();
        }
        assert_eq!(decode_phrases(&bytes).unwrap(), phrases);
    }
}
