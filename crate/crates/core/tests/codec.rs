mod common;

use proptest::prelude::*;

use bczip::codec::{
    compress_bytes, decode_phrases, decompress, encode_phrase, CodecError, PhraseReader, HEADER_LEN, MAGIC,
};
use bczip::cost::{CostModel, SpaceModel, TimeModel, MAX_COPY_LENGTH};
use bczip::{solve, Phrase};

fn any_phrase() -> impl Strategy<Value = Phrase> {
    prop_oneof![
        any::<u8>().prop_map(Phrase::Literal),
        (1u32..=u32::MAX, 1u32..=MAX_COPY_LENGTH).prop_map(|(distance, length)| Phrase::Copy { distance, length }),
        (1u32..300, 1u32..40).prop_map(|(distance, length)| Phrase::Copy { distance, length }),
    ]
}

fn container(text: &[u8]) -> Vec<u8> {
    let model = CostModel::new(SpaceModel::ByteOriented, TimeModel::log());
    let r = solve(text, model, u64::MAX / 4).unwrap();
    compress_bytes(text, &r.parsing).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn phrases_roundtrip(phrases in prop::collection::vec(any_phrase(), 0..50)) {
        let bytes: Vec<u8> = phrases.iter().flat_map(|p| encode_phrase(p).unwrap()).collect();
        prop_assert_eq!(decode_phrases(&bytes).unwrap(), phrases);
    }

    #[test]
    fn decoder_never_panics(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let _ = decode_phrases(&bytes);
        let mut framed = MAGIC.to_vec();
        framed.extend_from_slice(&[1, 1]);
        framed.extend_from_slice(&bytes);
        let _ = decompress(&framed);
    }

    #[test]
    fn containers_roundtrip(text in prop::collection::vec(prop::sample::select(b"abc\0".to_vec()), 1..400)) {
        prop_assert_eq!(decompress(&container(&text)).unwrap(), text);
    }

    /// Flipping one payload byte either fails with a named error or decodes
    /// to a string of the declared length.
    #[test]
    fn corruption_is_detected(text in prop::collection::vec(prop::sample::select(b"ab".to_vec()), 1..200), pos in any::<usize>(), xor in 1u8..=255) {
        let mut c = container(&text);
        let p = HEADER_LEN + pos % (c.len() - HEADER_LEN);
        c[p] ^= xor;
        if let Ok(out) = decompress(&c) {
            prop_assert_eq!(out.len(), text.len());
        }
    }
}

#[test]
fn header_errors() {
    let c = container(b"hello hello hello");
    assert_eq!(&c[..4], b"BCZ1");
    assert_eq!(u64::from_le_bytes(c[6..14].try_into().unwrap()), 17);

    let mut bad = c.clone();
    bad[0] = b'X';
    assert_eq!(decompress(&bad), Err(CodecError::BadMagic));
    let mut bad = c.clone();
    bad[4] = 2;
    assert_eq!(decompress(&bad), Err(CodecError::BadVersion(2)));
    let mut bad = c.clone();
    bad[5] = 7;
    assert_eq!(decompress(&bad), Err(CodecError::UnknownModel(7)));
    assert!(matches!(decompress(&c[..10]), Err(CodecError::CorruptStream(_))));
    assert!(matches!(decompress(&c[..c.len() - 1]), Err(CodecError::CorruptStream(_))));
    assert_eq!(decompress(b""), Err(CodecError::BadMagic));
    assert!(decompress(&bad).unwrap_err().to_string().starts_with("UnknownModel"));
}

#[test]
fn compress_rejects_wrong_parsings() {
    assert_eq!(compress_bytes(b"", &[]), Err(CodecError::EmptyInput));
    let wrong = [Phrase::Literal(b'a'), Phrase::Literal(b'c')];
    assert_eq!(compress_bytes(b"ab", &wrong), Err(CodecError::ParsingMismatch(1)));
    let short = [Phrase::Literal(b'a')];
    assert!(compress_bytes(b"ab", &short).is_err());
    let early = [Phrase::Copy { distance: 1, length: 2 }];
    assert!(compress_bytes(b"aa", &early).is_err());
}

#[test]
fn overlapping_copies_decode() {
    let text = vec![b'q'; 100_000];
    assert_eq!(decompress(&container(&text)).unwrap(), text);
    let mut r = common::rng(2);
    let text = common::random_string(&mut r, 50_000, 3);
    assert_eq!(decompress(&container(&text)).unwrap(), text);
}

#[test]
fn reader_stops_after_error() {
    let mut r = PhraseReader::new(&[0xff]);
    assert!(matches!(r.next_phrase(), Some(Err(_))));
    assert!(r.next_phrase().is_none());
}
