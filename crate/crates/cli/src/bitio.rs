//! Raw bit packing: little-endian byte order, least significant bit first within a byte.

use qcgr_core::BitVec;

pub fn pack(bits: &BitVec) -> Vec<u8> {
    let mut out = vec![0u8; bits.len().div_ceil(8)];
    for i in bits.iter_ones() {
        out[i / 8] |= 1 << (i % 8);
    }
    out
}

pub fn unpack(bytes: &[u8], len: usize) -> BitVec {
    let ones: Vec<usize> = (0..len.min(bytes.len() * 8)).filter(|&i| bytes[i / 8] >> (i % 8) & 1 == 1).collect();
    BitVec::from_ones(len, &ones)
}

/// Splits a byte stream into messages of `k` bits, zero-padding the last one.
pub fn split_messages(bytes: &[u8], k: usize) -> Vec<BitVec> {
    let total = bytes.len() * 8;
    if total == 0 || k == 0 {
        return vec![BitVec::zeros(k)];
    }
    let count = total.div_ceil(k);
    (0..count)
        .map(|j| {
            let ones: Vec<usize> =
                (j * k..((j + 1) * k).min(total)).filter(|&i| bytes[i / 8] >> (i % 8) & 1 == 1).map(|i| i - j * k).collect();
            BitVec::from_ones(k, &ones)
        })
        .collect()
}

/// Concatenates codewords and packs them.
pub fn join_words(words: &[BitVec]) -> Vec<u8> {
    pack(&BitVec::concat(words))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lsb_first() {
        let b = BitVec::from_bits(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(pack(&b), [0x01, 0x02]);
        assert_eq!(unpack(&[0x01, 0x02], 10), b);
    }

    #[test]
    fn message_splitting() {
        // 12-bit messages from 3 bytes: two messages
        assert_eq!(split_messages(&[0xff, 0x0f, 0x01], 12).len(), 2);
        // 1031-bit message in 129 bytes: the last bit starts a second message
        assert_eq!(split_messages(&[0u8; 129], 1031).len(), 2);
        // short input is zero-padded
        let m = split_messages(&[0x05], 12);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].to_bits(), [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
    }
}
