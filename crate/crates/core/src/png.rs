//! Minimal PNG codec for 8-bit RGB images.
//!
//! The encoder always writes the same bytes for the same pixels: filter type
//! None on every scanline and a single fixed-Huffman deflate block with a
//! greedy hash-chain matcher. The decoder is a full reader for non-interlaced
//! 8-bit RGB files: all five scanline filters and all three deflate block
//! types, with CRC-32 and Adler-32 verification.

use crate::raster::Image;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PngError {
    #[error("not a PNG stream")]
    NotPng,
    #[error("unexpected end of PNG stream")]
    Truncated,
    #[error("crc mismatch in {chunk} chunk")]
    BadCrc { chunk: String },
    #[error("unsupported PNG: {reason}")]
    Unsupported { reason: String },
    #[error("invalid zlib stream: {reason}")]
    BadZlib { reason: String },
    #[error("invalid deflate stream: {reason}")]
    BadDeflate { reason: String },
    #[error("adler32 checksum mismatch")]
    BadAdler,
    #[error("unknown scanline filter {0}")]
    BadFilter(u8),
    #[error("pixel data size mismatch: expected {expected} bytes, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
}

const SIGNATURE: [u8; 8] = [0x89, b'P', b'N', b'G', 0x0d, 0x0a, 0x1a, 0x0a];

// ---------------------------------------------------------------------------
// Checksums
// ---------------------------------------------------------------------------

const CRC_TABLE: [u32; 256] = {
    let mut table = [0u32; 256];
    let mut n = 0;
    while n < 256 {
        let mut c = n as u32;
        let mut k = 0;
        while k < 8 {
            c = if c & 1 == 1 { 0xedb8_8320 ^ (c >> 1) } else { c >> 1 };
            k += 1;
        }
        table[n] = c;
        n += 1;
    }
    table
};

fn crc32(data: &[u8]) -> u32 {
    let mut c = 0xffff_ffffu32;
    for &b in data {
        c = CRC_TABLE[((c ^ b as u32) & 0xff) as usize] ^ (c >> 8);
    }
    c ^ 0xffff_ffff
}

fn adler32(data: &[u8]) -> u32 {
    const MOD: u32 = 65521;
    let (mut a, mut b) = (1u32, 0u32);
    for chunk in data.chunks(5552) {
        for &byte in chunk {
            a += byte as u32;
            b += a;
        }
        a %= MOD;
        b %= MOD;
    }
    (b << 16) | a
}

// ---------------------------------------------------------------------------
// Deflate (compression): greedy LZ77 + fixed Huffman codes
// ---------------------------------------------------------------------------

const LENGTH_BASE: [u16; 29] = [
    3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15, 17, 19, 23, 27, 31, 35, 43, 51, 59, 67, 83, 99, 115,
    131, 163, 195, 227, 258,
];
const LENGTH_EXTRA: [u8; 29] = [
    0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0,
];
const DIST_BASE: [u16; 30] = [
    1, 2, 3, 4, 5, 7, 9, 13, 17, 25, 33, 49, 65, 97, 129, 193, 257, 385, 513, 769, 1025, 1537,
    2049, 3073, 4097, 6145, 8193, 12289, 16385, 24577,
];
const DIST_EXTRA: [u8; 30] = [
    0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12,
    13, 13,
];

struct BitWriter {
    out: Vec<u8>,
    buf: u64,
    count: u32,
}

impl BitWriter {
    fn new() -> Self {
        BitWriter {
            out: Vec::new(),
            buf: 0,
            count: 0,
        }
    }

    /// Writes `n` bits LSB-first (deflate's order for extra bits).
    fn write_bits(&mut self, bits: u32, n: u32) {
        self.buf |= (bits as u64) << self.count;
        self.count += n;
        while self.count >= 8 {
            self.out.push((self.buf & 0xff) as u8);
            self.buf >>= 8;
            self.count -= 8;
        }
    }

    /// Writes a Huffman code, whose bits go on the wire MSB-first.
    fn write_code(&mut self, code: u32, n: u32) {
        let mut rev = 0u32;
        for i in 0..n {
            rev |= ((code >> i) & 1) << (n - 1 - i);
        }
        self.write_bits(rev, n);
    }

    fn finish(mut self) -> Vec<u8> {
        if self.count > 0 {
            self.out.push((self.buf & 0xff) as u8);
        }
        self.out
    }
}

fn write_fixed_literal(w: &mut BitWriter, lit: u16) {
    match lit {
        0..=143 => w.write_code(0x30 + lit as u32, 8),
        144..=255 => w.write_code(0x190 + (lit as u32 - 144), 9),
        256..=279 => w.write_code(lit as u32 - 256, 7),
        _ => w.write_code(0xc0 + (lit as u32 - 280), 8),
    }
}

fn write_length(w: &mut BitWriter, len: usize) {
    let idx = LENGTH_BASE.partition_point(|&b| b as usize <= len) - 1;
    write_fixed_literal(w, 257 + idx as u16);
    let extra = LENGTH_EXTRA[idx] as u32;
    if extra > 0 {
        w.write_bits((len - LENGTH_BASE[idx] as usize) as u32, extra);
    }
}

fn write_distance(w: &mut BitWriter, dist: usize) {
    let idx = DIST_BASE.partition_point(|&b| b as usize <= dist) - 1;
    w.write_code(idx as u32, 5);
    let extra = DIST_EXTRA[idx] as u32;
    if extra > 0 {
        w.write_bits((dist - DIST_BASE[idx] as usize) as u32, extra);
    }
}

const MIN_MATCH: usize = 3;
const MAX_MATCH: usize = 258;
const WINDOW: usize = 32768;
const HASH_BITS: u32 = 15;
const MAX_CHAIN: usize = 64;

fn hash3(data: &[u8], i: usize) -> usize {
    let h = (data[i] as u32) << 10 ^ (data[i + 1] as u32) << 5 ^ data[i + 2] as u32;
    (h & ((1 << HASH_BITS) - 1)) as usize
}

/// One final deflate block with fixed Huffman codes.
fn deflate_fixed(data: &[u8]) -> Vec<u8> {
    let mut w = BitWriter::new();
    w.write_bits(1, 1); // BFINAL
    w.write_bits(1, 2); // fixed Huffman

    let mut head = vec![usize::MAX; 1 << HASH_BITS];
    let mut prev = vec![usize::MAX; data.len()];
    let mut i = 0;
    while i < data.len() {
        let mut best_len = 0usize;
        let mut best_dist = 0usize;
        if i + MIN_MATCH <= data.len() {
            let mut candidate = head[hash3(data, i)];
            let mut chain = 0;
            while candidate != usize::MAX && i - candidate <= WINDOW && chain < MAX_CHAIN {
                let limit = MAX_MATCH.min(data.len() - i);
                let mut len = 0;
                while len < limit && data[candidate + len] == data[i + len] {
                    len += 1;
                }
                if len > best_len {
                    best_len = len;
                    best_dist = i - candidate;
                    if len == MAX_MATCH {
                        break;
                    }
                }
                candidate = prev[candidate];
                chain += 1;
            }
        }
        if best_len >= MIN_MATCH {
            write_length(&mut w, best_len);
            write_distance(&mut w, best_dist);
            let end = i + best_len;
            while i < end {
                if i + MIN_MATCH <= data.len() {
                    let h = hash3(data, i);
                    prev[i] = head[h];
                    head[h] = i;
                }
                i += 1;
            }
        } else {
            write_fixed_literal(&mut w, data[i] as u16);
            if i + MIN_MATCH <= data.len() {
                let h = hash3(data, i);
                prev[i] = head[h];
                head[h] = i;
            }
            i += 1;
        }
    }
    write_fixed_literal(&mut w, 256); // end of block
    w.finish()
}

fn zlib_compress(data: &[u8]) -> Vec<u8> {
    let mut out = vec![0x78, 0x01];
    out.extend_from_slice(&deflate_fixed(data));
    out.extend_from_slice(&adler32(data).to_be_bytes());
    out
}

// ---------------------------------------------------------------------------
// Inflate (decompression): stored, fixed, and dynamic blocks
// ---------------------------------------------------------------------------

struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
    buf: u64,
    count: u32,
}

impl<'a> BitReader<'a> {
    fn new(data: &'a [u8]) -> Self {
        BitReader {
            data,
            pos: 0,
            buf: 0,
            count: 0,
        }
    }

    fn read_bits(&mut self, n: u32) -> Result<u32, PngError> {
        while self.count < n {
            let byte = *self.data.get(self.pos).ok_or(PngError::Truncated)?;
            self.buf |= (byte as u64) << self.count;
            self.count += 8;
            self.pos += 1;
        }
        let v = (self.buf & ((1u64 << n) - 1)) as u32;
        self.buf >>= n;
        self.count -= n;
        Ok(v)
    }

    fn align_to_byte(&mut self) {
        self.buf = 0;
        self.count = 0;
    }
}

/// Canonical Huffman decoder: symbol counts per code length plus the symbols
/// sorted by (length, symbol).
struct Huffman {
    counts: [u16; 16],
    symbols: Vec<u16>,
}

impl Huffman {
    fn build(lengths: &[u8]) -> Result<Huffman, PngError> {
        let mut counts = [0u16; 16];
        for &l in lengths {
            if l > 15 {
                return Err(PngError::BadDeflate {
                    reason: "code length above 15".into(),
                });
            }
            counts[l as usize] += 1;
        }
        counts[0] = 0;
        let mut offsets = [0u16; 16];
        for l in 1..16 {
            offsets[l] = offsets[l - 1] + counts[l - 1];
        }
        let mut symbols = vec![0u16; lengths.iter().filter(|&&l| l > 0).count()];
        for (sym, &l) in lengths.iter().enumerate() {
            if l > 0 {
                symbols[offsets[l as usize] as usize] = sym as u16;
                offsets[l as usize] += 1;
            }
        }
        Ok(Huffman { counts, symbols })
    }

    fn decode(&self, r: &mut BitReader) -> Result<u16, PngError> {
        let mut code = 0i32;
        let mut first = 0i32;
        let mut index = 0i32;
        for len in 1..16 {
            code |= r.read_bits(1)? as i32;
            let count = self.counts[len] as i32;
            if code - first < count {
                return Ok(self.symbols[(index + code - first) as usize]);
            }
            index += count;
            first = (first + count) << 1;
            code <<= 1;
        }
        Err(PngError::BadDeflate {
            reason: "invalid Huffman code".into(),
        })
    }
}

fn fixed_literal_lengths() -> Vec<u8> {
    let mut lengths = vec![8u8; 288];
    lengths[144..256].fill(9);
    lengths[256..280].fill(7);
    lengths
}

fn inflate(data: &[u8]) -> Result<Vec<u8>, PngError> {
    let mut r = BitReader::new(data);
    let mut out = Vec::new();
    loop {
        let bfinal = r.read_bits(1)?;
        let btype = r.read_bits(2)?;
        match btype {
            0 => {
                r.align_to_byte();
                if r.pos + 4 > r.data.len() {
                    return Err(PngError::Truncated);
                }
                let len = u16::from_le_bytes([r.data[r.pos], r.data[r.pos + 1]]) as usize;
                let nlen = u16::from_le_bytes([r.data[r.pos + 2], r.data[r.pos + 3]]) as usize;
                if len ^ nlen != 0xffff {
                    return Err(PngError::BadDeflate {
                        reason: "stored block length check failed".into(),
                    });
                }
                r.pos += 4;
                if r.pos + len > r.data.len() {
                    return Err(PngError::Truncated);
                }
                out.extend_from_slice(&r.data[r.pos..r.pos + len]);
                r.pos += len;
            }
            1 => {
                let lit = Huffman::build(&fixed_literal_lengths())?;
                let dist = Huffman::build(&[5u8; 30])?;
                inflate_block(&mut r, &lit, &dist, &mut out)?;
            }
            2 => {
                let (lit, dist) = read_dynamic_tables(&mut r)?;
                inflate_block(&mut r, &lit, &dist, &mut out)?;
            }
            _ => {
                return Err(PngError::BadDeflate {
                    reason: "reserved block type".into(),
                })
            }
        }
        if bfinal == 1 {
            break;
        }
    }
    Ok(out)
}

fn read_dynamic_tables(r: &mut BitReader) -> Result<(Huffman, Huffman), PngError> {
    const CL_ORDER: [usize; 19] = [
        16, 17, 18, 0, 8, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13, 2, 14, 1, 15,
    ];
    let hlit = r.read_bits(5)? as usize + 257;
    let hdist = r.read_bits(5)? as usize + 1;
    let hclen = r.read_bits(4)? as usize + 4;
    let mut cl_lengths = [0u8; 19];
    for &pos in CL_ORDER.iter().take(hclen) {
        cl_lengths[pos] = r.read_bits(3)? as u8;
    }
    let cl = Huffman::build(&cl_lengths)?;
    let mut lengths = Vec::with_capacity(hlit + hdist);
    while lengths.len() < hlit + hdist {
        let sym = cl.decode(r)?;
        match sym {
            0..=15 => lengths.push(sym as u8),
            16 => {
                let last = *lengths.last().ok_or(PngError::BadDeflate {
                    reason: "repeat with no previous length".into(),
                })?;
                let n = r.read_bits(2)? + 3;
                lengths.extend(std::iter::repeat_n(last, n as usize));
            }
            17 => {
                let n = r.read_bits(3)? + 3;
                lengths.extend(std::iter::repeat_n(0u8, n as usize));
            }
            18 => {
                let n = r.read_bits(7)? + 11;
                lengths.extend(std::iter::repeat_n(0u8, n as usize));
            }
            _ => {
                return Err(PngError::BadDeflate {
                    reason: "invalid code-length symbol".into(),
                })
            }
        }
    }
    if lengths.len() != hlit + hdist {
        return Err(PngError::BadDeflate {
            reason: "code length overrun".into(),
        });
    }
    let lit = Huffman::build(&lengths[..hlit])?;
    let dist = Huffman::build(&lengths[hlit..])?;
    Ok((lit, dist))
}

fn inflate_block(
    r: &mut BitReader,
    lit: &Huffman,
    dist: &Huffman,
    out: &mut Vec<u8>,
) -> Result<(), PngError> {
    loop {
        let sym = lit.decode(r)?;
        match sym {
            0..=255 => out.push(sym as u8),
            256 => return Ok(()),
            257..=285 => {
                let idx = sym as usize - 257;
                let len =
                    LENGTH_BASE[idx] as usize + r.read_bits(LENGTH_EXTRA[idx] as u32)? as usize;
                let dsym = dist.decode(r)? as usize;
                if dsym >= 30 {
                    return Err(PngError::BadDeflate {
                        reason: "invalid distance code".into(),
                    });
                }
                let d =
                    DIST_BASE[dsym] as usize + r.read_bits(DIST_EXTRA[dsym] as u32)? as usize;
                if d > out.len() {
                    return Err(PngError::BadDeflate {
                        reason: "distance beyond output".into(),
                    });
                }
                let start = out.len() - d;
                for k in 0..len {
                    let b = out[start + k];
                    out.push(b);
                }
            }
            _ => {
                return Err(PngError::BadDeflate {
                    reason: "invalid literal/length symbol".into(),
                })
            }
        }
    }
}

fn zlib_decompress(data: &[u8]) -> Result<Vec<u8>, PngError> {
    if data.len() < 6 {
        return Err(PngError::Truncated);
    }
    let cmf = data[0];
    let flg = data[1];
    if cmf & 0x0f != 8 {
        return Err(PngError::BadZlib {
            reason: "compression method is not deflate".into(),
        });
    }
    if (cmf as u16 * 256 + flg as u16) % 31 != 0 {
        return Err(PngError::BadZlib {
            reason: "header check failed".into(),
        });
    }
    if flg & 0x20 != 0 {
        return Err(PngError::BadZlib {
            reason: "preset dictionaries are not supported".into(),
        });
    }
    let body = &data[2..data.len() - 4];
    let out = inflate(body)?;
    let stored = u32::from_be_bytes(data[data.len() - 4..].try_into().unwrap());
    if adler32(&out) != stored {
        return Err(PngError::BadAdler);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// PNG container
// ---------------------------------------------------------------------------

fn push_chunk(out: &mut Vec<u8>, kind: &[u8; 4], data: &[u8]) {
    out.extend_from_slice(&(data.len() as u32).to_be_bytes());
    let start = out.len();
    out.extend_from_slice(kind);
    out.extend_from_slice(data);
    let crc = crc32(&out[start..]);
    out.extend_from_slice(&crc.to_be_bytes());
}

/// Encodes an image as an 8-bit RGB PNG. Deterministic: fixed filter choice
/// and compressor settings.
pub fn encode_png(img: &Image) -> Vec<u8> {
    let (w, h) = (img.width(), img.height());
    let mut ihdr = Vec::with_capacity(13);
    ihdr.extend_from_slice(&w.to_be_bytes());
    ihdr.extend_from_slice(&h.to_be_bytes());
    ihdr.extend_from_slice(&[8, 2, 0, 0, 0]); // depth 8, RGB, deflate, adaptive, no interlace

    let stride = w as usize * 3;
    let mut raw = Vec::with_capacity(h as usize * (stride + 1));
    for row in img.pixels().chunks_exact(stride.max(1)) {
        raw.push(0); // filter: None
        raw.extend_from_slice(row);
    }

    let mut out = Vec::new();
    out.extend_from_slice(&SIGNATURE);
    push_chunk(&mut out, b"IHDR", &ihdr);
    push_chunk(&mut out, b"IDAT", &zlib_compress(&raw));
    push_chunk(&mut out, b"IEND", &[]);
    out
}

/// Decodes a non-interlaced 8-bit RGB PNG.
pub fn decode_png(bytes: &[u8]) -> Result<Image, PngError> {
    if bytes.len() < 8 || bytes[..8] != SIGNATURE {
        return Err(PngError::NotPng);
    }
    let mut pos = 8;
    let mut header: Option<(u32, u32)> = None;
    let mut idat = Vec::new();
    let mut seen_end = false;
    while pos < bytes.len() {
        if pos + 8 > bytes.len() {
            return Err(PngError::Truncated);
        }
        let len = u32::from_be_bytes(bytes[pos..pos + 4].try_into().unwrap()) as usize;
        let kind: [u8; 4] = bytes[pos + 4..pos + 8].try_into().unwrap();
        let data_end = pos + 8 + len;
        if data_end + 4 > bytes.len() {
            return Err(PngError::Truncated);
        }
        let stored_crc = u32::from_be_bytes(bytes[data_end..data_end + 4].try_into().unwrap());
        if crc32(&bytes[pos + 4..data_end]) != stored_crc {
            return Err(PngError::BadCrc {
                chunk: String::from_utf8_lossy(&kind).into_owned(),
            });
        }
        let data = &bytes[pos + 8..data_end];
        match &kind {
            b"IHDR" => {
                if data.len() != 13 {
                    return Err(PngError::Unsupported {
                        reason: "malformed IHDR".into(),
                    });
                }
                let w = u32::from_be_bytes(data[0..4].try_into().unwrap());
                let h = u32::from_be_bytes(data[4..8].try_into().unwrap());
                if data[8] != 8 || data[9] != 2 {
                    return Err(PngError::Unsupported {
                        reason: format!(
                            "only 8-bit RGB is supported (depth {}, color type {})",
                            data[8], data[9]
                        ),
                    });
                }
                if data[10] != 0 || data[11] != 0 || data[12] != 0 {
                    return Err(PngError::Unsupported {
                        reason: "nonzero compression/filter/interlace method".into(),
                    });
                }
                if w == 0 || h == 0 {
                    return Err(PngError::Unsupported {
                        reason: "zero-sized image".into(),
                    });
                }
                header = Some((w, h));
            }
            b"IDAT" => idat.extend_from_slice(data),
            b"IEND" => {
                seen_end = true;
                break;
            }
            _ => {
                // Ancillary chunks (lowercase first letter) are skippable;
                // unknown critical chunks are not.
                if kind[0] & 0x20 == 0 {
                    return Err(PngError::Unsupported {
                        reason: format!("critical chunk {}", String::from_utf8_lossy(&kind)),
                    });
                }
            }
        }
        pos = data_end + 4;
    }
    let (w, h) = header.ok_or(PngError::Unsupported {
        reason: "missing IHDR".into(),
    })?;
    if !seen_end {
        return Err(PngError::Truncated);
    }
    let raw = zlib_decompress(&idat)?;
    let stride = w as usize * 3;
    let expected = h as usize * (stride + 1);
    if raw.len() != expected {
        return Err(PngError::SizeMismatch {
            expected,
            actual: raw.len(),
        });
    }

    let mut pixels = vec![0u8; w as usize * h as usize * 3];
    let mut prev_row = vec![0u8; stride];
    for y in 0..h as usize {
        let filter = raw[y * (stride + 1)];
        let src = &raw[y * (stride + 1) + 1..(y + 1) * (stride + 1)];
        let dst = &mut pixels[y * stride..(y + 1) * stride];
        dst.copy_from_slice(src);
        match filter {
            0 => {}
            1 => {
                for x in 3..stride {
                    dst[x] = dst[x].wrapping_add(dst[x - 3]);
                }
            }
            2 => {
                for x in 0..stride {
                    dst[x] = dst[x].wrapping_add(prev_row[x]);
                }
            }
            3 => {
                for x in 0..stride {
                    let left = if x >= 3 { dst[x - 3] as u16 } else { 0 };
                    let up = prev_row[x] as u16;
                    dst[x] = dst[x].wrapping_add(((left + up) / 2) as u8);
                }
            }
            4 => {
                for x in 0..stride {
                    let left = if x >= 3 { dst[x - 3] as i16 } else { 0 };
                    let up = prev_row[x] as i16;
                    let ul = if x >= 3 { prev_row[x - 3] as i16 } else { 0 };
                    dst[x] = dst[x].wrapping_add(paeth(left, up, ul));
                }
            }
            other => return Err(PngError::BadFilter(other)),
        }
        prev_row.copy_from_slice(dst);
    }
    Ok(Image::from_pixels(w, h, pixels))
}

fn paeth(a: i16, b: i16, c: i16) -> u8 {
    let p = a + b - c;
    let (pa, pb, pc) = ((p - a).abs(), (p - b).abs(), (p - c).abs());
    if pa <= pb && pa <= pc {
        a as u8
    } else if pb <= pc {
        b as u8
    } else {
        c as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::layout::LayoutSpec;
    use crate::raster::{render_graph, RenderSpec, WHITE};
    use proptest::prelude::*;

    #[test]
    fn one_by_one_white_round_trip() {
        let img = Image::new(1, 1, WHITE);
        let png = encode_png(&img);
        assert_eq!(decode_png(&png).unwrap(), img);
    }

    #[test]
    fn rendered_triangle_round_trip() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let img = render_graph(&g, &LayoutSpec::default(), &RenderSpec::default()).unwrap();
        let png = encode_png(&img);
        assert_eq!(decode_png(&png).unwrap(), img);
        // Encoding is deterministic.
        assert_eq!(png, encode_png(&img));
    }

    #[test]
    fn corrupted_crc_is_rejected() {
        let img = Image::new(4, 4, WHITE);
        let mut png = encode_png(&img);
        // Flip a bit inside the IDAT payload (after signature + IHDR chunk).
        let idat_pos = 8 + (8 + 13 + 4) + 8 + 2;
        png[idat_pos] ^= 0x40;
        assert!(matches!(decode_png(&png), Err(PngError::BadCrc { .. })));
    }

    #[test]
    fn bad_signature_rejected() {
        assert_eq!(decode_png(b"GIF89a"), Err(PngError::NotPng));
    }

    #[test]
    fn truncated_stream_rejected() {
        let img = Image::new(4, 4, WHITE);
        let png = encode_png(&img);
        assert!(matches!(
            decode_png(&png[..png.len() - 6]),
            Err(PngError::Truncated) | Err(PngError::BadCrc { .. })
        ));
    }

    #[test]
    fn compresses_constant_image_well() {
        let img = Image::new(224, 224, WHITE);
        let png = encode_png(&img);
        assert!(png.len() < 3000, "constant image took {} bytes", png.len());
    }

    #[test]
    fn checksum_reference_values() {
        // Published check values: CRC-32 and Adler-32 of "123456789".
        assert_eq!(crc32(b"123456789"), 0xcbf43926);
        assert_eq!(adler32(b"123456789"), 0x091e01de);
    }

    #[test]
    fn decodes_externally_generated_small_png() {
        // 3x2 RGB PNG produced by an independent encoder, with Sub and Up
        // scanline filters.
        let img = decode_png(EXTERNAL_SMALL).unwrap();
        assert_eq!((img.width(), img.height()), (3, 2));
        assert_eq!(img.get(0, 0), [255, 0, 0]);
        assert_eq!(img.get(1, 0), [0, 255, 0]);
        assert_eq!(img.get(2, 0), [0, 0, 255]);
        assert_eq!(img.get(0, 1), [10, 20, 30]);
        assert_eq!(img.get(1, 1), [40, 50, 60]);
        assert_eq!(img.get(2, 1), [70, 80, 90]);
    }

    #[test]
    fn decodes_externally_generated_gradient_png() {
        // 32x32 PNG from an independent encoder: dynamic Huffman blocks and
        // all five scanline filters (cycling by row).
        let img = decode_png(EXTERNAL_GRADIENT).unwrap();
        assert_eq!((img.width(), img.height()), (32, 32));
        for y in 0..32u32 {
            for x in 0..32u32 {
                let expected = [
                    ((x * 7 + y * 3) % 256) as u8,
                    ((x * 5) % 256) as u8,
                    ((y * 11) % 256) as u8,
                ];
                assert_eq!(img.get(x, y), expected, "pixel ({x},{y})");
            }
        }
    }

    include!("png_test_fixtures.rs");

    proptest! {
        #[test]
        fn round_trip_random_images(
            w in 1u32..12,
            h in 1u32..12,
            seed in any::<u64>(),
        ) {
            let mut rng = crate::rng::SplitMix64::new(seed);
            let pixels: Vec<u8> = (0..(w * h * 3)).map(|_| rng.next_u64() as u8).collect();
            let img = Image::from_pixels(w, h, pixels);
            let png = encode_png(&img);
            prop_assert_eq!(decode_png(&png).unwrap(), img);
        }
    }
}
