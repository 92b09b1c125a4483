//! Netpbm graymaps: ASCII (`P2`) and binary (`P5`), 8 or 16 bits per sample.

use std::fmt;

use qfz_core::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmFormat {
    /// ASCII samples.
    P2,
    /// Binary samples, big-endian when maxval > 255.
    P5,
}

#[derive(Debug)]
pub enum PgmError {
    UnsupportedMagic(String),
    MalformedHeader(&'static str),
    BadMaxval(u64),
    BadSample(String),
    Truncated { expected: usize, found: usize },
    Image(qfz_core::Error),
}

impl fmt::Display for PgmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PgmError::UnsupportedMagic(m) => write!(f, "unsupported magic number {m:?} (expected P2 or P5)"),
            PgmError::MalformedHeader(what) => write!(f, "malformed PGM header: {what}"),
            PgmError::BadMaxval(v) => write!(f, "maxval {v} outside 1..=65535"),
            PgmError::BadSample(s) => write!(f, "invalid sample {s:?}"),
            PgmError::Truncated { expected, found } => {
                write!(f, "truncated raster: expected {expected} samples, found {found}")
            }
            PgmError::Image(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PgmError {}

/// Byte cursor over a PNM header: whitespace-separated tokens, with `#`
/// comments running to the end of the line.
struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_blank(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_blank();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn number(&mut self, what: &'static str) -> Result<u64, PgmError> {
        let tok = self.token().ok_or(PgmError::MalformedHeader(what))?;
        std::str::from_utf8(tok).ok().and_then(|s| s.parse().ok()).ok_or(PgmError::MalformedHeader(what))
    }
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    let magic = bytes.get(..2).ok_or(PgmError::MalformedHeader("missing magic number"))?;
    let format = match magic {
        b"P2" => PgmFormat::P2,
        b"P5" => PgmFormat::P5,
        other => return Err(PgmError::UnsupportedMagic(String::from_utf8_lossy(other).into_owned())),
    };
    let mut header = Header { bytes, pos: 2 };
    if !header.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(PgmError::MalformedHeader("magic number not followed by whitespace"));
    }
    let width = header.number("width")?;
    let height = header.number("height")?;
    let maxval = header.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(PgmError::BadMaxval(maxval));
    }
    if width == 0 || height == 0 {
        return Err(PgmError::MalformedHeader("zero width or height"));
    }
    let count = usize::try_from(width * height).map_err(|_| PgmError::MalformedHeader("image too large"))?;

    let pixels = match format {
        PgmFormat::P2 => {
            let mut pixels = Vec::with_capacity(count);
            while pixels.len() < count {
                let Some(tok) = header.token() else { break };
                let value = std::str::from_utf8(tok)
                    .ok()
                    .and_then(|s| s.parse::<u16>().ok())
                    .filter(|&v| u64::from(v) <= maxval)
                    .ok_or_else(|| PgmError::BadSample(String::from_utf8_lossy(tok).into_owned()))?;
                pixels.push(value);
            }
            if pixels.len() < count {
                return Err(PgmError::Truncated { expected: count, found: pixels.len() });
            }
            pixels
        }
        PgmFormat::P5 => {
            // exactly one whitespace byte separates maxval from the raster
            if !header.bytes.get(header.pos).is_some_and(u8::is_ascii_whitespace) {
                return Err(PgmError::MalformedHeader("maxval not followed by whitespace"));
            }
            let raster = &bytes[header.pos + 1..];
            let wide = maxval > 255;
            let size = if wide { 2 } else { 1 };
            if raster.len() < count * size {
                return Err(PgmError::Truncated { expected: count, found: raster.len() / size });
            }
            let pixels: Vec<u16> = if wide {
                raster[..2 * count].chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
            } else {
                raster[..count].iter().map(|&b| u16::from(b)).collect()
            };
            if let Some(&p) = pixels.iter().find(|&&p| u64::from(p) > maxval) {
                return Err(PgmError::BadSample(p.to_string()));
            }
            pixels
        }
    };
    GrayImage::new(width as usize, height as usize, maxval as u16, pixels).map_err(PgmError::Image)
}

/// Deterministic encoding: single spaces, LF line ends, no comments; P2
/// writes one image row per line.
pub fn write_pgm(image: &GrayImage, format: PgmFormat) -> Vec<u8> {
    encode(image, format, None)
}

/// Like [`write_pgm`] with a `# comment` line right after the magic number.
pub fn write_pgm_with_comment(image: &GrayImage, format: PgmFormat, comment: &str) -> Vec<u8> {
    encode(image, format, Some(comment))
}

fn encode(image: &GrayImage, format: PgmFormat, comment: Option<&str>) -> Vec<u8> {
    use std::fmt::Write;
    let mut head = String::from(match format {
        PgmFormat::P2 => "P2\n",
        PgmFormat::P5 => "P5\n",
    });
    if let Some(c) = comment {
        writeln!(head, "# {c}").unwrap();
    }
    writeln!(head, "{} {}\n{}", image.width(), image.height(), image.maxval()).unwrap();
    let mut out = head.into_bytes();
    match format {
        PgmFormat::P2 => {
            let mut line = String::new();
            for row in image.pixels().chunks(image.width()) {
                line.clear();
                for (i, v) in row.iter().enumerate() {
                    if i > 0 {
                        line.push(' ');
                    }
                    write!(line, "{v}").unwrap();
                }
                line.push('\n');
                out.extend_from_slice(line.as_bytes());
            }
        }
        PgmFormat::P5 if image.maxval() > 255 => {
            out.extend(image.pixels().iter().flat_map(|v| v.to_be_bytes()));
        }
        PgmFormat::P5 => out.extend(image.pixels().iter().map(|&v| v as u8)),
    }
    out
}
