//! Matrix and term-list file formats.
//!
//! Binary matrix files are an 8-byte header (`b"PDMX"`, `u16` version 1,
//! `u16` qubit count, little-endian) followed by exactly `4^n` row-major
//! `(re, im)` pairs of little-endian IEEE-754 doubles.
//!
//! Text matrix files hold the side length `N` on the first line and then
//! `N` rows of `N` whitespace-separated entries written `re+imj`, `re-imj`
//! or a bare real `re`.
//!
//! Term files are CSV with the header `label,r,s,re,im`, one term per line.
//! Floats are written in their shortest round-tripping form, so reading a
//! file back reproduces every value exactly. Term files print a negative
//! zero as `0`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::str::FromStr;

use num_complex::Complex64;

use crate::bits::MAX_QUBITS;
use crate::error::{Error, Result};
use crate::matrix::{qubits_for_dim, ComplexMatrix};
use crate::pauli::{label_of, parse_label, PauliTerm, TermList};

pub const MAGIC: [u8; 4] = *b"PDMX";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 8;
pub const TERMS_HEADER: &str = "label,r,s,re,im";

/// On-disk matrix encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MatrixFormat {
    #[default]
    Binary,
    Text,
}

impl FromStr for MatrixFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "binary" | "bin" => Ok(MatrixFormat::Binary),
            "text" | "txt" => Ok(MatrixFormat::Text),
            other => Err(format!("unknown matrix format {other:?}")),
        }
    }
}

/// Header of a binary matrix file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixFileHeader {
    pub version: u16,
    pub qubits: u16,
}

impl MatrixFileHeader {
    pub fn to_bytes(self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4..6].copy_from_slice(&self.version.to_le_bytes());
        out[6..8].copy_from_slice(&self.qubits.to_le_bytes());
        out
    }

    pub fn parse(bytes: &[u8; HEADER_LEN]) -> Result<Self> {
        let magic: [u8; 4] = bytes[..4].try_into().unwrap();
        if magic != MAGIC {
            return Err(Error::BadMagic(magic));
        }
        let version = u16::from_le_bytes([bytes[4], bytes[5]]);
        if version != VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let qubits = u16::from_le_bytes([bytes[6], bytes[7]]);
        if qubits as usize > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                qubits: qubits as usize,
                max: MAX_QUBITS,
            });
        }
        Ok(Self { version, qubits })
    }

    /// Payload bytes that must follow this header.
    pub fn payload_len(self) -> usize {
        16usize << (2 * self.qubits as usize)
    }
}

pub fn read_matrix<R: Read>(source: R, format: MatrixFormat) -> Result<ComplexMatrix> {
    match format {
        MatrixFormat::Binary => read_binary(source),
        MatrixFormat::Text => read_text(source),
    }
}

pub fn write_matrix<W: Write>(m: &ComplexMatrix, sink: W, format: MatrixFormat) -> Result<()> {
    match format {
        MatrixFormat::Binary => write_binary(m, sink),
        MatrixFormat::Text => write_text(m, sink),
    }
}

/// Fills `buf` as far as possible; returns the byte count read.
fn read_full<R: Read>(source: &mut R, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match source.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(k) => filled += k,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}

fn read_binary<R: Read>(mut source: R) -> Result<ComplexMatrix> {
    let mut header = [0u8; HEADER_LEN];
    let got = read_full(&mut source, &mut header)?;
    if got < HEADER_LEN {
        return Err(Error::Truncated {
            expected: HEADER_LEN,
            actual: got,
        });
    }
    let header = MatrixFileHeader::parse(&header)?;
    let n = header.qubits as usize;
    let expected = header.payload_len();
    let mut m = ComplexMatrix::zeros(n)?;
    let dim = m.dim();

    let mut chunk = vec![0u8; expected.min(1 << 16)];
    let mut done = 0usize;
    let entries = m.as_mut_slice();
    while done < expected {
        let want = chunk.len().min(expected - done);
        let got = read_full(&mut source, &mut chunk[..want])?;
        if got < want {
            return Err(Error::Truncated {
                expected,
                actual: done + got,
            });
        }
        for (k, pair) in chunk[..want].chunks_exact(16).enumerate() {
            let idx = done / 16 + k;
            let re = f64::from_le_bytes(pair[..8].try_into().unwrap());
            let im = f64::from_le_bytes(pair[8..].try_into().unwrap());
            if !(re.is_finite() && im.is_finite()) {
                return Err(Error::NonFinite {
                    row: idx / dim,
                    col: idx % dim,
                });
            }
            entries[idx] = Complex64::new(re, im);
        }
        done += want;
    }
    let mut extra = [0u8; 1];
    if read_full(&mut source, &mut extra)? != 0 {
        return Err(Error::TrailingData);
    }
    Ok(m)
}

fn write_binary<W: Write>(m: &ComplexMatrix, sink: W) -> Result<()> {
    let mut sink = BufWriter::new(sink);
    let header = MatrixFileHeader {
        version: VERSION,
        qubits: m.qubits() as u16,
    };
    sink.write_all(&header.to_bytes())?;
    for z in m.as_slice() {
        sink.write_all(&z.re.to_le_bytes())?;
        sink.write_all(&z.im.to_le_bytes())?;
    }
    sink.flush()?;
    Ok(())
}

/// Shortest string that parses back to exactly `x`. Very large or small
/// magnitudes use exponent notation.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Like [`format_float`], but both zeros print as `0`.
fn format_coefficient(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format_float(x)
    }
}

/// `re+imj` / `re-imj`; the sign of a negative zero imaginary part is kept.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!(
        "{}{}{}j",
        format_float(z.re),
        sign,
        format_float(z.im.abs())
    )
}

/// Parses `re`, `re+imj`, `re-imj` or `imj`.
pub fn parse_complex(token: &str) -> Option<Complex64> {
    let Some(body) = token.strip_suffix('j') else {
        return token.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    // Last sign that is neither leading nor part of an exponent.
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (body[..i].parse().ok()?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "+" | "" => 1.0,
        "-" => -1.0,
        s => s.parse().ok()?,
    };
    Some(Complex64::new(re, im))
}

fn read_text<R: Read>(source: R) -> Result<ComplexMatrix> {
    let reader = BufReader::new(source);
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (line_no, first) = loop {
        match lines.next() {
            Some((no, line)) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break (no, line);
                }
            }
            None => {
                return Err(Error::Parse {
                    line: 1,
                    message: "empty matrix file".into(),
                })
            }
        }
    };
    let dim: usize = first.trim().parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("expected the matrix dimension, found {:?}", first.trim()),
    })?;
    let n = qubits_for_dim(dim)?;
    let mut m = ComplexMatrix::zeros(n)?;

    let mut row = 0;
    for (line_no, line) in lines.by_ref() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if row == dim {
            return Err(Error::Parse {
                line: line_no,
                message: format!("more than {dim} rows"),
            });
        }
        let mut col = 0;
        for (column, token) in tokens_with_columns(&line) {
            if col == dim {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("more than {dim} entries in row"),
                });
            }
            let z = parse_complex(token).ok_or_else(|| Error::ComplexLiteral {
                line: line_no,
                column,
                literal: token.to_string(),
            })?;
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row, col });
            }
            m[(row, col)] = z;
            col += 1;
        }
        if col != dim {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {dim} entries, found {col}"),
            });
        }
        row += 1;
    }
    if row != dim {
        return Err(Error::Parse {
            line: line_no + row + 1,
            message: format!("expected {dim} rows, found {row}"),
        });
    }
    Ok(m)
}

/// Whitespace-separated tokens with their 1-based character column.
fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        let column = line[..offset].chars().count() + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((column, token))
    })
}

fn write_text<W: Write>(m: &ComplexMatrix, sink: W) -> Result<()> {
    let mut sink = BufWriter::new(sink);
    let dim = m.dim();
    writeln!(sink, "{dim}")?;
    let mut line = String::new();
    for r in 0..dim {
        line.clear();
        for (c, &z) in m.row(r).iter().enumerate() {
            if c > 0 {
                line.push(' ');
            }
            line.push_str(&format_complex(z));
        }
        writeln!(sink, "{line}")?;
    }
    sink.flush()?;
    Ok(())
}

pub fn write_terms<W: Write>(terms: &TermList, sink: W) -> Result<()> {
    let mut sink = BufWriter::new(sink);
    writeln!(sink, "{TERMS_HEADER}")?;
    let mut line = String::new();
    for t in terms {
        line.clear();
        write!(
            line,
            "{},{},{},{},{}",
            label_of(t.r, t.s, t.n),
            t.r,
            t.s,
            format_coefficient(t.coeff.re),
            format_coefficient(t.coeff.im)
        )
        .unwrap();
        writeln!(sink, "{line}")?;
    }
    sink.flush()?;
    Ok(())
}

/// Reads a term file. The label of every line must agree with its `(r, s)`
/// columns and all labels must have the same length.
///
/// A header-only file has no way to state its qubit count and is returned
/// as an empty zero-qubit list. An empty label denotes the zero-qubit
/// string.
pub fn read_terms<R: Read>(source: R) -> Result<TermList> {
    let reader = BufReader::new(source);
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
    let header = lines.next().map(|(_, l)| l).transpose()?;
    if header.as_deref().map(str::trim_end) != Some(TERMS_HEADER) {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header {TERMS_HEADER:?}"),
        });
    }

    let mut qubits: Option<usize> = None;
    let mut seen = HashSet::new();
    let mut terms = Vec::new();
    for (line_no, line) in lines {
        let line = line?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split(',').collect();
        let [label, r, s, re, im] = fields[..] else {
            return Err(bad(format!("expected 5 fields, found {}", fields.len())));
        };
        let (lr, ls, n) = if label.is_empty() {
            (0, 0, 0)
        } else {
            parse_label(label).map_err(|e| bad(e.to_string()))?
        };
        let r: usize = r.parse().map_err(|_| bad(format!("bad r column {r:?}")))?;
        let s: usize = s.parse().map_err(|_| bad(format!("bad s column {s:?}")))?;
        if (lr, ls) != (r, s) {
            return Err(Error::LabelMismatch {
                line: line_no,
                label: label.to_string(),
                r,
                s,
            });
        }
        match qubits {
            None => qubits = Some(n),
            Some(q) if q != n => {
                return Err(bad(format!("label {label:?} has {n} qubits, expected {q}")))
            }
            Some(_) => {}
        }
        let re: f64 = re
            .parse()
            .map_err(|_| bad(format!("bad real part {re:?}")))?;
        let im: f64 = im
            .parse()
            .map_err(|_| bad(format!("bad imaginary part {im:?}")))?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(bad("non-finite coefficient".into()));
        }
        if !seen.insert((r, s)) {
            return Err(Error::DuplicateTerm {
                line: line_no,
                r,
                s,
            });
        }
        terms.push(PauliTerm::new(r, s, Complex64::new(re, im), n));
    }
    let n = qubits.unwrap_or(0);
    Ok(TermList::from_terms(n, terms, 0.0).expect("duplicates rejected above"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::decompose_to_terms;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn text(m: &ComplexMatrix) -> String {
        let mut out = Vec::new();
        write_matrix(m, &mut out, MatrixFormat::Text).unwrap();
        String::from_utf8(out).unwrap()
    }

    fn terms_csv(list: &TermList) -> String {
        let mut out = Vec::new();
        write_terms(list, &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn text_examples() {
        let id = read_matrix("2\n1 0\n0 1\n".as_bytes(), MatrixFormat::Text).unwrap();
        assert_eq!(id, ComplexMatrix::identity(1).unwrap());
        let y = read_matrix("2\n0+0j 0-1j\n0+1j 0+0j\n".as_bytes(), MatrixFormat::Text).unwrap();
        assert_eq!(
            y,
            ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
                .unwrap()
        );
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5"), Some(c(1.5, 0.0)));
        assert_eq!(parse_complex("-2.5e-3+4E+2j"), Some(c(-2.5e-3, 400.0)));
        assert_eq!(parse_complex("1e5-1e-5j"), Some(c(1e5, -1e-5)));
        assert_eq!(parse_complex("-3j"), Some(c(0.0, -3.0)));
        assert_eq!(parse_complex("2-j"), Some(c(2.0, -1.0)));
        assert_eq!(parse_complex("abc"), None);
        assert_eq!(parse_complex("1+2i"), None);
        assert_eq!(parse_complex("1+xj"), None);
        let z = parse_complex("-0-0j").unwrap();
        assert!(z.re.is_sign_negative() && z.im.is_sign_negative());
    }

    #[test]
    fn text_errors_carry_position() {
        let err = read_matrix("2\n1 0\n0 1+q\n".as_bytes(), MatrixFormat::Text).unwrap_err();
        match err {
            Error::ComplexLiteral {
                line,
                column,
                literal,
            } => {
                assert_eq!((line, column), (3, 3));
                assert_eq!(literal, "1+q");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            read_matrix("3\n1 0 0\n0 1 0\n0 0 1\n".as_bytes(), MatrixFormat::Text),
            Err(Error::NotPowerOfTwo(3))
        ));
        assert!(read_matrix("2\n1 0\n".as_bytes(), MatrixFormat::Text).is_err());
        assert!(read_matrix("2\n1 0 0\n0 1\n".as_bytes(), MatrixFormat::Text).is_err());
        assert!(read_matrix("2\n1 0\n0 1\n1 1\n".as_bytes(), MatrixFormat::Text).is_err());
        assert!(matches!(
            read_matrix("2\n1 nan\n0 1\n".as_bytes(), MatrixFormat::Text),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(read_matrix("".as_bytes(), MatrixFormat::Text).is_err());
    }

    #[test]
    fn text_round_trip_is_exact() {
        let m = ComplexMatrix::from_rows(&[
            [c(0.1, -0.0), c(1e-300, 5e-324)],
            [
                c(-1.7976931348623157e308, 2.0 / 3.0),
                c(123456789.125, -1e20),
            ],
        ])
        .unwrap();
        let s = text(&m);
        let back = read_matrix(s.as_bytes(), MatrixFormat::Text).unwrap();
        for (a, b) in m.as_slice().iter().zip(back.as_slice()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn one_by_one_in_both_formats() {
        let m = ComplexMatrix::from_vec(vec![c(-4.25, 1.0)]).unwrap();
        assert_eq!(text(&m), "1\n-4.25+1j\n");
        for format in [MatrixFormat::Binary, MatrixFormat::Text] {
            let mut buf = Vec::new();
            write_matrix(&m, &mut buf, format).unwrap();
            assert_eq!(read_matrix(&buf[..], format).unwrap(), m);
        }
    }

    #[test]
    fn binary_layout() {
        let m = ComplexMatrix::from_vec(vec![c(1.0, -2.0)]).unwrap();
        let mut buf = Vec::new();
        write_matrix(&m, &mut buf, MatrixFormat::Binary).unwrap();
        let mut expected = b"PDMX\x01\x00\x00\x00".to_vec();
        expected.extend_from_slice(&1.0f64.to_le_bytes());
        expected.extend_from_slice(&(-2.0f64).to_le_bytes());
        assert_eq!(buf, expected);
    }

    #[test]
    fn binary_errors() {
        let mut good = Vec::new();
        write_matrix(
            &ComplexMatrix::identity(1).unwrap(),
            &mut good,
            MatrixFormat::Binary,
        )
        .unwrap();

        let mut bad_magic = good.clone();
        bad_magic[0] = b'X';
        assert!(matches!(
            read_matrix(&bad_magic[..], MatrixFormat::Binary),
            Err(Error::BadMagic(_))
        ));

        let mut bad_version = good.clone();
        bad_version[4] = 2;
        assert!(matches!(
            read_matrix(&bad_version[..], MatrixFormat::Binary),
            Err(Error::UnsupportedVersion(2))
        ));

        let truncated = &good[..good.len() - 1];
        assert!(matches!(
            read_matrix(truncated, MatrixFormat::Binary),
            Err(Error::Truncated {
                expected: 64,
                actual: 63
            })
        ));
        assert!(matches!(
            read_matrix(&good[..3], MatrixFormat::Binary),
            Err(Error::Truncated { .. })
        ));

        let mut trailing = good.clone();
        trailing.push(0);
        assert!(matches!(
            read_matrix(&trailing[..], MatrixFormat::Binary),
            Err(Error::TrailingData)
        ));

        let mut inf = good.clone();
        inf[HEADER_LEN + 16..HEADER_LEN + 24].copy_from_slice(&f64::INFINITY.to_le_bytes());
        assert!(matches!(
            read_matrix(&inf[..], MatrixFormat::Binary),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));

        let mut huge = good.clone();
        huge[6] = 17;
        assert!(matches!(
            read_matrix(&huge[..], MatrixFormat::Binary),
            Err(Error::TooManyQubits { .. })
        ));
    }

    #[test]
    fn term_file_examples() {
        let id = decompose_to_terms(ComplexMatrix::identity(1).unwrap(), 1e-12);
        assert_eq!(terms_csv(&id), "label,r,s,re,im\nI,0,0,1,0\n");

        let y =
            ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
                .unwrap();
        let y_terms = decompose_to_terms(y, 1e-12);
        assert_eq!(terms_csv(&y_terms), "label,r,s,re,im\nY,1,1,1,0\n");

        for list in [id, y_terms] {
            let back = read_terms(terms_csv(&list).as_bytes()).unwrap();
            assert_eq!(back.terms(), list.terms());
            assert_eq!(back.qubits(), list.qubits());
        }
    }

    #[test]
    fn term_file_rejections() {
        let err = read_terms("label,r,s,re,im\nY,1,0,1,0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::LabelMismatch { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("line 2"));

        let err = read_terms("label,r,s,re,im\nX,1,0,1,0\nX,1,0,2,0\n".as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            Error::DuplicateTerm {
                line: 3,
                r: 1,
                s: 0
            }
        ));

        assert!(read_terms("label,r,s,re,im\nX,1,0,1\n".as_bytes()).is_err());
        assert!(read_terms("label,r,s,re,im\nX,1,0,one,0\n".as_bytes()).is_err());
        assert!(read_terms("label,r,s,re,im\nX,1,0,1,0\nXX,0,0,1,0\n".as_bytes()).is_err());
        assert!(read_terms("label,r,s,re,im\nX,1,0,inf,0\n".as_bytes()).is_err());
        assert!(read_terms("r,s,re,im\n".as_bytes()).is_err());
        assert!(read_terms("".as_bytes()).is_err());
    }

    #[test]
    fn header_only_term_file_is_empty() {
        let list = read_terms("label,r,s,re,im\n".as_bytes()).unwrap();
        assert!(list.is_empty());
        assert_eq!(list.qubits(), 0);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("binary".parse::<MatrixFormat>(), Ok(MatrixFormat::Binary));
        assert_eq!("text".parse::<MatrixFormat>(), Ok(MatrixFormat::Text));
        assert!("csv".parse::<MatrixFormat>().is_err());
    }
}
