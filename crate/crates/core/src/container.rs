//! The `SNO1` binary oracle container.
//!
//! Layout: magic `SNO1`, version byte, class tag byte, impl tag byte,
//! little-endian u64 `n` and `N`, then length-prefixed component sections in
//! a fixed per-impl order — unified: F, Sp, A, idxN, idxNa, idxNc, idxPa,
//! idxPc, then optionally degrees; wavelet-circle: S, P; wavelet-trapezoid:
//! S, P1, P2, P3. Deserialization rejects wrong magic or version.

use crate::circle::CircleOracle;
use crate::diagrams::ClassTag;
use crate::error::{Error, Result};
use crate::grid::PointGrid;
use crate::polygon::PolygonOracle;
use crate::primitives::wavelet::WaveletMatrix;
use crate::primitives::{BitVector, ExtremeMode, LabelSequence, RangeArgIndex};
use crate::space::SpaceReport;
use crate::trapezoid::TrapezoidOracle;

pub const MAGIC: [u8; 4] = *b"SNO1";
pub const VERSION: u8 = 1;

const IMPL_UNIFIED: u8 = 0;
const IMPL_WAVELET_CIRCLE: u8 = 1;
const IMPL_WAVELET_TRAPEZOID: u8 = 2;

/// A loaded oracle of any implementation, with uniform query dispatch.
#[derive(Debug, Clone)]
pub enum AnyOracle {
    Unified(PolygonOracle),
    Circle(CircleOracle),
    Trapezoid(TrapezoidOracle),
}

impl AnyOracle {
    pub fn n(&self) -> usize {
        match self {
            AnyOracle::Unified(o) => o.n(),
            AnyOracle::Circle(o) => o.n(),
            AnyOracle::Trapezoid(o) => o.n(),
        }
    }

    pub fn impl_name(&self) -> &'static str {
        match self {
            AnyOracle::Unified(_) => "unified",
            AnyOracle::Circle(_) => "wavelet-circle",
            AnyOracle::Trapezoid(_) => "wavelet-trapezoid",
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> Result<bool> {
        match self {
            AnyOracle::Unified(o) => o.adjacent(u, v),
            AnyOracle::Circle(o) => o.adjacent(u, v),
            AnyOracle::Trapezoid(o) => o.adjacent(u, v),
        }
    }

    pub fn degree(&self, u: usize) -> Result<usize> {
        match self {
            AnyOracle::Unified(o) => o.degree(u),
            AnyOracle::Circle(o) => o.degree(u),
            AnyOracle::Trapezoid(o) => o.degree(u),
        }
    }

    pub fn neighborhood(&self, u: usize) -> Result<Vec<usize>> {
        match self {
            AnyOracle::Unified(o) => o.neighborhood(u),
            AnyOracle::Circle(o) => o.neighborhood(u),
            AnyOracle::Trapezoid(o) => o.neighborhood(u),
        }
    }

    pub fn space_report(&self) -> SpaceReport {
        match self {
            AnyOracle::Unified(o) => o.space_report(),
            AnyOracle::Circle(o) => o.space_report(),
            AnyOracle::Trapezoid(o) => o.space_report(),
        }
    }
}

struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn new() -> Self {
        Writer { buf: Vec::new() }
    }

    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn section(&mut self, body: Vec<u8>) {
        self.u64(body.len() as u64);
        self.buf.extend_from_slice(&body);
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        if self.at + len > self.buf.len() {
            return Err(Error::Format("truncated container".into()));
        }
        let s = &self.buf[self.at..self.at + len];
        self.at += len;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u64(&mut self) -> Result<u64> {
        let b = self.take(8)?;
        Ok(u64::from_le_bytes(b.try_into().unwrap()))
    }

    fn section(&mut self) -> Result<&'a [u8]> {
        let len = self.u64()? as usize;
        self.take(len)
    }

    fn at_end(&self) -> bool {
        self.at == self.buf.len()
    }
}

fn bv_bytes(bv: &BitVector) -> Vec<u8> {
    let mut w = Writer::new();
    w.u64(bv.len() as u64);
    for &word in bv.words() {
        w.u64(word);
    }
    w.buf
}

fn bv_from_bytes(bytes: &[u8]) -> Result<BitVector> {
    let mut r = Reader { buf: bytes, at: 0 };
    let len = r.u64()? as usize;
    let nwords = len.div_ceil(64);
    let mut words = Vec::with_capacity(nwords);
    for _ in 0..nwords {
        words.push(r.u64()?);
    }
    if !r.at_end() {
        return Err(Error::Format("oversized bitvector section".into()));
    }
    Ok(BitVector::from_raw_parts(words, len))
}

fn wavelet_bytes(wm: &WaveletMatrix) -> Vec<u8> {
    let mut w = Writer::new();
    w.u64(wm.len() as u64);
    w.u64(wm.sigma());
    w.u64(wm.num_levels() as u64);
    for level in wm.level_bitvectors() {
        w.section(bv_bytes(level));
    }
    w.buf
}

fn wavelet_from_bytes(bytes: &[u8]) -> Result<WaveletMatrix> {
    let mut r = Reader { buf: bytes, at: 0 };
    let len = r.u64()? as usize;
    let sigma = r.u64()?;
    let nlevels = r.u64()? as usize;
    let mut levels = Vec::with_capacity(nlevels);
    for _ in 0..nlevels {
        levels.push(bv_from_bytes(r.section()?)?);
    }
    Ok(WaveletMatrix::from_parts(len, sigma, levels))
}

fn seq_bytes(seq: &LabelSequence) -> Vec<u8> {
    wavelet_bytes(seq.matrix())
}

fn seq_from_bytes(bytes: &[u8]) -> Result<LabelSequence> {
    Ok(LabelSequence::from_matrix(wavelet_from_bytes(bytes)?))
}

fn rmq_bytes(idx: &RangeArgIndex) -> Vec<u8> {
    let mut w = Writer::new();
    w.u64(idx.len() as u64);
    w.buf.push(match idx.mode() {
        ExtremeMode::Min => 0,
        ExtremeMode::Max => 1,
    });
    w.section(bv_bytes(idx.parens()));
    w.buf
}

fn rmq_from_bytes(bytes: &[u8]) -> Result<RangeArgIndex> {
    let mut r = Reader { buf: bytes, at: 0 };
    let len = r.u64()? as usize;
    let mode = match r.u8()? {
        0 => ExtremeMode::Min,
        1 => ExtremeMode::Max,
        other => return Err(Error::Format(format!("unknown extremum mode {other}"))),
    };
    let parens = bv_from_bytes(r.section()?)?;
    if parens.len() != 2 * len + 2 {
        return Err(Error::Format("parenthesis length mismatch".into()));
    }
    Ok(RangeArgIndex::from_parens(len, mode, parens))
}

fn grid_bytes(g: &PointGrid) -> Vec<u8> {
    let (cols, ys, dx, dy) = g.parts();
    let mut w = Writer::new();
    w.u64(g.n() as u64);
    w.buf.push(dx as u8);
    w.buf.push(dy as u8);
    w.section(bv_bytes(cols));
    w.section(wavelet_bytes(ys));
    w.buf
}

fn grid_from_bytes(bytes: &[u8]) -> Result<PointGrid> {
    let mut r = Reader { buf: bytes, at: 0 };
    let n = r.u64()? as usize;
    let dx = r.u8()? != 0;
    let dy = r.u8()? != 0;
    let cols = bv_from_bytes(r.section()?)?;
    let ys = wavelet_from_bytes(r.section()?)?;
    Ok(PointGrid::from_parts(n, cols, ys, dx, dy))
}

fn expected_impl_class(class: ClassTag) -> ClassTag {
    match class {
        ClassTag::Interval => ClassTag::Interval,
        ClassTag::CircularArc => ClassTag::CircularArc,
        _ => ClassTag::GenericPolygon,
    }
}

/// Serializes an oracle built over a diagram of graph class `class`.
pub fn serialize_oracle(oracle: &AnyOracle, class: ClassTag) -> Result<Vec<u8>> {
    let mut w = Writer::new();
    w.buf.extend_from_slice(&MAGIC);
    w.buf.push(VERSION);
    w.buf.push(class.tag_byte());
    let (impl_tag, n, total) = match oracle {
        AnyOracle::Unified(o) => {
            if o.impl_class() != expected_impl_class(class) {
                return Err(Error::Format(format!(
                    "oracle impl class {} does not match diagram class {class}",
                    o.impl_class()
                )));
            }
            (IMPL_UNIFIED, o.n(), o.total_corners())
        }
        AnyOracle::Circle(o) => (IMPL_WAVELET_CIRCLE, o.n(), 2 * o.n()),
        AnyOracle::Trapezoid(o) => (IMPL_WAVELET_TRAPEZOID, o.n(), 4 * o.n()),
    };
    w.buf.push(impl_tag);
    w.u64(n as u64);
    w.u64(total as u64);
    match oracle {
        AnyOracle::Unified(o) => {
            let (first, rest, arcs, indexes, degrees) = o.parts();
            w.section(bv_bytes(first));
            w.section(seq_bytes(rest));
            w.section(bv_bytes(arcs));
            for idx in indexes {
                w.section(rmq_bytes(idx));
            }
            if let Some(degs) = degrees {
                let mut body = Writer::new();
                body.u64(degs.len() as u64);
                for &d in degs {
                    body.buf.extend_from_slice(&d.to_le_bytes());
                }
                w.section(body.buf);
            }
        }
        AnyOracle::Circle(o) => {
            let (s, p) = o.parts();
            w.section(bv_bytes(s));
            w.section(grid_bytes(p));
        }
        AnyOracle::Trapezoid(o) => {
            let (s, p1, p2, p3) = o.parts();
            w.section(seq_bytes(s));
            w.section(grid_bytes(p1));
            w.section(grid_bytes(p2));
            w.section(grid_bytes(p3));
        }
    }
    Ok(w.buf)
}

/// Parses a container, returning the oracle and the recorded diagram class.
pub fn deserialize_oracle(bytes: &[u8]) -> Result<(AnyOracle, ClassTag)> {
    let mut r = Reader { buf: bytes, at: 0 };
    let magic = r.take(4)?;
    if magic != MAGIC {
        return Err(Error::Format(format!(
            "bad magic {:02x?}, expected SNO1",
            magic
        )));
    }
    let version = r.u8()?;
    if version != VERSION {
        return Err(Error::Format(format!(
            "unsupported version {version}, expected {VERSION}"
        )));
    }
    let class = ClassTag::from_tag_byte(r.u8()?)
        .ok_or_else(|| Error::Format("unknown class tag".into()))?;
    let impl_tag = r.u8()?;
    let n = r.u64()? as usize;
    let total = r.u64()? as usize;
    let oracle = match impl_tag {
        IMPL_UNIFIED => {
            let first = bv_from_bytes(r.section()?)?;
            let rest = seq_from_bytes(r.section()?)?;
            let arcs = bv_from_bytes(r.section()?)?;
            let mut indexes = Vec::with_capacity(5);
            for _ in 0..5 {
                indexes.push(rmq_from_bytes(r.section()?)?);
            }
            let degrees = if r.at_end() {
                None
            } else {
                let body = r.section()?;
                let mut br = Reader { buf: body, at: 0 };
                let len = br.u64()? as usize;
                let mut degs = Vec::with_capacity(len);
                for _ in 0..len {
                    let b = br.take(4)?;
                    degs.push(u32::from_le_bytes(b.try_into().unwrap()));
                }
                Some(degs)
            };
            if first.len() != total || arcs.len() != total {
                return Err(Error::Format("component length mismatch".into()));
            }
            let indexes: [RangeArgIndex; 5] = indexes
                .try_into()
                .map_err(|_| Error::Format("wrong index count".into()))?;
            AnyOracle::Unified(PolygonOracle::from_parts(
                n,
                total,
                expected_impl_class(class),
                first,
                rest,
                arcs,
                indexes,
                degrees,
            ))
        }
        IMPL_WAVELET_CIRCLE => {
            let s = bv_from_bytes(r.section()?)?;
            let p = grid_from_bytes(r.section()?)?;
            if s.len() != 2 * n {
                return Err(Error::Format("endpoint bitvector length mismatch".into()));
            }
            AnyOracle::Circle(CircleOracle::from_parts(n, s, p))
        }
        IMPL_WAVELET_TRAPEZOID => {
            let s = seq_from_bytes(r.section()?)?;
            let p1 = grid_from_bytes(r.section()?)?;
            let p2 = grid_from_bytes(r.section()?)?;
            let p3 = grid_from_bytes(r.section()?)?;
            if s.len() != 4 * n {
                return Err(Error::Format("projection sequence length mismatch".into()));
            }
            AnyOracle::Trapezoid(TrapezoidOracle::from_parts(n, s, p1, p2, p3))
        }
        other => return Err(Error::Format(format!("unknown impl tag {other}"))),
    };
    if !r.at_end() {
        return Err(Error::Format("trailing bytes after container".into()));
    }
    Ok((oracle, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{generate, to_polygon_diagram, Diagram};
    use crate::polygon::BuildOptions;

    fn sample_unified(explicit: bool) -> (AnyOracle, ClassTag) {
        let d = generate(ClassTag::Circle, 25, 2, 3).unwrap();
        let p = to_polygon_diagram(&d).unwrap();
        let o = PolygonOracle::build(
            &p,
            BuildOptions {
                explicit_degrees: explicit,
                impl_class: ClassTag::GenericPolygon,
            },
        )
        .unwrap();
        (AnyOracle::Unified(o), ClassTag::Circle)
    }

    #[test]
    fn unified_round_trip() {
        for explicit in [false, true] {
            let (oracle, class) = sample_unified(explicit);
            let bytes = serialize_oracle(&oracle, class).unwrap();
            let (loaded, class2) = deserialize_oracle(&bytes).unwrap();
            assert_eq!(class2, class);
            for u in 1..=oracle.n() {
                assert_eq!(loaded.degree(u).unwrap(), oracle.degree(u).unwrap());
                assert_eq!(
                    loaded.neighborhood(u).unwrap(),
                    oracle.neighborhood(u).unwrap()
                );
                for v in 1..=oracle.n() {
                    assert_eq!(
                        loaded.adjacent(u, v).unwrap(),
                        oracle.adjacent(u, v).unwrap()
                    );
                }
            }
            // byte-identical re-serialization
            assert_eq!(serialize_oracle(&loaded, class2).unwrap(), bytes);
        }
    }

    #[test]
    fn wavelet_round_trips() {
        let Diagram::Chord(cd) = generate(ClassTag::Circle, 20, 2, 9).unwrap() else {
            unreachable!()
        };
        let o = AnyOracle::Circle(CircleOracle::build(&cd).unwrap());
        let bytes = serialize_oracle(&o, ClassTag::Circle).unwrap();
        let (loaded, _) = deserialize_oracle(&bytes).unwrap();
        for u in 1..=20 {
            assert_eq!(loaded.neighborhood(u).unwrap(), o.neighborhood(u).unwrap());
        }

        let Diagram::Trapezoid(td) = generate(ClassTag::Trapezoid, 15, 2, 9).unwrap() else {
            unreachable!()
        };
        let o = AnyOracle::Trapezoid(TrapezoidOracle::build(&td).unwrap());
        let bytes = serialize_oracle(&o, ClassTag::Trapezoid).unwrap();
        let (loaded, _) = deserialize_oracle(&bytes).unwrap();
        for u in 1..=15 {
            assert_eq!(loaded.neighborhood(u).unwrap(), o.neighborhood(u).unwrap());
        }
    }

    #[test]
    fn rejects_bad_magic_and_version() {
        let (oracle, class) = sample_unified(false);
        let mut bytes = serialize_oracle(&oracle, class).unwrap();
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(deserialize_oracle(&bad), Err(Error::Format(_))));
        bytes[4] = VERSION + 1;
        assert!(matches!(deserialize_oracle(&bytes), Err(Error::Format(_))));
        assert!(matches!(deserialize_oracle(b"SN"), Err(Error::Format(_))));
    }
}
