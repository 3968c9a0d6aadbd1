//! Binary index file.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic "CDCST" | version u32 | n u64 | sigma u32 | mode u8 | level-ancestor kind u8
//! section count u32 | per section: tag [u8; 8], offset u64, length u64
//! sections: CDAWG, RLBWT (empty in lite mode), REVGRAM, HPD-FWD, HPD-REV
//! crc32 of every preceding byte, u32
//! ```
//!
//! Offsets are absolute. Vectors are a `u64` length followed by fixed-width
//! items. Level-ancestor tables are rebuilt on load rather than stored.

use crate::cdawg::{Boundary, Cdawg, CdawgArc, CdawgNode, Deepest, FullData, Mode, WeinerArc};
use crate::cst::Cst;
use crate::error::{Error, Result};
use crate::hpd::{Channel, HpdIndex, LaKind, LevelAncestor, Sum, NONE};
use crate::revgram::{RevArc, RevGrammar};
use crate::rlbwt::Rlbwt;

pub const MAGIC: &[u8; 5] = b"CDCST";
pub const VERSION: u32 = 1;

const TAGS: [&[u8; 8]; 5] = [b"CDAWG\0\0\0", b"RLBWT\0\0\0", b"REVGRAM\0", b"HPD-FWD\0", b"HPD-REV\0"];
const HEADER: usize = 5 + 4 + 8 + 4 + 1 + 1 + 4;
const ENTRY: usize = 8 + 8 + 8;

#[derive(Default)]
struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn u8(&mut self, x: u8) {
        self.buf.push(x);
    }
    fn u32(&mut self, x: u32) {
        self.buf.extend_from_slice(&x.to_le_bytes());
    }
    fn u64(&mut self, x: u64) {
        self.buf.extend_from_slice(&x.to_le_bytes());
    }
    fn i64(&mut self, x: i64) {
        self.buf.extend_from_slice(&x.to_le_bytes());
    }
    /// `usize::MAX` encodes as `u64::MAX`.
    fn word(&mut self, x: usize) {
        self.u64(if x == NONE { u64::MAX } else { x as u64 });
    }
    fn len(&mut self, n: usize) {
        self.u64(n as u64);
    }
    fn words(&mut self, xs: &[usize]) {
        self.len(xs.len());
        xs.iter().for_each(|&x| self.word(x));
    }
    fn u64s(&mut self, xs: &[u64]) {
        self.len(xs.len());
        xs.iter().for_each(|&x| self.u64(x));
    }
    fn u32s(&mut self, xs: &[u32]) {
        self.len(xs.len());
        xs.iter().for_each(|&x| self.u32(x));
    }
    fn bytes(&mut self, xs: &[u8]) {
        self.len(xs.len());
        self.buf.extend_from_slice(xs);
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

fn corrupt(what: &str) -> Error {
    Error::Corrupt(what.to_string())
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.at.checked_add(k).filter(|&e| e <= self.buf.len()).ok_or_else(|| corrupt("truncated"))?;
        let s = &self.buf[self.at..end];
        self.at = end;
        Ok(s)
    }
    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn i64(&mut self) -> Result<i64> {
        Ok(i64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn word(&mut self) -> Result<usize> {
        match self.u64()? {
            u64::MAX => Ok(NONE),
            x => usize::try_from(x).map_err(|_| corrupt("word exceeds address space")),
        }
    }
    /// Length prefix, bounded by the bytes left at `width` bytes per item.
    fn len(&mut self, width: usize) -> Result<usize> {
        let n = self.word()?;
        if n.saturating_mul(width) > self.buf.len() - self.at {
            return Err(corrupt("length exceeds section"));
        }
        Ok(n)
    }
    fn vec<T>(&mut self, width: usize, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let n = self.len(width)?;
        (0..n).map(|_| item(self)).collect()
    }
    fn words(&mut self) -> Result<Vec<usize>> {
        self.vec(8, |r| r.word())
    }
    fn u64s(&mut self) -> Result<Vec<u64>> {
        self.vec(8, |r| r.u64())
    }
    fn u32s(&mut self) -> Result<Vec<u32>> {
        self.vec(4, |r| r.u32())
    }
    fn bytes(&mut self) -> Result<Vec<u8>> {
        let n = self.len(1)?;
        Ok(self.take(n)?.to_vec())
    }
    fn done(&self) -> Result<()> {
        if self.at == self.buf.len() {
            Ok(())
        } else {
            Err(corrupt("trailing bytes in section"))
        }
    }
}

fn mode_code(m: Mode) -> u8 {
    match m {
        Mode::Full => 0,
        Mode::Lite => 1,
    }
}

fn la_code(k: LaKind) -> u8 {
    match k {
        LaKind::BinaryLifting => 0,
        LaKind::Ladder => 1,
    }
}

impl Cst {
    /// Serializes the index; equal indexes give identical bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let sections = [
            write_cdawg(&self.cdawg, &self.source_map),
            self.cdawg.full.as_ref().map_or_else(Vec::new, |f| write_rlbwt(&f.rlbwt)),
            write_grammar(&self.grammar),
            write_hpd(&self.fwd),
            write_hpd(&self.rev),
        ];
        let mut w = Writer::default();
        w.buf.extend_from_slice(MAGIC);
        w.u32(VERSION);
        w.u64(self.n() as u64);
        w.u32(self.sigma());
        w.u8(mode_code(self.mode()));
        w.u8(la_code(self.fwd.la_kind()));
        w.u32(sections.len() as u32);
        let mut offset = (HEADER + ENTRY * sections.len()) as u64;
        for (tag, s) in TAGS.iter().zip(&sections) {
            w.buf.extend_from_slice(*tag);
            w.u64(offset);
            w.u64(s.len() as u64);
            offset += s.len() as u64;
        }
        for s in &sections {
            w.buf.extend_from_slice(s);
        }
        let crc = crc32fast::hash(&w.buf);
        w.u32(crc);
        w.buf
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Cst> {
        if bytes.len() < HEADER + 4 || &bytes[..5] != MAGIC {
            return Err(corrupt("not an index file"));
        }
        let (body, trailer) = bytes.split_at(bytes.len() - 4);
        if crc32fast::hash(body) != u32::from_le_bytes(trailer.try_into().unwrap()) {
            return Err(corrupt("checksum mismatch"));
        }
        let mut r = Reader { buf: body, at: 5 };
        let version = r.u32()?;
        if version != VERSION {
            return Err(Error::Version {
                found: version,
                expected: VERSION,
            });
        }
        let n = r.word()?;
        let sigma = r.u32()?;
        let mode = match r.u8()? {
            0 => Mode::Full,
            1 => Mode::Lite,
            _ => return Err(corrupt("unknown mode")),
        };
        let la = match r.u8()? {
            0 => LaKind::BinaryLifting,
            1 => LaKind::Ladder,
            _ => return Err(corrupt("unknown level-ancestor kind")),
        };
        if r.u32()? as usize != TAGS.len() {
            return Err(corrupt("unexpected section count"));
        }
        let mut sections = Vec::with_capacity(TAGS.len());
        for tag in TAGS {
            if r.take(8)? != tag {
                return Err(corrupt("unexpected section tag"));
            }
            let (off, len) = (r.word()?, r.word()?);
            let end = off.checked_add(len).filter(|&e| e <= body.len()).ok_or_else(|| corrupt("section out of bounds"))?;
            sections.push(Reader {
                buf: &body[off..end],
                at: 0,
            });
        }
        let mut it = sections.into_iter();
        let (mut cdawg, source_map) = read_cdawg(&mut it.next().unwrap())?;
        let mut rl_section = it.next().unwrap();
        match (&mut cdawg.full, mode) {
            (Some(full), Mode::Full) => full.rlbwt = read_rlbwt(&mut rl_section)?,
            (None, Mode::Lite) => rl_section.done()?,
            _ => return Err(corrupt("mode disagrees with CDAWG section")),
        }
        if cdawg.n != n || cdawg.sigma != sigma {
            return Err(corrupt("header disagrees with CDAWG section"));
        }
        let grammar = read_grammar(&mut it.next().unwrap())?;
        let fwd = read_hpd(&mut it.next().unwrap(), la)?;
        let rev = read_hpd(&mut it.next().unwrap(), la)?;
        if grammar.n != n || fwd.num_leaves() != n || rev.num_leaves() != n {
            return Err(corrupt("sections disagree on text length"));
        }
        Ok(Cst {
            source_map,
            cdawg,
            grammar,
            fwd,
            rev,
        })
    }
}

fn write_cdawg(c: &Cdawg, source_map: &[u8]) -> Vec<u8> {
    let mut w = Writer::default();
    w.word(c.n);
    w.u32(c.sigma);
    w.bytes(source_map);
    w.len(c.nodes.len());
    for v in &c.nodes {
        for x in [
            v.length,
            v.size,
            v.leaves,
            v.left,
            v.right_len,
            v.height_str,
            v.height_depth,
            v.deepest_str.rank_offset,
            v.deepest_str.str_offset,
            v.deepest_depth.rank_offset,
            v.deepest_depth.str_offset,
            v.link,
        ] {
            w.word(x);
        }
    }
    w.words(&c.arc_offset);
    w.len(c.arcs.len());
    for a in &c.arcs {
        w.word(a.source);
        w.word(a.target);
        w.u32(a.char);
        w.word(a.right);
        w.word(a.weight);
    }
    w.words(&c.boundary_offset);
    w.len(c.boundaries.len());
    for b in &c.boundaries {
        w.word(b.x);
        w.word(b.arc);
    }
    match &c.full {
        None => w.u8(0),
        Some(f) => {
            w.u8(1);
            w.len(f.intervals.len());
            for &(lo, hi) in &f.intervals {
                w.word(lo);
                w.word(hi);
            }
            w.words(&f.weiner_offset);
            w.len(f.weiner.len());
            for x in &f.weiner {
                w.u32(x.char);
                w.word(x.target);
                w.word(x.depth);
                w.u8(x.explicit as u8);
            }
        }
    }
    w.buf
}

fn read_cdawg(r: &mut Reader) -> Result<(Cdawg, Vec<u8>)> {
    let n = r.word()?;
    let sigma = r.u32()?;
    let source_map = r.bytes()?;
    let nodes = r.vec(12 * 8, |r| {
        let mut x = [0usize; 12];
        for slot in &mut x {
            *slot = r.word()?;
        }
        Ok(CdawgNode {
            length: x[0],
            size: x[1],
            leaves: x[2],
            left: x[3],
            right_len: x[4],
            height_str: x[5],
            height_depth: x[6],
            deepest_str: Deepest {
                rank_offset: x[7],
                str_offset: x[8],
            },
            deepest_depth: Deepest {
                rank_offset: x[9],
                str_offset: x[10],
            },
            link: x[11],
        })
    })?;
    let arc_offset = r.words()?;
    let arcs = r.vec(36, |r| {
        Ok(CdawgArc {
            source: r.word()?,
            target: r.word()?,
            char: r.u32()?,
            right: r.word()?,
            weight: r.word()?,
        })
    })?;
    let boundary_offset = r.words()?;
    let boundaries = r.vec(16, |r| Ok(Boundary { x: r.word()?, arc: r.word()? }))?;
    let full = match r.u8()? {
        0 => None,
        1 => {
            let intervals = r.vec(16, |r| Ok((r.word()?, r.word()?)))?;
            let weiner_offset = r.words()?;
            let weiner = r.vec(21, |r| {
                Ok(WeinerArc {
                    char: r.u32()?,
                    target: r.word()?,
                    depth: r.word()?,
                    explicit: r.u8()? != 0,
                })
            })?;
            Some(FullData {
                intervals,
                rlbwt: Rlbwt::new(&[], 0),
                weiner_offset,
                weiner,
            })
        }
        _ => return Err(corrupt("bad mode flag in CDAWG section")),
    };
    r.done()?;
    let k = nodes.len();
    let consistent = k >= 2
        && arc_offset.len() == k + 1
        && boundary_offset.len() == k + 1
        && arc_offset.last() == Some(&arcs.len())
        && boundary_offset.last() == Some(&boundaries.len())
        && arc_offset.windows(2).all(|w| w[0] <= w[1])
        && boundary_offset.windows(2).all(|w| w[0] <= w[1])
        && arcs.iter().all(|a| a.source < k && a.target < k)
        && boundaries.iter().all(|b| b.arc < arcs.len())
        && nodes.iter().all(|v| v.link < k)
        && full.as_ref().map_or(true, |f| {
            f.intervals.len() == k
                && f.weiner_offset.len() == k + 1
                && f.weiner_offset.last() == Some(&f.weiner.len())
                && f.weiner_offset.windows(2).all(|w| w[0] <= w[1])
                && f.weiner.iter().all(|x| x.target < k)
        });
    if !consistent {
        return Err(corrupt("inconsistent CDAWG section"));
    }
    Ok((
        Cdawg {
            n,
            sigma,
            nodes,
            arc_offset,
            arcs,
            boundary_offset,
            boundaries,
            full,
        },
        source_map,
    ))
}

fn write_rlbwt(rl: &Rlbwt) -> Vec<u8> {
    let mut w = Writer::default();
    w.u64(rl.n);
    w.u64s(&rl.run_start);
    w.u32s(&rl.run_char);
    w.u64s(&rl.dir_offset);
    w.u64s(&rl.dir_start);
    w.u64s(&rl.dir_len);
    w.u64s(&rl.dir_before);
    w.u64s(&rl.c_array);
    w.buf
}

fn read_rlbwt(r: &mut Reader) -> Result<Rlbwt> {
    let rl = Rlbwt {
        n: r.u64()?,
        run_start: r.u64s()?,
        run_char: r.u32s()?,
        dir_offset: r.u64s()?,
        dir_start: r.u64s()?,
        dir_len: r.u64s()?,
        dir_before: r.u64s()?,
        c_array: r.u64s()?,
    };
    r.done()?;
    let runs = rl.run_start.len();
    let consistent = rl.run_char.len() == runs
        && rl.dir_start.len() == runs
        && rl.dir_len.len() == runs
        && rl.dir_before.len() == runs
        && rl.c_array.len() >= 2
        && rl.dir_offset.len() == rl.c_array.len()
        && rl.dir_offset.last() == Some(&(runs as u64))
        && rl.run_char.iter().all(|&c| (c as usize) + 1 < rl.c_array.len());
    if !consistent {
        return Err(corrupt("inconsistent RLBWT section"));
    }
    Ok(rl)
}

fn write_grammar(g: &RevGrammar) -> Vec<u8> {
    let mut w = Writer::default();
    w.word(g.n);
    w.words(&g.cdawg_node);
    w.words(&g.arc_offset);
    w.len(g.arcs.len());
    for a in &g.arcs {
        w.word(a.target);
        w.word(a.weight);
        w.word(a.ext_len);
        w.u64(a.first_char.map_or(u64::MAX, u64::from));
    }
    w.buf
}

fn read_grammar(r: &mut Reader) -> Result<RevGrammar> {
    let n = r.word()?;
    let cdawg_node = r.words()?;
    let arc_offset = r.words()?;
    let arcs = r.vec(32, |r| {
        Ok(RevArc {
            target: r.word()?,
            weight: r.word()?,
            ext_len: r.word()?,
            first_char: match r.u64()? {
                u64::MAX => None,
                c => Some(u32::try_from(c).map_err(|_| corrupt("symbol out of range"))?),
            },
        })
    })?;
    r.done()?;
    let k = cdawg_node.len();
    if arc_offset.len() != k + 1
        || arc_offset.last() != Some(&arcs.len())
        || arc_offset.windows(2).any(|w| w[0] > w[1])
        || arcs.iter().any(|a| a.target >= k)
    {
        return Err(corrupt("inconsistent REVGRAM section"));
    }
    Ok(RevGrammar {
        n,
        cdawg_node,
        arc_offset,
        arcs,
    })
}

fn write_hpd(h: &HpdIndex) -> Vec<u8> {
    let mut w = Writer::default();
    w.word(h.source);
    w.word(h.sink);
    w.word(h.real_nodes);
    w.words(&h.real);
    w.len(h.child.len());
    for v in 0..h.child.len() {
        for side in 0..2 {
            w.word(h.child[v][side]);
            w.word(h.payload[v][side]);
        }
        w.u8(h.heavy_right[v] as u8);
    }
    for xs in [&h.leaves, &h.tdepth, &h.lcount, &h.rcount, &h.lptr, &h.rptr, &h.tail] {
        w.words(xs);
    }
    w.len(h.channels.len());
    for ch in &h.channels {
        w.len(ch.count.len());
        for (c, a) in ch.count.iter().zip(&ch.arc) {
            w.i64(*c);
            w.i64(a[0]);
            w.i64(a[1]);
        }
    }
    w.buf
}

fn read_hpd(r: &mut Reader, la: LaKind) -> Result<HpdIndex> {
    let source = r.word()?;
    let sink = r.word()?;
    let real_nodes = r.word()?;
    let real = r.words()?;
    let mut child = Vec::new();
    let mut payload = Vec::new();
    let mut heavy_right = Vec::new();
    let total = r.len(33)?;
    for _ in 0..total {
        let (c0, p0, c1, p1) = (r.word()?, r.word()?, r.word()?, r.word()?);
        child.push([c0, c1]);
        payload.push([p0, p1]);
        heavy_right.push(r.u8()? != 0);
    }
    let mut arrays = Vec::with_capacity(7);
    for _ in 0..7 {
        let xs = r.words()?;
        if xs.len() != total {
            return Err(corrupt("inconsistent HPD section"));
        }
        arrays.push(xs);
    }
    let channels = r.vec(8, |r| {
        let len = r.len(24)?;
        let mut count = Vec::with_capacity(len);
        let mut arc = Vec::with_capacity(len);
        for _ in 0..len {
            count.push(r.i64()?);
            arc.push([r.i64()?, r.i64()?]);
        }
        Ok(Channel { count, arc })
    })?;
    r.done()?;
    let [leaves, tdepth, lcount, rcount, lptr, rptr, tail]: [Vec<usize>; 7] = arrays.try_into().unwrap();
    let consistent = source < total
        && sink < total
        && real_nodes <= total
        && real.len() == total
        && real.iter().all(|&v| v < real_nodes)
        && (0..total).all(|v| v == sink || child[v].iter().all(|&c| c < total))
        && channels.iter().all(|c| c.count.len() == total)
        && (0..total).all(|v| v == sink || tdepth[v] == tdepth[child[v][heavy_right[v] as usize]] + 1)
        && tdepth[sink] == 0;
    if !consistent {
        return Err(corrupt("inconsistent HPD section"));
    }
    let parent: Vec<usize> = (0..total)
        .map(|v| if v == sink { sink } else { child[v][heavy_right[v] as usize] })
        .collect();
    let la = LevelAncestor::build(la, &parent, &tdepth);
    Ok(HpdIndex {
        func: Sum,
        source,
        sink,
        real_nodes,
        real,
        child,
        payload,
        leaves,
        heavy_right,
        tdepth,
        lcount,
        rcount,
        lptr,
        rptr,
        tail,
        la,
        channels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cst::CstOptions;
    use crate::textkit::Text;

    fn sample(mode: Mode, la: LaKind) -> Cst {
        let t = Text::normalize(b"AGAGCGAGAGCGCGC").unwrap();
        Cst::build_with(&t, CstOptions { mode, level_ancestor: la }).unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        for mode in [Mode::Full, Mode::Lite] {
            for la in [LaKind::BinaryLifting, LaKind::Ladder] {
                let cst = sample(mode, la);
                let bytes = cst.to_bytes();
                let back = Cst::from_bytes(&bytes).unwrap();
                assert_eq!(back, cst);
                assert_eq!(back.to_bytes(), bytes);
            }
        }
    }

    #[test]
    fn corruption_is_detected() {
        let bytes = sample(Mode::Full, LaKind::BinaryLifting).to_bytes();
        for at in [0, 7, 40, bytes.len() / 2, bytes.len() - 1] {
            let mut bad = bytes.clone();
            bad[at] ^= 0x10;
            assert!(matches!(Cst::from_bytes(&bad), Err(Error::Corrupt(_))), "flip at {at}");
        }
        assert!(matches!(Cst::from_bytes(&bytes[..bytes.len() - 3]), Err(Error::Corrupt(_))));
        assert!(matches!(Cst::from_bytes(b""), Err(Error::Corrupt(_))));
    }

    #[test]
    fn version_mismatch_is_rejected() {
        let mut bytes = sample(Mode::Lite, LaKind::BinaryLifting).to_bytes();
        bytes[5..9].copy_from_slice(&2u32.to_le_bytes());
        let body = bytes.len() - 4;
        let crc = crc32fast::hash(&bytes[..body]);
        bytes[body..].copy_from_slice(&crc.to_le_bytes());
        assert_eq!(
            Cst::from_bytes(&bytes),
            Err(Error::Version {
                found: 2,
                expected: VERSION
            })
        );
    }
}
