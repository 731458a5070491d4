//! The Hermitian curve X^{q+1} = Y^q Z + Y Z^q over F_{q^6}.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::plane::{ProjLine, ProjPoint};

const CACHE_MAGIC: &[u8; 8] = b"HERMPTS1";

/// Solver for the F_q-linear equation y^q + y = c.
pub struct NormSolver {
    kernel: Vec<Elt>,
    particular: Vec<u32>,
}

impl NormSolver {
    pub fn new(ctx: &FieldCtx) -> Self {
        let mut kernel = Vec::new();
        let mut particular = vec![u32::MAX; ctx.size() as usize];
        for y in ctx.elements() {
            let img = ctx.add(ctx.frob(y, 1), y);
            if img.is_zero() {
                kernel.push(y);
            }
            let slot = &mut particular[img.index() as usize];
            if *slot == u32::MAX {
                *slot = y.index();
            }
        }
        NormSolver { kernel, particular }
    }

    pub fn kernel(&self) -> &[Elt] {
        &self.kernel
    }

    pub fn is_solvable(&self, c: Elt) -> bool {
        self.particular[c.index() as usize] != u32::MAX
    }

    /// All y with y^q + y = c, in kernel order.
    pub fn solutions(&self, ctx: &FieldCtx, c: Elt) -> Vec<Elt> {
        let p = self.particular[c.index() as usize];
        if p == u32::MAX {
            return Vec::new();
        }
        let y0 = ctx.elem(p).expect("stored encoding is valid");
        self.kernel.iter().map(|&k| ctx.add(y0, k)).collect()
    }
}

/// The F_{q^6}-rational points of the curve: the affine ones plus (0:1:0).
#[derive(Clone)]
pub struct CurvePointSet {
    q: u32,
    n: usize,
    affine: Vec<(Elt, Elt)>,
    member: Vec<u64>,
}

impl CurvePointSet {
    fn from_affine(ctx: &FieldCtx, mut affine: Vec<(Elt, Elt)>) -> Self {
        affine.sort();
        let n = ctx.size() as usize;
        let mut member = vec![0u64; (n * n).div_ceil(64)];
        for &(x, y) in &affine {
            let k = x.index() as usize * n + y.index() as usize;
            member[k / 64] |= 1 << (k % 64);
        }
        CurvePointSet {
            q: ctx.q(),
            n,
            affine,
            member,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Affine points sorted by encoding.
    pub fn affine(&self) -> &[(Elt, Elt)] {
        &self.affine
    }

    /// Number of points including the point at infinity.
    pub fn len(&self) -> usize {
        self.affine.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains_affine(&self, x: Elt, y: Elt) -> bool {
        let k = x.index() as usize * self.n + y.index() as usize;
        self.member[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn contains(&self, ctx: &FieldCtx, p: &ProjPoint) -> bool {
        match p.to_affine(ctx) {
            Some((x, y)) => self.contains_affine(x, y),
            None => *p == ProjPoint::vertical_direction(),
        }
    }

    /// All points as canonical projective points, sorted.
    pub fn points(&self, ctx: &FieldCtx) -> Vec<ProjPoint> {
        let mut v: Vec<ProjPoint> = self.affine.iter().map(|&(x, y)| ProjPoint::affine(ctx, x, y)).collect();
        v.push(ProjPoint::vertical_direction());
        v.sort();
        v
    }
}

/// q^6 + 1 + q(q-1)q^3.
pub fn expected_count(q: u64) -> u64 {
    q.pow(6) + 1 + q * (q - 1) * q.pow(3)
}

pub fn on_curve(ctx: &FieldCtx, p: &ProjPoint) -> bool {
    let lhs = ctx.pow(p.x, ctx.q() as u64 + 1);
    let rhs = ctx.add(ctx.mul(ctx.frob(p.y, 1), p.z), ctx.mul(p.y, ctx.frob(p.z, 1)));
    lhs == rhs
}

pub fn enumerate_curve(ctx: &FieldCtx) -> Result<CurvePointSet> {
    let solver = NormSolver::new(ctx);
    let q1 = ctx.q() as u64 + 1;
    let affine: Vec<(Elt, Elt)> = ctx
        .elements()
        .flat_map(|x| {
            let c = ctx.pow(x, q1);
            solver.solutions(ctx, c).into_iter().map(move |y| (x, y))
        })
        .collect();
    let got = affine.len() as u64 + 1;
    let expected = expected_count(ctx.q() as u64);
    if got != expected {
        return Err(Error::CountMismatch { expected, got });
    }
    Ok(CurvePointSet::from_affine(ctx, affine))
}

fn cache_path(ctx: &FieldCtx, dir: &Path) -> PathBuf {
    let m: String = ctx
        .modulus()
        .iter()
        .map(|c| format!("{c:x}"))
        .collect::<Vec<_>>()
        .join("-");
    dir.join(format!("hermitian_p{}_h{}_{}.bin", ctx.p(), ctx.h(), m))
}

pub fn write_cache(ctx: &FieldCtx, arc: &CurvePointSet, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(ctx, dir);
    let mut buf = Vec::new();
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&ctx.p().to_le_bytes());
    buf.extend_from_slice(&ctx.h().to_le_bytes());
    buf.extend_from_slice(&(ctx.modulus().len() as u32).to_le_bytes());
    for c in ctx.modulus() {
        buf.extend_from_slice(&c.to_le_bytes());
    }
    buf.extend_from_slice(&(arc.len() as u64).to_le_bytes());
    for &(x, y) in arc.affine() {
        buf.extend_from_slice(&x.index().to_le_bytes());
        buf.extend_from_slice(&y.index().to_le_bytes());
    }
    fs::File::create(&path)?.write_all(&buf)?;
    Ok(path)
}

pub fn read_cache(ctx: &FieldCtx, dir: &Path) -> Result<Option<CurvePointSet>> {
    let path = cache_path(ctx, dir);
    if !path.exists() {
        return Ok(None);
    }
    let mut buf = Vec::new();
    fs::File::open(&path)?.read_to_end(&mut buf)?;
    let mut words = Reader { buf: &buf, pos: 0 };
    if words.take(8)? != CACHE_MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let p = words.u32()?;
    let h = words.u32()?;
    let len = words.u32()? as usize;
    let modulus: Vec<u32> = (0..len).map(|_| words.u32()).collect::<Result<_>>()?;
    if p != ctx.p() || h != ctx.h() || modulus != ctx.modulus() {
        return Err(Error::Cache("header does not match the field".into()));
    }
    let count = words.u64()?;
    let mut affine = Vec::with_capacity(count as usize);
    for _ in 1..count {
        let x = ctx.elem(words.u32()?)?;
        let y = ctx.elem(words.u32()?)?;
        affine.push((x, y));
    }
    let expected = expected_count(ctx.q() as u64);
    if count != expected {
        return Err(Error::CountMismatch { expected, got: count });
    }
    Ok(Some(CurvePointSet::from_affine(ctx, affine)))
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let s = self
            .buf
            .get(self.pos..self.pos + n)
            .ok_or_else(|| Error::Cache("truncated file".into()))?;
        self.pos += n;
        Ok(s)
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

/// Loads the point set from `dir` when present, otherwise enumerates and
/// stores it there.
pub fn enumerate_cached(ctx: &FieldCtx, dir: Option<&Path>) -> Result<CurvePointSet> {
    let Some(dir) = dir else {
        return enumerate_curve(ctx);
    };
    if let Some(arc) = read_cache(ctx, dir)? {
        return Ok(arc);
    }
    let arc = enumerate_curve(ctx)?;
    write_cache(ctx, &arc, dir)?;
    Ok(arc)
}

/// Number of curve points on a line.
pub fn line_character(ctx: &FieldCtx, arc: &CurvePointSet, l: &ProjLine) -> usize {
    if !l.v.is_zero() {
        // Y = -(u X + w)/v; its point at infinity (v : -u : 0) is off the curve
        let vi = ctx.inv(l.v).expect("nonzero");
        let m = ctx.neg(ctx.mul(l.u, vi));
        let c = ctx.neg(ctx.mul(l.w, vi));
        ctx.elements()
            .filter(|&x| arc.contains_affine(x, ctx.add(ctx.mul(m, x), c)))
            .count()
    } else if !l.u.is_zero() {
        let x = ctx.neg(ctx.mul(l.w, ctx.inv(l.u).expect("nonzero")));
        1 + ctx.elements().filter(|&y| arc.contains_affine(x, y)).count()
    } else {
        1
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CharacterSpectrum {
    pub histogram: BTreeMap<usize, u64>,
}

impl CharacterSpectrum {
    pub fn total_lines(&self) -> u64 {
        self.histogram.values().sum()
    }
    /// Sum over lines of the character.
    pub fn incidence_sum(&self) -> u64 {
        self.histogram.iter().map(|(&k, &v)| k as u64 * v).sum()
    }
    /// Sum over lines of C(character, 2).
    pub fn pair_sum(&self) -> u64 {
        self.histogram
            .iter()
            .map(|(&k, &v)| (k as u64 * (k as u64).saturating_sub(1) / 2) * v)
            .sum()
    }
}

#[derive(Clone, Copy, Debug)]
pub enum SpectrumMode {
    Exhaustive,
    Sampled { lines: usize, seed: u64 },
}

/// Default largest q for the exhaustive spectrum.
pub const EXHAUSTIVE_SPECTRUM_MAX_Q: u32 = 3;

/// Arc-point counts of the lines Y = m X + c, indexed by c, for one slope m.
pub fn slope_line_counts(ctx: &FieldCtx, arc: &CurvePointSet, m: Elt) -> Vec<u16> {
    let mut counts = vec![0u16; ctx.size() as usize];
    for &(x, y) in arc.affine() {
        let c = ctx.sub(y, ctx.mul(m, x));
        counts[c.index() as usize] += 1;
    }
    counts
}

/// Arc-point counts of the vertical lines X = c, infinite point included.
pub fn vertical_line_counts(ctx: &FieldCtx, arc: &CurvePointSet) -> Vec<u16> {
    let mut counts = vec![1u16; ctx.size() as usize];
    for &(x, _) in arc.affine() {
        counts[x.index() as usize] += 1;
    }
    counts
}

pub fn character_spectrum(ctx: &FieldCtx, arc: &CurvePointSet, mode: SpectrumMode) -> Result<CharacterSpectrum> {
    let q = ctx.q() as usize;
    let mut spectrum = CharacterSpectrum::default();
    let check = |size: usize, line: ProjLine| -> Result<()> {
        if [0, 1, 2, q + 1].contains(&size) {
            Ok(())
        } else {
            Err(Error::CharacterViolation {
                line: line.display(ctx),
                size,
            })
        }
    };
    match mode {
        SpectrumMode::Exhaustive => {
            let per_slope: Vec<Result<BTreeMap<usize, u64>>> = ctx
                .elements()
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|m| {
                    let mut h = BTreeMap::new();
                    for (c, &k) in slope_line_counts(ctx, arc, m).iter().enumerate() {
                        let k = k as usize;
                        if ![0, 1, 2, q + 1].contains(&k) {
                            let c = ctx.elem(c as u32).expect("index in range");
                            check(k, ProjLine::with_slope(ctx, m, c))?;
                        }
                        *h.entry(k).or_insert(0) += 1;
                    }
                    Ok(h)
                })
                .collect();
            for h in per_slope {
                for (k, v) in h? {
                    *spectrum.histogram.entry(k).or_insert(0) += v;
                }
            }
            for (c, &k) in vertical_line_counts(ctx, arc).iter().enumerate() {
                let c = ctx.elem(c as u32).expect("index in range");
                check(k as usize, ProjLine::vertical(ctx, c))?;
                *spectrum.histogram.entry(k as usize).or_insert(0) += 1;
            }
            *spectrum.histogram.entry(1).or_insert(0) += 1;

            let n = ctx.size() as u64;
            let size = arc.len() as u64;
            if spectrum.total_lines() != n * n + n + 1 {
                return Err(Error::ClaimFailed("spectrum does not cover every line".into()));
            }
            if spectrum.incidence_sum() != size * (n + 1) {
                return Err(Error::ClaimFailed("incidence double count".into()));
            }
            if spectrum.pair_sum() != size * (size - 1) / 2 {
                return Err(Error::ClaimFailed("pair double count".into()));
            }
        }
        SpectrumMode::Sampled { lines, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = ctx.size();
            for _ in 0..lines {
                let l = loop {
                    let c = [0; 3].map(|_| ctx.elem(rng.gen_range(0..n)).expect("in range"));
                    if let Some(l) = ProjLine::new(ctx, c[0], c[1], c[2]) {
                        break l;
                    }
                };
                let k = line_character(ctx, arc, &l);
                check(k, l)?;
                *spectrum.histogram.entry(k).or_insert(0) += 1;
            }
        }
    }
    Ok(spectrum)
}
