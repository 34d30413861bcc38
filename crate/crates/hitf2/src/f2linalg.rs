//! Exact linear algebra over GF(2) against a totally ordered monomial
//! column universe: incremental echelonization, rank, membership with
//! witness, kernel computation, intersection with coordinate
//! subspaces, and a bit-exact on-disk cache.
//!
//! Rows are dense machine-word bitsets. The *leading index* of a row is
//! its smallest set column; because column universes are sorted
//! descending under the monomial order, the leading index corresponds
//! to the **largest** monomial in the row — the pivot choice forced by
//! admissibility semantics.
//!
//! # Concurrency contract
//!
//! Row generation may be parallel; insertion into one [`EchelonBasis`]
//! is a single-writer operation; after construction the basis is
//! read-only and freely shareable.

use crate::f2core::{Monomial, Polynomial};
use std::collections::{BTreeMap, HashMap};
use std::io::{Read as _, Write as _};
use std::path::Path;

/// A strictly ordered, duplicate-free list of monomials realizing a
/// coordinate system: column `0` is the first (largest) monomial.
#[derive(Clone)]
pub struct ColumnUniverse {
    cols: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl ColumnUniverse {
    /// Builds a universe from monomials, sorting descending under
    /// [`Monomial::graded_cmp`] (largest monomial = column 0).
    ///
    /// # Panics
    /// On duplicate monomials or mixed variable counts/degrees.
    pub fn descending(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut cols: Vec<Monomial> = monomials.into_iter().collect();
        cols.sort_by(|a, b| b.graded_cmp(a));
        Self::from_sorted(cols)
    }

    /// Builds a universe from an already-ordered column list (any
    /// caller-supplied total order).
    ///
    /// # Panics
    /// On duplicates.
    pub fn from_sorted(cols: Vec<Monomial>) -> Self {
        let mut index = HashMap::with_capacity(cols.len());
        for (i, m) in cols.iter().enumerate() {
            let prev = index.insert(m.clone(), i);
            assert!(prev.is_none(), "duplicate column {m}");
        }
        ColumnUniverse { cols, index }
    }

    /// Number of columns.
    pub fn len(&self) -> usize {
        self.cols.len()
    }

    /// True iff there are no columns.
    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// The column index of `m`, if present.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The monomial at column `i`.
    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.cols[i]
    }

    /// All columns in order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.cols
    }

    /// Encodes a polynomial as a row.
    ///
    /// With `truncate = false`, every term must be a column (returns
    /// `None` otherwise). With `truncate = true`, terms outside the
    /// universe are dropped — the coordinate projection used when
    /// working modulo a span of ignored columns.
    pub fn row_of(&self, f: &Polynomial, truncate: bool) -> Option<Row> {
        let mut row = Row::zero(self.len());
        for t in f.terms() {
            match self.index_of(t) {
                Some(i) => row.set(i),
                None if truncate => {}
                None => return None,
            }
        }
        Some(row)
    }

    /// Decodes a row back into a polynomial (`k` taken from column 0;
    /// empty universes decode only the zero polynomial of `k = 1`).
    pub fn polynomial_of(&self, row: &Row) -> Polynomial {
        let k = self.cols.first().map_or(1, |m| m.k());
        Polynomial::from_terms(k, row.support().into_iter().map(|i| self.cols[i].clone()))
    }
}

/// A GF(2) row vector over `ncols` columns, stored as a dense bitset.
///
/// ```
/// use hitf2::f2linalg::Row;
/// let mut r = Row::from_support(10, &[3, 7]);
/// assert_eq!(r.leading(), Some(3));
/// r.xor_in(&Row::from_support(10, &[3]));
/// assert_eq!(r.support(), vec![7]);
/// ```
#[derive(Clone, Eq)]
pub struct Row {
    ncols: usize,
    words: Vec<u64>,
    /// Upper bound on the number of leading words that may be nonzero;
    /// words at index `hi` and beyond are guaranteed zero. Lets XOR and
    /// scan loops skip the dead tail of sparse-tailed rows.
    hi: usize,
}

impl PartialEq for Row {
    fn eq(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.words == other.words
    }
}

impl Row {
    /// The zero row.
    pub fn zero(ncols: usize) -> Self {
        Row {
            ncols,
            words: vec![0; ncols.div_ceil(64)],
            hi: 0,
        }
    }

    /// A row with the given support.
    pub fn from_support(ncols: usize, support: &[usize]) -> Self {
        let mut r = Row::zero(ncols);
        for &i in support {
            r.set(i);
        }
        r
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Sets bit `i`.
    pub fn set(&mut self, i: usize) {
        assert!(i < self.ncols, "column {i} out of range {}", self.ncols);
        self.words[i / 64] |= 1 << (i % 64);
        self.hi = self.hi.max(i / 64 + 1);
    }

    /// Flips bit `i`.
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.ncols);
        self.words[i / 64] ^= 1 << (i % 64);
        self.hi = self.hi.max(i / 64 + 1);
    }

    /// Reads bit `i`.
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// `self ^= other`.
    pub fn xor_in(&mut self, other: &Row) {
        debug_assert_eq!(self.ncols, other.ncols);
        let hi = other.hi;
        for (a, b) in self.words[..hi].iter_mut().zip(&other.words[..hi]) {
            *a ^= b;
        }
        self.hi = self.hi.max(hi);
    }

    /// `self ^= other`, touching only words from `i / 64` on (valid
    /// when `other` has no set bits before `i`).
    pub(crate) fn xor_in_from(&mut self, other: &Row, i: usize) {
        let hi = other.hi;
        let w0 = (i / 64).min(hi);
        for (a, b) in self.words[w0..hi].iter_mut().zip(&other.words[w0..hi]) {
            *a ^= b;
        }
        self.hi = self.hi.max(hi);
    }

    /// True iff all bits are clear.
    pub fn is_zero(&self) -> bool {
        self.words[..self.hi].iter().all(|&w| w == 0)
    }

    /// The smallest set column index, if any.
    pub fn leading(&self) -> Option<usize> {
        for (wi, &w) in self.words[..self.hi].iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// The smallest set column index at or after `from`, if any.
    pub fn leading_from(&self, from: usize) -> Option<usize> {
        let w0 = from / 64;
        if w0 >= self.hi {
            return None;
        }
        for (off, &w) in self.words[w0..self.hi].iter().enumerate() {
            let mut w = w;
            if off == 0 {
                w &= !0u64 << (from % 64);
            }
            if w != 0 {
                return Some((w0 + off) * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// All set column indices, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words[..self.hi].iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> usize {
        self.words[..self.hi].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The sub-row on columns `cut..`, reindexed to start at 0 (valid
    /// only when no bits are set before `cut`).
    pub fn suffix(&self, cut: usize) -> Row {
        debug_assert!(self.leading().is_none_or(|l| l >= cut));
        let mut out = Row::zero(self.ncols - cut);
        for i in self.support() {
            out.set(i - cut);
        }
        out
    }
}

impl std::fmt::Debug for Row {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Row{:?}/{}", self.support(), self.ncols)
    }
}

/// Outcome of [`EchelonBasis::insert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insert {
    /// The row reduced to zero: already in the span.
    Absorbed,
    /// The row contributed a new pivot at this column.
    NewPivot(usize),
}

/// Outcome of [`EchelonBasis::membership`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Residual is zero: the row lies in the span.
    InSpan,
    /// The fully reduced nonzero residual (a canonical witness).
    OutOfSpan(Row),
}

/// The configured memory cap was hit during echelonization.
#[derive(Debug, Clone, thiserror::Error)]
#[error("memory budget exceeded: echelon basis needs more than {budget} bytes (rank {rank}); \
         raise the budget or use the weight-stratified path")]
pub struct BudgetExceeded {
    /// The configured cap in bytes.
    pub budget: u64,
    /// Rank reached when the cap was hit.
    pub rank: usize,
}

/// An incrementally built row-echelon basis of a GF(2) row space.
///
/// Stored rows are in echelon form: each row is keyed by its leading
/// index and no two rows share one. [`EchelonBasis::reduce`] computes
/// the canonical remainder of any row modulo the span in one ascending
/// scan; [`EchelonBasis::back_substitute`] upgrades the store to fully
/// reduced (RREF) form when canonical stored rows are wanted.
///
/// ```
/// use hitf2::f2linalg::{EchelonBasis, Insert, Membership, Row};
/// let mut b = EchelonBasis::new(4);
/// assert_eq!(b.insert(Row::from_support(4, &[0, 1])).unwrap(), Insert::NewPivot(0));
/// assert_eq!(b.insert(Row::from_support(4, &[1])).unwrap(), Insert::NewPivot(1));
/// assert_eq!(b.insert(Row::from_support(4, &[0])).unwrap(), Insert::Absorbed);
/// assert_eq!(b.rank(), 2);
/// assert!(matches!(b.membership(&Row::from_support(4, &[2])), Membership::OutOfSpan(_)));
/// ```
pub struct EchelonBasis {
    ncols: usize,
    pivots: BTreeMap<usize, Row>,
    budget_bytes: Option<u64>,
}

impl EchelonBasis {
    /// An empty basis over `ncols` columns, no memory cap.
    pub fn new(ncols: usize) -> Self {
        EchelonBasis {
            ncols,
            pivots: BTreeMap::new(),
            budget_bytes: None,
        }
    }

    /// An empty basis with a memory cap (bytes) on stored rows.
    pub fn with_budget(ncols: usize, budget_bytes: u64) -> Self {
        EchelonBasis {
            ncols,
            pivots: BTreeMap::new(),
            budget_bytes: Some(budget_bytes),
        }
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Current rank (= number of stored pivot rows).
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Approximate bytes held by stored rows.
    pub fn memory_bytes(&self) -> u64 {
        (self.pivots.len() as u64) * (self.ncols.div_ceil(64) as u64) * 8
    }

    /// The sorted pivot column indices.
    pub fn pivot_indices(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// True iff column `i` is a pivot.
    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivots.contains_key(&i)
    }

    /// Iterates over `(pivot index, row)` pairs in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &Row)> {
        self.pivots.iter().map(|(&i, r)| (i, r))
    }

    /// The canonical remainder of `row` modulo the span: one ascending
    /// scan over set bits, XOR-ing in the matching pivot row (which
    /// only touches strictly larger indices).
    pub fn reduce(&self, row: &Row) -> Row {
        let mut r = row.clone();
        self.reduce_in_place(&mut r);
        r
    }

    fn reduce_in_place(&self, r: &mut Row) {
        let mut i = 0usize;
        while let Some(lead) = r.leading_from(i) {
            if let Some(p) = self.pivots.get(&lead) {
                r.xor_in_from(p, lead);
                // The pivot row's leading bit cancels; scanning resumes
                // just past it.
                i = lead + 1;
            } else {
                i = lead + 1;
            }
            if i >= self.ncols {
                break;
            }
        }
    }

    /// Reduces and, if a nonzero remainder survives, stores it under
    /// its leading index. Rank grows by 0 or 1.
    pub fn insert(&mut self, row: Row) -> Result<Insert, BudgetExceeded> {
        let mut r = row;
        self.reduce_in_place(&mut r);
        match r.leading() {
            None => Ok(Insert::Absorbed),
            Some(lead) => {
                if let Some(budget) = self.budget_bytes {
                    if self.memory_bytes() + (self.ncols.div_ceil(64) as u64) * 8 > budget {
                        return Err(BudgetExceeded {
                            budget,
                            rank: self.rank(),
                        });
                    }
                }
                self.pivots.insert(lead, r);
                Ok(Insert::NewPivot(lead))
            }
        }
    }

    /// Inserts an already-reduced row (as produced by [`Self::reduce`]
    /// against the current state). Single-writer fast path for
    /// batch-parallel reduction: callers reduce many rows in parallel
    /// against a frozen basis, then insert sequentially (each insert
    /// re-reduces internally, which is cheap for mostly-reduced rows).
    pub fn insert_reduced(&mut self, row: Row) -> Result<Insert, BudgetExceeded> {
        self.insert(row)
    }

    /// Span membership with canonical witness.
    pub fn membership(&self, row: &Row) -> Membership {
        let r = self.reduce(row);
        if r.is_zero() {
            Membership::InSpan
        } else {
            Membership::OutOfSpan(r)
        }
    }

    /// Upgrades the store to fully reduced (RREF) form: no stored
    /// row's support contains another row's pivot.
    pub fn back_substitute(&mut self) {
        let keys: Vec<usize> = self.pivots.keys().copied().collect();
        // Process pivots from the right; each row gets every later
        // pivot eliminated from it.
        for (pos, &p) in keys.iter().enumerate().rev() {
            let row = self.pivots[&p].clone();
            for &q in &keys[..pos] {
                let target = self.pivots.get_mut(&q).unwrap();
                if target.get(p) {
                    target.xor_in_from(&row, p);
                }
            }
        }
    }

    /// Expresses a span member in terms of the stored rows: the set of
    /// pivot indices whose rows XOR to `row` (requires membership).
    pub fn combination_of(&self, row: &Row) -> Option<Vec<usize>> {
        let mut r = row.clone();
        let mut used = Vec::new();
        let mut i = 0usize;
        while let Some(lead) = r.leading_from(i) {
            match self.pivots.get(&lead) {
                Some(p) => {
                    r.xor_in_from(p, lead);
                    used.push(lead);
                    i = lead + 1;
                }
                None => return None,
            }
            if i >= self.ncols {
                break;
            }
        }
        if r.is_zero() {
            Some(used)
        } else {
            None
        }
    }
}

/// The echelon basis of `span(rows) ∩ span{columns ≥ cut}`, returned
/// over the reindexed suffix universe (`ncols − cut` columns).
///
/// Columns `< cut` are eliminated first simply because the echelon
/// pivots are chosen left to right: every echelon row whose leading
/// index is `≥ cut` is supported entirely in the suffix, and those rows
/// are exactly a basis of the intersection.
///
/// ```
/// use hitf2::f2linalg::{intersect_with_suffix, Row};
/// // Rows e0+e2 and e0: their span contains e2, supported in cols ≥ 2.
/// let rows = vec![Row::from_support(4, &[0, 2]), Row::from_support(4, &[0])];
/// let b = intersect_with_suffix(rows, 2);
/// assert_eq!(b.rank(), 1);
/// assert!(b.is_pivot(0)); // e2 reindexed to suffix column 0
/// ```
pub fn intersect_with_suffix(rows: impl IntoIterator<Item = Row>, cut: usize) -> EchelonBasis {
    let mut full: Option<EchelonBasis> = None;
    for row in rows {
        let b = full.get_or_insert_with(|| EchelonBasis::new(row.ncols()));
        b.insert(row).expect("no budget configured");
    }
    match full {
        None => EchelonBasis::new(0),
        Some(b) => {
            let mut out = EchelonBasis::new(b.ncols() - cut);
            for (lead, row) in b.rows() {
                if lead >= cut {
                    out.insert(row.suffix(cut)).expect("no budget configured");
                }
            }
            out
        }
    }
}

/// A basis of the null space `{v : M v = 0}` of the matrix whose rows
/// are given over `ncols` columns. `dim kernel + rank = ncols`.
///
/// ```
/// use hitf2::f2linalg::{kernel, Row};
/// // Identity 2x2: trivial kernel.
/// let id = vec![Row::from_support(2, &[0]), Row::from_support(2, &[1])];
/// assert!(kernel(&id, 2).is_empty());
/// // Zero matrix: full kernel.
/// assert_eq!(kernel(&[], 3).len(), 3);
/// ```
pub fn kernel(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut basis = EchelonBasis::new(ncols);
    for r in rows {
        basis.insert(r.clone()).expect("no budget configured");
    }
    basis.back_substitute();
    let pivot_cols = basis.pivot_indices();
    let is_pivot: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut out = Vec::new();
    for f in 0..ncols {
        if is_pivot.contains(&f) {
            continue;
        }
        // v = e_f + Σ_{pivot p : row_p has bit f} e_p.
        let mut v = Row::zero(ncols);
        v.set(f);
        for (p, row) in basis.rows() {
            if row.get(f) {
                v.set(p);
            }
        }
        out.push(v);
    }
    out
}

// ---------------------------------------------------------------------------
// On-disk cache
// ---------------------------------------------------------------------------

/// Cache format magic: `HITF2\0`.
pub const CACHE_MAGIC: &[u8; 6] = b"HITF2\0";
/// Cache format version.
pub const CACHE_VERSION: u16 = 1;

/// Metadata + row supports of a cached echelon basis.
pub struct CacheFile {
    /// Variable count.
    pub k: u8,
    /// Degree of the stratum.
    pub degree: u32,
    /// Weight vector entries (empty = full-degree computation).
    pub weight: Vec<u8>,
    /// Hash identifying the column order / generator scheme.
    pub tag_hash: u64,
    /// Row supports, each sorted ascending.
    pub rows: Vec<Vec<u32>>,
}

/// A cache read failure.
#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    /// Underlying I/O failure.
    #[error("cache I/O error: {0}")]
    Io(#[from] std::io::Error),
    /// Structural mismatch (bad magic, version, truncation, checksum).
    #[error("cache format error: {0}")]
    Format(String),
}

/// CRC-32 (IEEE, polynomial 0xEDB88320) of `data`.
pub fn crc32(data: &[u8]) -> u32 {
    let mut crc = !0u32;
    for &b in data {
        crc ^= b as u32;
        for _ in 0..8 {
            let mask = (crc & 1).wrapping_neg();
            crc = (crc >> 1) ^ (0xEDB8_8320 & mask);
        }
    }
    !crc
}

/// Serializes a cache file to bytes (magic, version, k, degree, weight,
/// tag hash, rank, per-row supports, trailing CRC-32 of everything
/// before it; all integers little-endian).
pub fn cache_to_bytes(c: &CacheFile) -> Vec<u8> {
    let mut buf = Vec::new();
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    buf.push(c.k);
    buf.extend_from_slice(&c.degree.to_le_bytes());
    buf.push(c.weight.len() as u8);
    buf.extend_from_slice(&c.weight);
    buf.extend_from_slice(&c.tag_hash.to_le_bytes());
    buf.extend_from_slice(&(c.rows.len() as u32).to_le_bytes());
    for row in &c.rows {
        buf.extend_from_slice(&(row.len() as u32).to_le_bytes());
        for &i in row {
            buf.extend_from_slice(&i.to_le_bytes());
        }
    }
    let crc = crc32(&buf);
    buf.extend_from_slice(&crc.to_le_bytes());
    buf
}

/// Parses cache bytes, validating magic, version, and checksum.
pub fn cache_from_bytes(data: &[u8]) -> Result<CacheFile, CacheError> {
    struct Cur<'a>(&'a [u8], usize);
    impl<'a> Cur<'a> {
        fn take(&mut self, n: usize) -> Result<&'a [u8], CacheError> {
            if self.1 + n > self.0.len() {
                return Err(CacheError::Format("truncated".into()));
            }
            let s = &self.0[self.1..self.1 + n];
            self.1 += n;
            Ok(s)
        }
        fn u8(&mut self) -> Result<u8, CacheError> {
            Ok(self.take(1)?[0])
        }
        fn u16(&mut self) -> Result<u16, CacheError> {
            Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
        }
        fn u32(&mut self) -> Result<u32, CacheError> {
            Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
        }
        fn u64(&mut self) -> Result<u64, CacheError> {
            Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
        }
    }
    if data.len() < 4 {
        return Err(CacheError::Format("truncated".into()));
    }
    let (body, crc_bytes) = data.split_at(data.len() - 4);
    let stored = u32::from_le_bytes(crc_bytes.try_into().unwrap());
    if crc32(body) != stored {
        return Err(CacheError::Format("checksum mismatch".into()));
    }
    let mut c = Cur(body, 0);
    if c.take(6)? != CACHE_MAGIC {
        return Err(CacheError::Format("bad magic".into()));
    }
    let version = c.u16()?;
    if version != CACHE_VERSION {
        return Err(CacheError::Format(format!("unsupported version {version}")));
    }
    let k = c.u8()?;
    let degree = c.u32()?;
    let wlen = c.u8()? as usize;
    let weight = c.take(wlen)?.to_vec();
    let tag_hash = c.u64()?;
    let nrows = c.u32()? as usize;
    let mut rows = Vec::with_capacity(nrows);
    for _ in 0..nrows {
        let len = c.u32()? as usize;
        let mut row = Vec::with_capacity(len);
        let mut prev: Option<u32> = None;
        for _ in 0..len {
            let v = c.u32()?;
            if prev.is_some_and(|p| p >= v) {
                return Err(CacheError::Format("row support not sorted".into()));
            }
            prev = Some(v);
            row.push(v);
        }
        rows.push(row);
    }
    if c.1 != body.len() {
        return Err(CacheError::Format("trailing garbage".into()));
    }
    Ok(CacheFile {
        k,
        degree,
        weight,
        tag_hash,
        rows,
    })
}

/// Writes a cache file atomically (temp file in the same directory,
/// then rename).
pub fn write_cache(path: &Path, c: &CacheFile) -> Result<(), CacheError> {
    let bytes = cache_to_bytes(c);
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("cache"),
        std::process::id()
    ));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(&bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads and validates a cache file.
pub fn read_cache(path: &Path) -> Result<CacheFile, CacheError> {
    let mut data = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut data)?;
    cache_from_bytes(&data)
}

/// Tag hash for cache keys: FNV-1a over an arbitrary label string
/// (column-order / generator-scheme identifier).
pub fn tag_hash(label: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
