//! Codes over a finite alphabet `[q] = {1, ..., q}`: codebooks, tuples of
//! input sets, and the two distances everything else is built from.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// An alphabet symbol. Symbols are 1-based: valid values are `1..=q`.
pub type Symbol = u8;

fn check_symbol(x: Symbol, q: u8) -> Result<()> {
    if x == 0 || x > q {
        return Err(Error::InvalidSymbol { value: x, q });
    }
    Ok(())
}

/// A code `C ⊆ [q]^n`, stored as an `M × n` matrix of symbols. Rows are
/// codewords; duplicate rows are permitted (the verifier treats the code
/// as the set of distinct row values).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    q: u8,
    n: usize,
    rows: Vec<Vec<Symbol>>,
}

impl Codebook {
    pub fn new(q: u8, n: usize, rows: Vec<Vec<Symbol>>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("alphabet size q = {q} < 2")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("blocklength n = 0".into()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::LengthMismatch(row.len(), n));
            }
            for &x in row {
                check_symbol(x, q)?;
            }
        }
        Ok(Codebook { q, n, rows })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows, M.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &[Symbol] {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Symbol]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    /// Borrow the rows at the given indices as a list.
    pub fn list(&self, indices: &[usize]) -> Result<Vec<&[Symbol]>> {
        indices
            .iter()
            .map(|&i| {
                self.rows
                    .get(i)
                    .map(|r| r.as_slice())
                    .ok_or_else(|| Error::InvalidParameter(format!("row index {i} out of range")))
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Symbol> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Symbol tally of column `j` (index `x-1` counts symbol `x`).
    pub fn column_tally(&self, j: usize) -> Vec<usize> {
        let mut tally = vec![0usize; self.q as usize];
        for row in &self.rows {
            tally[(row[j] - 1) as usize] += 1;
        }
        tally
    }

    /// Indices of the first occurrence of each distinct row value, in row
    /// order.
    pub fn distinct_row_indices(&self) -> Vec<usize> {
        let mut seen: Vec<&[Symbol]> = Vec::new();
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            if !seen.contains(&row.as_slice()) {
                seen.push(row);
                out.push(i);
            }
        }
        out
    }

    /// Text format: a header line `q n M` followed by one codeword per
    /// line, symbols space-separated.
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.q, self.n, self.rows.len());
        for row in &self.rows {
            let words: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", words.join(" "));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty codebook file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "expected header \"q n M\", got {header:?}"
            )));
        }
        let q: u8 = fields[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad q in header {header:?}")))?;
        let n: usize = fields[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad n in header {header:?}")))?;
        let m: usize = fields[2]
            .parse()
            .map_err(|_| Error::Parse(format!("bad M in header {header:?}")))?;
        let mut rows = Vec::with_capacity(m);
        for line in lines {
            let row: Vec<Symbol> = line
                .split_whitespace()
                .map(|w| {
                    w.parse::<Symbol>()
                        .map_err(|_| Error::Parse(format!("bad symbol {w:?}")))
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        if rows.len() != m {
            return Err(Error::Parse(format!(
                "header promises {m} rows, file has {}",
                rows.len()
            )));
        }
        Codebook::new(q, n, rows)
    }
}

/// The collection of all `ell`-subsets of `[q]`, in a fixed colexicographic
/// order (equivalently: ascending order of bitmasks). Element `x` is bit
/// `x - 1` of a mask. This ordering pins down embedding indices and makes
/// every search and every reported witness deterministic.
#[derive(Debug, Clone)]
pub struct SubsetSpace {
    q: u8,
    ell: usize,
    sets: Vec<u32>,
    containing: Vec<Vec<usize>>,
}

impl SubsetSpace {
    pub fn new(q: u8, ell: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("alphabet size q = {q} < 2")));
        }
        if ell == 0 || ell >= q as usize {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= ell <= q - 1 = {}, got {ell}",
                q - 1
            )));
        }
        let mut sets = Vec::new();
        for mask in 0u32..(1u32 << q) {
            if mask.count_ones() as usize == ell {
                sets.push(mask);
            }
        }
        let mut containing = vec![Vec::new(); q as usize + 1];
        for (idx, &mask) in sets.iter().enumerate() {
            for x in 1..=q {
                if mask & (1 << (x - 1)) != 0 {
                    containing[x as usize].push(idx);
                }
            }
        }
        Ok(SubsetSpace { q, ell, sets, containing })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of `ell`-subsets, `C(q, ell)`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mask(&self, idx: usize) -> u32 {
        self.sets[idx]
    }

    pub fn symbols(&self, idx: usize) -> Vec<Symbol> {
        mask_symbols(self.sets[idx], self.q)
    }

    pub fn index_of_mask(&self, mask: u32) -> Option<usize> {
        self.sets.binary_search(&mask).ok()
    }

    /// Indices of the subsets containing symbol `x`; there are
    /// `C(q-1, ell-1)` of them for every `x`.
    pub fn containing(&self, x: Symbol) -> &[usize] {
        &self.containing[x as usize]
    }

    pub fn set_contains(&self, idx: usize, x: Symbol) -> bool {
        self.sets[idx] & (1 << (x - 1)) != 0
    }
}

fn mask_symbols(mask: u32, q: u8) -> Vec<Symbol> {
    (1..=q).filter(|&x| mask & (1 << (x - 1)) != 0).collect()
}

fn symbols_mask(symbols: &[Symbol], q: u8) -> Result<u32> {
    let mut mask = 0u32;
    for &x in symbols {
        check_symbol(x, q)?;
        mask |= 1 << (x - 1);
    }
    Ok(mask)
}

/// A tuple of input sets `Y = (Y_1, ..., Y_n)`, each an `ell`-subset of
/// `[q]`. The centers of list-recovery balls. For `ell = 1` this is a word
/// of `[q]^n` written as singletons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListSet {
    q: u8,
    ell: usize,
    #[serde(serialize_with = "serialize_masks")]
    sets: Vec<u32>,
}

fn serialize_masks<S: serde::Serializer>(sets: &[u32], ser: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(sets.len()))?;
    for &mask in sets {
        // q is not in scope here; 32 covers every valid symbol bit
        let symbols = mask_symbols(mask, 32);
        seq.serialize_element(&symbols)?;
    }
    seq.end()
}

impl ListSet {
    pub fn new(q: u8, ell: usize, sets: Vec<Vec<Symbol>>) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|s| {
                let mask = symbols_mask(s, q)?;
                if mask.count_ones() as usize != ell || s.len() != ell {
                    return Err(Error::InvalidParameter(format!(
                        "input set {s:?} is not a {ell}-subset of [1..{q}]"
                    )));
                }
                Ok(mask)
            })
            .collect::<Result<_>>()?;
        Self::from_masks(q, ell, masks)
    }

    pub fn from_masks(q: u8, ell: usize, sets: Vec<u32>) -> Result<Self> {
        if ell == 0 || ell >= q as usize {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= ell <= q - 1 = {}, got {ell}",
                q - 1
            )));
        }
        for &mask in &sets {
            if mask.count_ones() as usize != ell || mask >> q != 0 {
                return Err(Error::InvalidParameter(format!(
                    "mask {mask:#b} is not an {ell}-subset of [1..{q}]"
                )));
            }
        }
        Ok(ListSet { q, ell, sets })
    }

    /// A word of `[q]^n` viewed as a tuple of singletons.
    pub fn singletons(q: u8, word: &[Symbol]) -> Result<Self> {
        let sets = word.iter().map(|&x| vec![x]).collect();
        ListSet::new(q, 1, sets)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn mask(&self, j: usize) -> u32 {
        self.sets[j]
    }

    pub fn contains(&self, j: usize, x: Symbol) -> bool {
        self.sets[j] & (1 << (x - 1)) != 0
    }

    pub fn set_symbols(&self, j: usize) -> Vec<Symbol> {
        mask_symbols(self.sets[j], self.q)
    }

    pub fn all_symbols(&self) -> Vec<Vec<Symbol>> {
        (0..self.sets.len()).map(|j| self.set_symbols(j)).collect()
    }
}

/// Number of coordinates on which two words differ.
pub fn hamming_distance(u: &[Symbol], v: &[Symbol]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count())
}

/// Number of coordinates `j` with `u(j) ∉ Y_j`. For `ell = 1` this is the
/// Hamming distance to the word of singleton centers.
pub fn list_recovery_distance(u: &[Symbol], y: &ListSet) -> Result<usize> {
    if u.len() != y.len() {
        return Err(Error::LengthMismatch(u.len(), y.len()));
    }
    let mut misses = 0;
    for (j, &x) in u.iter().enumerate() {
        check_symbol(x, y.q())?;
        if !y.contains(j, x) {
            misses += 1;
        }
    }
    Ok(misses)
}
