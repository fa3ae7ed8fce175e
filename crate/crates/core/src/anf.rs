//! Multilinear polynomials over GF(2) and their truth tables.
//!
//! Variables are 1-based (`x_1 .. x_n`) on every public surface. Internally a
//! [`Monomial`] is a bitset where bit `j - 1` stands for `x_j`, and a
//! [`TruthTable`] entry at integer index `x` holds `f(x)` with bit `j - 1` of
//! `x` being the value of `x_j`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest arity accepted by the dense truth-table path (2^24 bits = 2 MiB).
pub const MAX_TABLE_ARITY: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnfError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable x_{var} out of range for arity {arity}")]
    VarOutOfRange { var: usize, arity: usize },
    #[error("arity {0} exceeds the dense truth-table limit of {MAX_TABLE_ARITY}")]
    ArityTooLarge(usize),
    #[error("truth table for arity {arity} needs {expected} bits, got {got}")]
    TableLength {
        arity: usize,
        expected: usize,
        got: usize,
    },
}

/// A product of distinct variables. The empty product is the constant 1.
///
/// Stored as a bitset with trailing zero words trimmed, so equality is
/// equality of variable sets independent of the ambient arity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    words: Vec<u64>,
}

impl Monomial {
    /// The constant-1 monomial.
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds the product of the given 1-based variables. Repeated variables
    /// collapse (`x * x = x`).
    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        let mut words = Vec::new();
        for var in vars {
            assert!(var >= 1, "variables are 1-based");
            let bit = var - 1;
            if words.len() <= bit / 64 {
                words.resize(bit / 64 + 1, 0);
            }
            words[bit / 64] |= 1u64 << (bit % 64);
        }
        Self::trimmed(words)
    }

    /// The degree-(n-1) monomial over `x_1..x_n` that skips `x_missing`.
    pub fn all_but(arity: usize, missing: usize) -> Self {
        let mut words = vec![u64::MAX; arity / 64];
        if !arity.is_multiple_of(64) {
            words.push((1u64 << (arity % 64)) - 1);
        }
        if (1..=arity).contains(&missing) {
            words[(missing - 1) / 64] &= !(1u64 << ((missing - 1) % 64));
        }
        Self::trimmed(words)
    }

    /// Builds a monomial from a bitmask (bit `j - 1` is `x_j`).
    pub fn from_mask(mask: u64) -> Self {
        Self::trimmed(vec![mask])
    }

    fn trimmed(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    pub fn degree(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn contains(&self, var: usize) -> bool {
        var >= 1
            && self
                .words
                .get((var - 1) / 64)
                .is_some_and(|w| w >> ((var - 1) % 64) & 1 == 1)
    }

    /// Highest variable index present, or 0 for the constant monomial.
    pub fn max_var(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => (self.words.len() - 1) * 64 + (64 - w.leading_zeros() as usize),
        }
    }

    /// The 1-based variables in ascending order.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| k * 64 + b + 1)
        })
    }

    /// The bitmask form; only meaningful for monomials over `x_1..x_64`.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Product of two monomials over GF(2): union of the variable sets.
    pub fn mul(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        Self { words }
    }

    /// Evaluates the monomial on a packed input (bit `j - 1` of `x` is `x_j`).
    fn eval_mask(&self, x: u64) -> bool {
        match self.mask() {
            Some(m) => x & m == m,
            None => false,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "1");
        }
        for var in self.vars() {
            write!(f, "x{var}")?;
        }
        Ok(())
    }
}

/// A Boolean function in algebraic normal form: the XOR of its monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    arity: usize,
    terms: BTreeSet<Monomial>,
}

impl Anf {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::from_monomial(arity, Monomial::one()).expect("constant fits any arity")
    }

    /// The single variable `x_var`.
    pub fn var(arity: usize, var: usize) -> Result<Self, AnfError> {
        if var == 0 || var > arity {
            return Err(AnfError::VarOutOfRange { var, arity });
        }
        Self::from_monomial(arity, Monomial::from_vars([var]))
    }

    pub fn from_monomial(arity: usize, m: Monomial) -> Result<Self, AnfError> {
        Self::from_monomials(arity, [m])
    }

    /// XOR of the given monomials; a monomial listed twice cancels.
    pub fn from_monomials<I>(arity: usize, monomials: I) -> Result<Self, AnfError>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut anf = Self::zero(arity);
        for m in monomials {
            if m.max_var() > arity {
                return Err(AnfError::VarOutOfRange {
                    var: m.max_var(),
                    arity,
                });
            }
            anf.toggle(m);
        }
        Ok(anf)
    }

    /// XOR of the given variables.
    pub fn xor_of_vars(
        arity: usize,
        vars: impl IntoIterator<Item = usize>,
    ) -> Result<Self, AnfError> {
        let mut monomials = Vec::new();
        for var in vars {
            if var == 0 || var > arity {
                return Err(AnfError::VarOutOfRange { var, arity });
            }
            monomials.push(Monomial::from_vars([var]));
        }
        Self::from_monomials(arity, monomials)
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Sum over GF(2): symmetric difference of the term sets.
    pub fn add(&self, other: &Self) -> Result<Self, AnfError> {
        self.check_arity(other)?;
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        Ok(Self {
            arity: self.arity,
            terms,
        })
    }

    /// Product over GF(2). Every pair of terms contributes the union of its
    /// variables; equal contributions cancel in pairs.
    pub fn multiply(&self, other: &Self) -> Result<Self, AnfError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        Ok(out)
    }

    /// Algebraic degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Evaluates on a packed input (bit `j - 1` of `x` is `x_j`), arity ≤ 64.
    pub fn eval(&self, x: u64) -> bool {
        self.terms.iter().fold(false, |acc, m| acc ^ m.eval_mask(x))
    }

    /// Pointwise evaluation on all `2^arity` inputs.
    pub fn to_truth_table(&self) -> Result<TruthTable, AnfError> {
        let mut table = TruthTable::zeros(self.arity)?;
        for m in &self.terms {
            let idx = m.mask().expect("arity ≤ 24 keeps masks in one word");
            table.flip(idx as usize);
        }
        moebius_in_place(&mut table.words, self.arity);
        Ok(table)
    }

    /// The unique ANF of a truth table (binary Möbius transform).
    pub fn from_truth_table(table: &TruthTable) -> Self {
        let mut words = table.words.clone();
        moebius_in_place(&mut words, table.arity);
        let mut terms = BTreeSet::new();
        for (k, &w) in words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as u64;
                terms.insert(Monomial::from_mask(k as u64 * 64 + b));
                w &= w - 1;
            }
        }
        Self {
            arity: table.arity,
            terms,
        }
    }

    /// Coordinates in the basis of the `arity` monomials of degree
    /// `arity - 1`: bit `k - 1` is set iff the monomial skipping `x_k` is
    /// present. `None` if any other term is present or `arity > 64`.
    pub fn leave_one_out_coords(&self) -> Option<u64> {
        if self.arity == 0 || self.arity > 64 {
            return None;
        }
        let full = if self.arity == 64 {
            u64::MAX
        } else {
            (1u64 << self.arity) - 1
        };
        let mut coords = 0u64;
        for m in &self.terms {
            let mask = m.mask()?;
            let missing = full & !mask;
            if m.degree() + 1 != self.arity || missing.count_ones() != 1 {
                return None;
            }
            coords |= missing;
        }
        Some(coords)
    }

    fn check_arity(&self, other: &Self) -> Result<(), AnfError> {
        if self.arity != other.arity {
            return Err(AnfError::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf[{}]({self})", self.arity)
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<&Monomial> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.vars().cmp(b.vars()))
        });
        for (k, m) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// In-place binary Möbius transform over the first `2^arity` bits. It is an
/// involution, so the same routine maps tables to coefficients and back.
fn moebius_in_place(words: &mut [u64], arity: usize) {
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    for (j, low) in LOW.iter().enumerate().take(arity.min(6)) {
        for w in words.iter_mut() {
            *w ^= (*w & low) << (1 << j);
        }
    }
    let mut stride = 1;
    while stride < words.len() {
        for k in 0..words.len() {
            if k & stride != 0 {
                words[k] ^= words[k ^ stride];
            }
        }
        stride <<= 1;
    }
}

/// Values of a single-output function on all `2^arity` inputs, packed 64 per
/// word. Bits beyond `2^arity` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zeros(arity: usize) -> Result<Self, AnfError> {
        if arity > MAX_TABLE_ARITY {
            return Err(AnfError::ArityTooLarge(arity));
        }
        Ok(Self {
            arity,
            words: vec![0; Self::word_count(arity)],
        })
    }

    pub fn from_fn(arity: usize, f: impl Fn(u64) -> bool) -> Result<Self, AnfError> {
        let mut table = Self::zeros(arity)?;
        for x in 0..table.len() {
            if f(x as u64) {
                table.flip(x);
            }
        }
        Ok(table)
    }

    /// Builds a table from `2^arity` bits in input order.
    pub fn from_bits(arity: usize, bits: &[bool]) -> Result<Self, AnfError> {
        let mut table = Self::zeros(arity)?;
        if bits.len() != table.len() {
            return Err(AnfError::TableLength {
                arity,
                expected: table.len(),
                got: bits.len(),
            });
        }
        for (x, &b) in bits.iter().enumerate() {
            if b {
                table.flip(x);
            }
        }
        Ok(table)
    }

    /// Wraps packed words; stray bits past `2^arity` are cleared.
    pub fn from_words(arity: usize, mut words: Vec<u64>) -> Result<Self, AnfError> {
        if arity > MAX_TABLE_ARITY {
            return Err(AnfError::ArityTooLarge(arity));
        }
        let expected = Self::word_count(arity);
        if words.len() != expected {
            return Err(AnfError::TableLength {
                arity,
                expected: expected * 64,
                got: words.len() * 64,
            });
        }
        if arity < 6 {
            words[0] &= (1u64 << (1 << arity)) - 1;
        }
        Ok(Self { arity, words })
    }

    pub(crate) fn word_count(arity: usize) -> usize {
        if arity <= 6 {
            1
        } else {
            1 << (arity - 6)
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of entries, `2^arity`.
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, x: usize) -> bool {
        assert!(x < self.len(), "input {x} out of range");
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    fn flip(&mut self, x: usize) {
        self.words[x / 64] ^= 1 << (x % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable[{}](", self.arity)?;
        if self.arity <= 8 {
            for x in 0..self.len() {
                write!(f, "{}", u8::from(self.get(x)))?;
            }
        } else {
            write!(f, "{} ones", self.count_ones())?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn anf(arity: usize, terms: &[&[usize]]) -> Anf {
        Anf::from_monomials(
            arity,
            terms.iter().map(|t| Monomial::from_vars(t.iter().copied())),
        )
        .unwrap()
    }

    // Brute-force oracles, independent of the Möbius transform.
    fn brute_table(a: &Anf) -> Vec<bool> {
        (0..1u64 << a.arity()).map(|x| a.eval(x)).collect()
    }

    fn brute_anf(arity: usize, f: &dyn Fn(u64) -> bool) -> Anf {
        let mut monomials = Vec::new();
        for set in 0..1u64 << arity {
            let mut coeff = false;
            let mut sub = set;
            loop {
                coeff ^= f(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & set;
            }
            if coeff {
                monomials.push(Monomial::from_mask(set));
            }
        }
        Anf::from_monomials(arity, monomials).unwrap()
    }

    fn f_i(n: usize, i: usize) -> impl Fn(u64) -> bool {
        move |x| (1..=n).filter(|&j| j != i).all(|j| x >> (j - 1) & 1 == 1)
    }

    #[test]
    fn add_examples() {
        let a = anf(3, &[&[1, 2]]);
        assert!(a.add(&a).unwrap().is_zero());
        let b = anf(3, &[&[1, 2], &[2, 3]]);
        let c = anf(3, &[&[2, 3], &[1, 3]]);
        assert_eq!(b.add(&c).unwrap(), anf(3, &[&[1, 2], &[1, 3]]));

        let f1 = brute_anf(3, &f_i(3, 1));
        let f2 = brute_anf(3, &f_i(3, 2));
        assert_eq!(f1.add(&f2).unwrap(), anf(3, &[&[2, 3], &[1, 3]]));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = Anf::one(3);
        let b = Anf::one(4);
        assert_eq!(a.add(&b), Err(AnfError::ArityMismatch(3, 4)));
        assert_eq!(a.multiply(&b), Err(AnfError::ArityMismatch(3, 4)));
    }

    #[test]
    fn multiply_examples() {
        let s3 = anf(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let x1x2 = anf(3, &[&[1], &[2]]);
        assert_eq!(s3.multiply(&x1x2).unwrap(), anf(3, &[&[2, 3], &[1, 3]]));
        assert!(s3.multiply(&Anf::zero(3)).unwrap().is_zero());

        // Degree-3 sum over x1..x4 times (x1 + x2 + x3 + x4), inside arity 5.
        // Expanding all 16 pair products: each term is hit by three variables
        // it already contains (odd, survives) and x1x2x3x4 appears four times
        // (even, cancels).
        let s4 = anf(5, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let lin = Anf::xor_of_vars(5, 1..=4).unwrap();
        let mut counts = std::collections::HashMap::new();
        for a in s4.terms() {
            for b in lin.terms() {
                *counts.entry(a.mul(b)).or_insert(0) += 1;
            }
        }
        let mut survivors: Vec<_> = counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(m, _)| m)
            .collect();
        survivors.sort();
        assert_eq!(survivors, s4.terms().cloned().collect::<Vec<_>>());
        assert_eq!(s4.multiply(&lin).unwrap(), s4);

        // With even-degree terms the cancellation goes the other way:
        // (degree-4 sum over x1..x5) * (x1 + .. + x5) = x1x2x3x4x5.
        let s5 = Anf::from_monomials(6, (1..=5).map(|i| Monomial::all_but(5, i))).unwrap();
        let lin = Anf::xor_of_vars(6, 1..=5).unwrap();
        assert_eq!(s5.multiply(&lin).unwrap(), anf(6, &[&[1, 2, 3, 4, 5]]));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Anf::zero(4).degree(), 0);
        assert_eq!(anf(3, &[&[1, 2], &[2, 3], &[1, 3]]).degree(), 2);
        let f1 = Anf::from_monomial(6, Monomial::all_but(6, 1)).unwrap();
        assert_eq!(f1.degree(), 5);
    }

    #[test]
    fn from_truth_table_examples() {
        assert!(Anf::from_truth_table(&TruthTable::zeros(5).unwrap()).is_zero());

        let maj = TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap();
        assert_eq!(
            Anf::from_truth_table(&maj),
            anf(3, &[&[1, 2], &[2, 3], &[1, 3]])
        );

        let f2 = TruthTable::from_fn(4, f_i(4, 2)).unwrap();
        assert_eq!(Anf::from_truth_table(&f2), anf(4, &[&[1, 3, 4]]));
        assert_eq!(brute_anf(4, &f_i(4, 2)), anf(4, &[&[1, 3, 4]]));
    }

    #[test]
    fn to_truth_table_examples() {
        let t = Anf::zero(3).to_truth_table().unwrap();
        assert_eq!(t.count_ones(), 0);
        let t = Anf::one(3).to_truth_table().unwrap();
        assert_eq!(t.count_ones(), 8);

        let s3 = anf(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let t = s3.to_truth_table().unwrap();
        for x in 0..8u64 {
            assert_eq!(t.get(x as usize), x.count_ones() >= 2, "x = {x:03b}");
        }
        assert_eq!(
            brute_table(&s3),
            (0..8).map(|x| t.get(x)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn table_arity_is_capped() {
        assert_eq!(TruthTable::zeros(25), Err(AnfError::ArityTooLarge(25)));
        assert!(Anf::zero(30).to_truth_table().is_err());
    }

    #[test]
    fn out_of_range_variables_are_rejected() {
        assert!(Anf::var(3, 4).is_err());
        assert!(Anf::var(3, 0).is_err());
        assert!(Anf::from_monomial(3, Monomial::from_vars([1, 4])).is_err());
    }

    #[test]
    fn wide_monomials() {
        let m = Monomial::all_but(200, 70);
        assert_eq!(m.degree(), 199);
        assert!(!m.contains(70));
        assert!(m.contains(200));
        assert_eq!(m.max_var(), 200);
        assert_eq!(m.mask(), None);
        assert_eq!(m, Monomial::from_vars((1..=200).filter(|&j| j != 70)));
        assert_eq!(
            Monomial::all_but(64, 64),
            Monomial::from_mask(u64::MAX >> 1)
        );
        let a = Anf::from_monomial(200, m).unwrap();
        assert_eq!(a.degree(), 199);
    }

    #[test]
    fn leave_one_out_coordinates() {
        let s3 = anf(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(s3.leave_one_out_coords(), Some(0b111));
        assert_eq!(anf(3, &[&[2, 3]]).leave_one_out_coords(), Some(0b001));
        assert_eq!(anf(3, &[&[1]]).leave_one_out_coords(), None);
    }

    fn arb_anf(arity: usize) -> impl Strategy<Value = Anf> {
        prop::collection::vec(0u64..1 << arity, 0..24).prop_map(move |masks| {
            Anf::from_monomials(arity, masks.into_iter().map(Monomial::from_mask)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn table_round_trip(a in (0usize..=12).prop_flat_map(arb_anf)) {
            let t = a.to_truth_table().unwrap();
            prop_assert_eq!(Anf::from_truth_table(&t), a.clone());
            let bits: Vec<bool> = (0..t.len()).map(|x| t.get(x)).collect();
            prop_assert_eq!(bits, brute_table(&a));
        }

        #[test]
        fn ring_laws(
            (a, b, c) in (1usize..=8).prop_flat_map(|n| (arb_anf(n), arb_anf(n), arb_anf(n)))
        ) {
            let n = a.arity();
            let zero = Anf::zero(n);
            let one = Anf::one(n);
            prop_assert_eq!(a.add(&b)?.add(&c)?, a.add(&b.add(&c)?)?);
            prop_assert_eq!(a.add(&b)?, b.add(&a)?);
            prop_assert_eq!(a.add(&zero)?, a.clone());
            prop_assert!(a.add(&a)?.is_zero());
            prop_assert_eq!(a.multiply(&b)?.multiply(&c)?, a.multiply(&b.multiply(&c)?)?);
            prop_assert_eq!(a.multiply(&b)?, b.multiply(&a)?);
            prop_assert_eq!(a.multiply(&one)?, a.clone());
            prop_assert_eq!(a.multiply(&b.add(&c)?)?, a.multiply(&b)?.add(&a.multiply(&c)?)?);
            prop_assert_eq!(a.multiply(&a)?, a.clone());
        }

        #[test]
        fn degree_bounds((a, b) in (1usize..=8).prop_flat_map(|n| (arb_anf(n), arb_anf(n)))) {
            prop_assert!(a.multiply(&b)?.degree() <= a.degree() + b.degree());
            prop_assert!(a.add(&b)?.degree() <= a.degree().max(b.degree()));
        }
    }
}
