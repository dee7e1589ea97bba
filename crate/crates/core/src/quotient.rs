//! Quotient matrices of 4-class partitions: row Diophantine solving,
//! candidate assembly, the reference matrices and their recognition.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{DdgParams, Family};
use crate::partition::PermutationMap;

/// Square matrix of class-to-class neighbour counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientMatrix {
    pub entries: Vec<Vec<u64>>,
    /// Class size.
    pub n: u64,
}

/// Which reference matrix a quotient matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuotientTag {
    M3,
    M4,
    M5,
    M8,
    M9,
    M10,
    Other,
}

impl QuotientTag {
    pub const REFERENCE: [QuotientTag; 6] =
        [QuotientTag::M3, QuotientTag::M4, QuotientTag::M5, QuotientTag::M8, QuotientTag::M9, QuotientTag::M10];

    pub fn name(self) -> &'static str {
        match self {
            QuotientTag::M3 => "M3",
            QuotientTag::M4 => "M4",
            QuotientTag::M5 => "M5",
            QuotientTag::M8 => "M8",
            QuotientTag::M9 => "M9",
            QuotientTag::M10 => "M10",
            QuotientTag::Other => "other",
        }
    }

    pub fn family(self) -> Option<Family> {
        match self {
            QuotientTag::M3 | QuotientTag::M4 | QuotientTag::M5 => Some(Family::A),
            QuotientTag::M8 | QuotientTag::M9 | QuotientTag::M10 => Some(Family::B),
            QuotientTag::Other => None,
        }
    }

    /// The tag on the other side of the class-pair switch.
    pub fn class_pair_partner(self) -> QuotientTag {
        match self {
            QuotientTag::M3 => QuotientTag::M8,
            QuotientTag::M4 => QuotientTag::M9,
            QuotientTag::M5 => QuotientTag::M10,
            QuotientTag::M8 => QuotientTag::M3,
            QuotientTag::M9 => QuotientTag::M4,
            QuotientTag::M10 => QuotientTag::M5,
            QuotientTag::Other => QuotientTag::Other,
        }
    }
}

impl fmt::Display for QuotientTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl QuotientMatrix {
    pub fn new(entries: Vec<Vec<u64>>, n: u64) -> Result<QuotientMatrix> {
        let m = entries.len();
        if m == 0 || entries.iter().any(|r| r.len() != m) {
            return Err(Error::Precondition("quotient matrix must be square and nonempty".into()));
        }
        Ok(QuotientMatrix { entries, n })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> u64 {
        (0..self.size()).map(|i| self.entries[i][i]).sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.size()).map(|j| self.entries.iter().map(|r| r[j]).sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.size();
        (0..m).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// `R[σ⁻¹(i)][σ⁻¹(j)]` at position `(i, j)`: class `c` becomes `σ(c)`.
    pub fn permuted(&self, sigma: &PermutationMap) -> QuotientMatrix {
        let inv = sigma.inverse();
        let m = self.size();
        let entries = (0..m).map(|i| (0..m).map(|j| self.entries[inv.apply(i)][inv.apply(j)]).collect()).collect();
        QuotientMatrix { entries, n: self.n }
    }

    /// `R² = (k²-λ2v)·I + λ2·n·J`.
    pub fn satisfies_identity(&self, p: &DdgParams) -> bool {
        let m = self.size();
        if m as u64 != p.m {
            return false;
        }
        let diag = p.quotient_radicand() + p.lambda2 * p.n;
        let off = p.lambda2 * p.n;
        (0..m).all(|i| {
            (0..m).all(|j| {
                let s: u64 = (0..m).map(|l| self.entries[i][l] * self.entries[l][j]).sum();
                s == if i == j { diag } else { off }
            })
        })
    }

    /// Column sums equal `k` and `0 ≤ tr R ≤ m(n-1)`.
    pub fn satisfies_column_conditions(&self, p: &DdgParams) -> bool {
        self.column_sums().iter().all(|&c| c == p.k) && self.trace() <= p.m * (p.n - 1)
    }

    /// Smallest row-major entry list over all simultaneous permutations.
    pub fn canonical_key(&self) -> Vec<u64> {
        permutations_of(self.size())
            .map(|s| self.permuted(&s).entries.concat())
            .min()
            .unwrap_or_default()
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

/// All permutations of `0..m` in lexicographic order of images.
pub fn permutations_of(m: usize) -> impl Iterator<Item = PermutationMap> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out.into_iter()
}

fn permute(cur: &mut Vec<usize>, i: usize, out: &mut Vec<PermutationMap>) {
    if i == cur.len() {
        out.push(PermutationMap::new(cur.clone()).expect("swap of a permutation"));
        return;
    }
    for j in i..cur.len() {
        cur.swap(i, j);
        permute(cur, i + 1, out);
        cur.swap(i, j);
    }
}

/// The reference matrix for `tag` at class size `n`, with classes in the
/// printed order.
pub fn reference_matrix(tag: QuotientTag, n: u64) -> Option<QuotientMatrix> {
    let h = n - 1;
    let rows: [[u64; 4]; 4] = match tag {
        QuotientTag::M3 => [[h, 1, 1, 1], [1, h, 1, 1], [1, 1, h, 1], [1, 1, 1, h]],
        QuotientTag::M4 => [[1, h, 1, 1], [h, 1, 1, 1], [1, 1, h, 1], [1, 1, 1, h]],
        QuotientTag::M5 => [[1, h, 1, 1], [h, 1, 1, 1], [1, 1, 1, h], [1, 1, h, 1]],
        QuotientTag::M8 => [[h, 1, h, h], [1, h, h, h], [h, h, h, 1], [h, h, 1, h]],
        QuotientTag::M9 => [[h, 1, h, h], [1, h, h, h], [h, h, 1, h], [h, h, h, 1]],
        QuotientTag::M10 => [[1, h, h, h], [h, 1, h, h], [h, h, 1, h], [h, h, h, 1]],
        QuotientTag::Other => return None,
    };
    Some(QuotientMatrix { entries: rows.iter().map(|r| r.to_vec()).collect(), n })
}

/// Matches `r` against the reference matrices of its family. The returned
/// map `σ` satisfies `r.permuted(σ) == reference`; with `Other` it is the
/// identity.
pub fn classify_quotient(r: &QuotientMatrix, p: &DdgParams) -> (QuotientTag, PermutationMap) {
    let m = r.size();
    if m == 4 && p.m == 4 && r.n == p.n {
        let tags = match p.family().map(|f| f.0) {
            Some(Family::A) => &QuotientTag::REFERENCE[..3],
            Some(Family::B) => &QuotientTag::REFERENCE[3..],
            None => &QuotientTag::REFERENCE[..],
        };
        for &tag in tags {
            let target = reference_matrix(tag, p.n).expect("reference tag");
            if let Some(s) = permutations_of(4).find(|s| r.permuted(s) == target) {
                return (tag, s);
            }
        }
    }
    (QuotientTag::Other, PermutationMap::identity(m))
}

/// True iff `n` is even or every diagonal entry of `r` is even.
pub fn diag_parity_filter(r: &QuotientMatrix, n: u64) -> bool {
    n.is_multiple_of(2) || (0..r.size()).all(|i| r.entries[i][i].is_multiple_of(2))
}

/// All multisets `{a,b,c,d}` (sorted descending) with entries in `0..=n`,
/// `a+b+c+d = k` and `a²+b²+c²+d² = (k²-λ2v) + λ2·n`.
pub fn quotient_row_solutions(p: &DdgParams) -> Result<Vec<[u64; 4]>> {
    if p.m != 4 {
        return Err(Error::Unsupported(format!("quotient rows for m = {} (only m = 4)", p.m)));
    }
    p.validate()?;
    let target = p.quotient_radicand() + p.lambda2 * p.n;
    let mut out = Vec::new();
    for a in (0..=p.n).rev() {
        for b in (0..=a).rev() {
            for c in (0..=b).rev() {
                let used = a + b + c;
                if used > p.k || p.k - used > c {
                    continue;
                }
                let d = p.k - used;
                if a * a + b * b + c * c + d * d == target {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    Ok(out)
}

pub const SCOPE_NOTE: &str = "classification scope requires n > 8";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientCandidates {
    /// Symmetric candidates up to simultaneous permutation, tagged.
    pub matrices: Vec<(QuotientTag, QuotientMatrix)>,
    /// Row assemblies passing every condition but symmetry.
    pub asymmetric: Vec<QuotientMatrix>,
    /// Symmetric candidates removed by the diagonal parity filter.
    pub parity_rejected: Vec<QuotientMatrix>,
    pub scope_note: Option<String>,
}

/// Assembles every 4×4 matrix whose rows are arrangements of the row
/// solutions, with diagonal at most `n-1`, column sums `k`, the trace
/// bound and the square identity, then deduplicates.
pub fn quotient_matrix_candidates(p: &DdgParams) -> Result<QuotientCandidates> {
    if p.family().is_none() {
        return Err(Error::Unsupported(format!("{p} is not of either family shape")));
    }
    let mut rows: BTreeSet<[u64; 4]> = BTreeSet::new();
    for sol in quotient_row_solutions(p)? {
        for s in permutations_of(4) {
            rows.insert([sol[s.apply(0)], sol[s.apply(1)], sol[s.apply(2)], sol[s.apply(3)]]);
        }
    }
    let rows: Vec<[u64; 4]> = rows.into_iter().collect();
    let mut seen = BTreeSet::new();
    let mut seen_asym = BTreeSet::new();
    let mut sym = Vec::new();
    let mut asym = Vec::new();
    let mut pick = [0usize; 4];
    'outer: loop {
        let entries: Vec<Vec<u64>> = pick.iter().map(|&i| rows[i].to_vec()).collect();
        let ok_diag = (0..4).all(|i| entries[i][i] < p.n);
        if ok_diag {
            let r = QuotientMatrix { entries, n: p.n };
            if r.satisfies_column_conditions(p) && r.satisfies_identity(p) {
                let key = r.canonical_key();
                if r.is_symmetric() {
                    if seen.insert(key) {
                        sym.push(r);
                    }
                } else if seen_asym.insert(key) {
                    asym.push(r);
                }
            }
        }
        for slot in (0..4).rev() {
            pick[slot] += 1;
            if pick[slot] < rows.len() {
                continue 'outer;
            }
            pick[slot] = 0;
        }
        break;
    }
    let mut matrices = Vec::new();
    let mut parity_rejected = Vec::new();
    for r in sym {
        if !diag_parity_filter(&r, p.n) {
            parity_rejected.push(r);
            continue;
        }
        let (tag, sigma) = classify_quotient(&r, p);
        let r = if tag == QuotientTag::Other { r } else { r.permuted(&sigma) };
        matrices.push((tag, r));
    }
    matrices.sort();
    Ok(QuotientCandidates {
        matrices,
        asymmetric: asym,
        parity_rejected,
        scope_note: (p.n <= 8).then(|| SCOPE_NOTE.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{family_a, family_b};

    #[test]
    fn reference_matrices_satisfy_identity() {
        for n in 3..=16 {
            for tag in &QuotientTag::REFERENCE[..3] {
                let r = reference_matrix(*tag, n).unwrap();
                assert!(r.satisfies_identity(&family_a(n).unwrap()), "{tag} n={n}");
                assert!(r.is_symmetric());
            }
            for tag in &QuotientTag::REFERENCE[3..] {
                let r = reference_matrix(*tag, n).unwrap();
                assert!(r.satisfies_identity(&family_b(n).unwrap()), "{tag} n={n}");
            }
        }
    }

    #[test]
    fn row_solutions_family_a_10() {
        assert_eq!(quotient_row_solutions(&family_a(10).unwrap()).unwrap(), vec![[9, 1, 1, 1]]);
        assert_eq!(quotient_row_solutions(&family_b(10).unwrap()).unwrap(), vec![[9, 9, 9, 1]]);
        let p = DdgParams::new(15, 4, 1, 1, 3, 5).unwrap();
        assert!(matches!(quotient_row_solutions(&p), Err(Error::Unsupported(_))));
    }

    #[test]
    fn candidates_family_a_10() {
        let c = quotient_matrix_candidates(&family_a(10).unwrap()).unwrap();
        let tags: Vec<QuotientTag> = c.matrices.iter().map(|m| m.0).collect();
        assert_eq!(tags, vec![QuotientTag::M3, QuotientTag::M4, QuotientTag::M5]);
        assert_eq!(c.matrices[0].1, reference_matrix(QuotientTag::M3, 10).unwrap());
        assert!(c.asymmetric.is_empty());
        assert!(c.scope_note.is_none());
    }

    #[test]
    fn candidates_family_b_10() {
        let c = quotient_matrix_candidates(&family_b(10).unwrap()).unwrap();
        let tags: Vec<QuotientTag> = c.matrices.iter().map(|m| m.0).collect();
        assert_eq!(tags, vec![QuotientTag::M8, QuotientTag::M9, QuotientTag::M10]);
    }

    #[test]
    fn odd_n_parity() {
        let c = quotient_matrix_candidates(&family_a(9).unwrap()).unwrap();
        assert_eq!(c.matrices.len(), 1);
        assert_eq!(c.matrices[0].0, QuotientTag::M3);
        assert_eq!(c.parity_rejected.len(), 2);
        assert!(!diag_parity_filter(&reference_matrix(QuotientTag::M4, 9).unwrap(), 9));
        assert!(diag_parity_filter(&reference_matrix(QuotientTag::M3, 9).unwrap(), 9));
        assert!(diag_parity_filter(&reference_matrix(QuotientTag::M10, 10).unwrap(), 10));
    }

    #[test]
    fn small_n_is_tagged() {
        let c = quotient_matrix_candidates(&family_a(6).unwrap()).unwrap();
        assert_eq!(c.scope_note.as_deref(), Some(SCOPE_NOTE));
    }

    #[test]
    fn classify_with_witness() {
        let p = family_a(10).unwrap();
        let m5 = reference_matrix(QuotientTag::M5, 10).unwrap();
        let swap = PermutationMap::new(vec![2, 3, 0, 1]).unwrap();
        let moved = m5.permuted(&swap);
        let (tag, sigma) = classify_quotient(&moved, &p);
        assert_eq!(tag, QuotientTag::M5);
        assert_eq!(moved.permuted(&sigma), m5);
        let j4 = QuotientMatrix::new(vec![vec![3; 4]; 4], 10).unwrap();
        assert_eq!(classify_quotient(&j4, &p).0, QuotientTag::Other);
    }
}
