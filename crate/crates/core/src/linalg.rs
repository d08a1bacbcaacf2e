//! Exact integer linear algebra: Laplacians, arborescence counts via
//! determinants, Hermite normal form, and row-lattice arithmetic.
//!
//! Everything here works over arbitrary-precision integers; there is no
//! floating point in this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{DirectedMultigraph, Vertex};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<BigInt> {
        self.row(r).to_vec()
    }

    pub fn matmul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Per-vertex arborescence counts `T(v)` together with their gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCountVector {
    /// `counts[v-1]` is the number of oriented spanning trees rooted at `v`.
    pub counts: Vec<BigInt>,
    /// gcd of all counts; 0 only when every count is 0.
    pub m_gcd: BigInt,
}

impl TreeCountVector {
    fn new(counts: Vec<BigInt>) -> Self {
        let m_gcd = counts
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self { counts, m_gcd }
    }

    pub fn count_of(&self, v: Vertex) -> &BigInt {
        &self.counts[v - 1]
    }
}

/// Laplacian of `g`: diagonal `deg⁺(v) − #loops(v)`, off-diagonal `−a(v, w)`.
/// Every row sums to zero.
pub fn laplacian(g: &DirectedMultigraph) -> IntMatrix {
    let n = g.vertex_count();
    let mut m = IntMatrix::zeros(n, n);
    for v in g.vertices() {
        m.set(v - 1, v - 1, BigInt::from(g.out_degree(v)));
        for &h in g.out_edges(v) {
            let cur = m.get(v - 1, h - 1) - 1;
            m.set(v - 1, h - 1, cur);
        }
    }
    m
}

/// Removes row `i` and column `i` (0-based).
pub fn delete_row_col(m: &IntMatrix, i: usize) -> Result<IntMatrix> {
    if i >= m.rows() || i >= m.cols() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let rows = (0..m.rows())
        .filter(|&r| r != i)
        .map(|r| {
            (0..m.cols())
                .filter(|&c| c != i)
                .map(|c| m.get(r, c).clone())
                .collect()
        })
        .collect();
    IntMatrix::from_rows(rows)
}

/// Removes column `j` only (0-based); the row count is unchanged.
pub fn delete_col(m: &IntMatrix, j: usize) -> Result<IntMatrix> {
    if j >= m.cols() {
        return Err(Error::IndexOutOfRange {
            index: j,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let rows = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .filter(|&c| c != j)
                .map(|c| m.get(r, c).clone())
                .collect()
        })
        .collect();
    IntMatrix::from_rows(rows)
}

/// Exact determinant by Bareiss fraction-free elimination. Every
/// intermediate value is an integer (a minor of the input), so no rational
/// arithmetic is needed. The 0x0 determinant is 1.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if sign < 0 { -det } else { det })
}

/// Arborescence counts by the matrix-tree theorem: `T(v)` is the
/// determinant of the Laplacian with `v`'s row and column removed.
pub fn tree_counts(g: &DirectedMultigraph) -> TreeCountVector {
    let lap = laplacian(g);
    let counts = (0..g.vertex_count())
        .map(|i| {
            let reduced = delete_row_col(&lap, i).expect("index in range");
            det_exact(&reduced).expect("reduced Laplacian is square")
        })
        .collect();
    TreeCountVector::new(counts)
}

/// Counts arborescences by enumerating one out-edge choice per non-root
/// vertex and testing whether the chosen edges form an oriented spanning
/// tree to the root. Independent of the determinant path; intended as an
/// oracle at small scale.
pub fn brute_force_tree_counts(g: &DirectedMultigraph, budget: u64) -> Result<TreeCountVector> {
    let n = g.vertex_count();
    let mut counts = Vec::with_capacity(n);
    for root in g.vertices() {
        counts.push(count_arborescences(g, root, budget)?);
    }
    Ok(TreeCountVector::new(counts))
}

fn count_arborescences(g: &DirectedMultigraph, root: Vertex, budget: u64) -> Result<BigInt> {
    let others: Vec<Vertex> = g.vertices().filter(|&v| v != root).collect();
    if others.iter().any(|&v| g.out_degree(v) == 0) {
        return Ok(BigInt::zero());
    }
    let combos: BigInt = others
        .iter()
        .map(|&v| BigInt::from(g.out_degree(v)))
        .product();
    if combos > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: combos,
            budget,
        });
    }

    let n = g.vertex_count();
    let mut choice = vec![0usize; others.len()];
    let mut count = BigInt::zero();
    loop {
        // succ[v-1] = head of the chosen edge; root has none.
        let mut succ = vec![0usize; n];
        for (slot, &v) in others.iter().enumerate() {
            succ[v - 1] = g.out_edges(v)[choice[slot]];
        }
        if is_arborescence(&succ, root, n) {
            count += 1;
        }
        let mut pos = others.len();
        loop {
            if pos == 0 {
                return Ok(count);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < g.out_degree(others[pos]) {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// True iff following `succ` from every vertex reaches `root` without
/// revisiting a vertex (i.e. the chosen edges are acyclic).
fn is_arborescence(succ: &[usize], root: Vertex, n: usize) -> bool {
    // 0 = unvisited, 1 = settled; walk ids start at 2.
    let mut mark = vec![0usize; n];
    mark[root - 1] = 1;
    for start in 0..n {
        if mark[start] != 0 {
            continue;
        }
        let walk = start + 2;
        let mut v = start;
        while mark[v] == 0 {
            mark[v] = walk;
            v = succ[v] - 1;
        }
        if mark[v] == walk {
            return false;
        }
        let mut v = start;
        while mark[v] == walk {
            mark[v] = 1;
            v = succ[v] - 1;
        }
    }
    true
}

/// Row-style Hermite normal form of the lattice spanned by the rows of
/// `m`. Returns `(hnf, transform)` with `transform * m == hnf` and
/// `transform` unimodular. Pivots are positive, entries above a pivot are
/// reduced into `[0, pivot)`, and zero rows sink to the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0usize;

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Euclidean reduction within the column until one nonzero survives.
        loop {
            let best = (pivot_row..rows)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by_key(|&r| h.get(r, col).abs());
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut finished = true;
            for r in pivot_row + 1..rows {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let q = h.get(r, col).div_floor(h.get(pivot_row, col));
                row_submul(&mut h, r, pivot_row, &q);
                row_submul(&mut u, r, pivot_row, &q);
                if !h.get(r, col).is_zero() {
                    finished = false;
                }
            }
            if finished {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            row_negate(&mut h, pivot_row);
            row_negate(&mut u, pivot_row);
        }
        for r in 0..pivot_row {
            let q = h.get(r, col).div_floor(h.get(pivot_row, col));
            if !q.is_zero() {
                row_submul(&mut h, r, pivot_row, &q);
                row_submul(&mut u, r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

fn row_submul(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        let v = m.get(target, c) - q * m.get(source, c);
        m.set(target, c, v);
    }
}

fn row_negate(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols() {
        let v = -m.get(r, c);
        m.set(r, c, v);
    }
}

/// The integer row lattice spanned by a set of generators, held in Hermite
/// normal form for membership queries.
#[derive(Debug, Clone)]
pub struct RowLattice {
    hnf: IntMatrix,
    /// (row, pivot column) pairs of the nonzero HNF rows, top to bottom.
    pivots: Vec<(usize, usize)>,
}

impl RowLattice {
    pub fn new(basis_rows: &IntMatrix) -> Self {
        let (hnf, _) = hermite_normal_form(basis_rows);
        let pivots = (0..hnf.rows())
            .filter_map(|r| (0..hnf.cols()).find(|&c| !hnf.get(r, c).is_zero()).map(|c| (r, c)))
            .collect();
        Self { hnf, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.hnf.cols()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// True iff `vec` is an integer combination of the lattice generators,
    /// decided by back-substitution against the HNF rows.
    pub fn contains(&self, vec: &[BigInt]) -> Result<bool> {
        if vec.len() != self.hnf.cols() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} vs lattice dimension {}",
                vec.len(),
                self.hnf.cols()
            )));
        }
        let mut residual = vec.to_vec();
        for &(r, c) in &self.pivots {
            let pivot = self.hnf.get(r, c);
            let (q, rem) = residual[c].div_rem(pivot);
            if !rem.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (j, entry) in residual.iter_mut().enumerate() {
                    *entry = &*entry - &q * self.hnf.get(r, j);
                }
            }
        }
        Ok(residual.iter().all(|x| x.is_zero()))
    }

    /// The rational coordinates of `vec` with respect to the nonzero HNF
    /// rows, or `None` if `vec` is outside their rational span.
    fn rational_coordinates(&self, vec: &[BigInt]) -> Option<Vec<BigRational>> {
        let mut residual: Vec<BigRational> = vec
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut coords = Vec::with_capacity(self.pivots.len());
        for &(r, c) in &self.pivots {
            let pivot = BigRational::from_integer(self.hnf.get(r, c).clone());
            let q = &residual[c] / pivot;
            if !q.is_zero() {
                for (j, entry) in residual.iter_mut().enumerate() {
                    *entry = &*entry - &q * BigRational::from_integer(self.hnf.get(r, j).clone());
                }
            }
            coords.push(q);
        }
        if residual.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}

/// True iff `vec` is an integer combination of the rows of `basis_rows`.
pub fn lattice_member(vec: &[BigInt], basis_rows: &IntMatrix) -> Result<bool> {
    RowLattice::new(basis_rows).contains(vec)
}

/// Order of `vec` in the quotient group `Z^d / lattice(other_rows)`: the
/// smallest `p ≥ 1` with `p · vec` in the lattice. Errors with
/// [`Error::InfiniteOrder`] when no multiple of `vec` lies in the lattice.
pub fn order_in_quotient(vec: &[BigInt], other_rows: &IntMatrix) -> Result<BigInt> {
    if vec.len() != other_rows.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} vs lattice dimension {}",
            vec.len(),
            other_rows.cols()
        )));
    }
    let lattice = RowLattice::new(other_rows);
    let coords = lattice
        .rational_coordinates(vec)
        .ok_or(Error::InfiniteOrder)?;
    // p·vec lies in the lattice iff p clears every denominator.
    let p = coords
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    Ok(p)
}

/// Left-multiplies the matrix by a row vector.
pub fn row_times_matrix(vec: &[BigInt], m: &IntMatrix) -> Result<Vec<BigInt>> {
    if vec.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "row vector of length {} vs {} matrix rows",
            vec.len(),
            m.rows()
        )));
    }
    Ok((0..m.cols())
        .map(|c| vec.iter().enumerate().map(|(r, x)| x * m.get(r, c)).sum())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        gen_bidirected_complete, gen_cycle, gen_thm2_family, gen_two_four_chain, parse_digraph,
    };

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Cofactor expansion along the first row; the slow oracle for Bareiss.
    fn det_cofactor(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut det = BigInt::zero();
        for c in 0..n {
            if m.get(0, c).is_zero() {
                continue;
            }
            let minor_rows: Vec<Vec<BigInt>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&cc| cc != c)
                        .map(|cc| m.get(r, cc).clone())
                        .collect()
                })
                .collect();
            let minor = det_cofactor(&IntMatrix::from_rows(minor_rows).unwrap());
            let term = m.get(0, c) * minor;
            if c % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    #[test]
    fn laplacian_examples() {
        let lap = laplacian(&gen_thm2_family(3).unwrap());
        assert_eq!(
            lap,
            IntMatrix::from_i64_rows(&[&[1, -1, 0], &[-1, 2, -1], &[-1, 0, 1]]).unwrap()
        );
        let loop_g = parse_digraph("1 1\n1: 1\n").unwrap();
        assert_eq!(laplacian(&loop_g), IntMatrix::from_i64_rows(&[&[0]]).unwrap());
        assert_eq!(
            laplacian(&gen_cycle(3).unwrap()),
            IntMatrix::from_i64_rows(&[&[1, -1, 0], &[0, 1, -1], &[-1, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        for g in [
            gen_thm2_family(6).unwrap(),
            gen_two_four_chain(3).unwrap(),
            gen_bidirected_complete(4).unwrap(),
        ] {
            let lap = laplacian(&g);
            for r in 0..lap.rows() {
                let sum: BigInt = lap.row(r).iter().sum();
                assert!(sum.is_zero());
            }
        }
    }

    #[test]
    fn reductions() {
        let lap = laplacian(&gen_thm2_family(3).unwrap());
        assert_eq!(
            delete_row_col(&lap, 2).unwrap(),
            IntMatrix::from_i64_rows(&[&[1, -1], &[-1, 2]]).unwrap()
        );
        assert_eq!(
            delete_col(&lap, 0).unwrap(),
            IntMatrix::from_i64_rows(&[&[-1, 0], &[2, -1], &[0, 1]]).unwrap()
        );
        let one = IntMatrix::from_i64_rows(&[&[7]]).unwrap();
        let empty = delete_row_col(&one, 0).unwrap();
        assert_eq!(empty.rows(), 0);
        assert_eq!(det_exact(&empty).unwrap(), big(1));
        assert!(delete_row_col(&one, 1).is_err());
    }

    #[test]
    fn determinant_examples() {
        let m = IntMatrix::from_i64_rows(&[&[1, -1], &[-1, 2]]).unwrap();
        assert_eq!(det_exact(&m).unwrap(), big(1));
        assert_eq!(det_exact(&IntMatrix::identity(4)).unwrap(), big(1));
        let singular = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(det_exact(&singular).unwrap(), big(0));
        // Zero leading pivot forces a row swap.
        let swap = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(det_exact(&swap).unwrap(), big(-1));
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..=5);
            let rows: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| big(rng.gen_range(-9..=9))).collect())
                .collect();
            let m = IntMatrix::from_rows(rows).unwrap();
            assert_eq!(det_exact(&m).unwrap(), det_cofactor(&m));
        }
    }

    #[test]
    fn tree_counts_examples() {
        let tc = tree_counts(&gen_thm2_family(3).unwrap());
        assert_eq!(tc.counts, vec![big(2), big(1), big(1)]);
        assert_eq!(tc.m_gcd, big(1));

        for n in 1..=3usize {
            let tc = tree_counts(&gen_two_four_chain(n).unwrap());
            for i in 1..=n + 1 {
                let expected = BigInt::from(2).pow((2 * n + 1 - i) as u32);
                assert_eq!(*tc.count_of(i), expected, "n={n} i={i}");
            }
            assert_eq!(tc.m_gcd, BigInt::from(2).pow(n as u32));
        }

        let tc = tree_counts(&gen_cycle(5).unwrap());
        assert_eq!(tc.counts, vec![big(1); 5]);
        assert_eq!(tc.m_gcd, big(1));
    }

    #[test]
    fn brute_force_agrees_with_determinants() {
        let graphs = [
            gen_thm2_family(3).unwrap(),
            gen_thm2_family(5).unwrap(),
            gen_bidirected_complete(3).unwrap(),
            gen_bidirected_complete(4).unwrap(),
            gen_cycle(3).unwrap(),
            gen_two_four_chain(2).unwrap(),
            parse_digraph("1 1\n1: 1\n").unwrap(),
        ];
        for g in graphs {
            let fast = tree_counts(&g);
            let slow = brute_force_tree_counts(&g, 1_000_000).unwrap();
            assert_eq!(fast, slow);
        }
        let tc = brute_force_tree_counts(&gen_bidirected_complete(3).unwrap(), 1_000_000).unwrap();
        assert_eq!(tc.counts, vec![big(3), big(3), big(3)]);
        assert_eq!(tc.m_gcd, big(3));
    }

    #[test]
    fn brute_force_budget() {
        let g = gen_bidirected_complete(5).unwrap();
        assert!(matches!(
            brute_force_tree_counts(&g, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn gcd_of_all_zero_counts_is_zero() {
        // Two separate sink components: no arborescences at all.
        let g = parse_digraph("4 2\n1: 2\n2:\n3: 4\n4:\n").unwrap();
        let tc = tree_counts(&g);
        assert!(tc.counts.iter().all(|c| c.is_zero()));
        assert_eq!(tc.m_gcd, big(0));
    }

    #[test]
    fn hnf_examples() {
        let b = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]).unwrap();
        let (h, u) = hermite_normal_form(&b);
        assert_eq!(h, b);
        assert_eq!(u.matmul(&b).unwrap(), h);

        let b = IntMatrix::from_i64_rows(&[&[2, -1], &[0, 1]]).unwrap();
        let (h, u) = hermite_normal_form(&b);
        assert_eq!(u.matmul(&b).unwrap(), h);
        assert_eq!(det_exact(&u).unwrap().abs(), big(1));
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]).unwrap());

        let empty = IntMatrix::zeros(0, 3);
        let (h, _) = hermite_normal_form(&empty);
        assert_eq!(h.rows(), 0);
    }

    #[test]
    fn hnf_zero_rows_sink_and_transform_is_unimodular() {
        let b = IntMatrix::from_i64_rows(&[&[4, 6, 2], &[2, 3, 1], &[6, 9, 3]]).unwrap();
        let (h, u) = hermite_normal_form(&b);
        assert_eq!(u.matmul(&b).unwrap(), h);
        assert_eq!(det_exact(&u).unwrap().abs(), big(1));
        assert!(h.row(1).iter().all(|x| x.is_zero()));
        assert!(h.row(2).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn lattice_membership_examples() {
        let basis = IntMatrix::from_i64_rows(&[&[2, -1], &[0, 1]]).unwrap();
        assert!(lattice_member(&[big(0), big(0)], &basis).unwrap());
        assert!(lattice_member(&[big(2), big(-1)], &basis).unwrap());
        assert!(!lattice_member(&[big(-1), big(0)], &basis).unwrap());
        assert!(lattice_member(&[big(-2), big(0)], &basis).unwrap());

        let empty = IntMatrix::zeros(0, 2);
        assert!(lattice_member(&[big(0), big(0)], &empty).unwrap());
        assert!(!lattice_member(&[big(1), big(0)], &empty).unwrap());

        assert!(lattice_member(&[big(1)], &basis).is_err());
    }

    #[test]
    fn quotient_order_examples() {
        // thm2 n=3, column of vertex 1 deleted.
        let lap = laplacian(&gen_thm2_family(3).unwrap());
        let reduced = delete_col(&lap, 0).unwrap();
        let vec = reduced.row_vec(0);
        let others =
            IntMatrix::from_rows(vec![reduced.row_vec(1), reduced.row_vec(2)]).unwrap();
        assert_eq!(order_in_quotient(&vec, &others).unwrap(), big(2));

        // Anything already in the lattice has order 1.
        assert_eq!(
            order_in_quotient(&[big(2), big(-1)], &others.clone()).unwrap(),
            big(1)
        );

        // two_four_chain(1), column of vertex 1 deleted: order 4/2 = 2.
        let lap = laplacian(&gen_two_four_chain(1).unwrap());
        let reduced = delete_col(&lap, 0).unwrap();
        let vec = reduced.row_vec(0);
        let others = IntMatrix::from_rows(vec![reduced.row_vec(1)]).unwrap();
        assert_eq!(order_in_quotient(&vec, &others).unwrap(), big(2));
    }

    #[test]
    fn quotient_order_infinite_is_detected() {
        let others = IntMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert!(matches!(
            order_in_quotient(&[big(0), big(0), big(1)], &others),
            Err(Error::InfiniteOrder)
        ));
    }

    #[test]
    fn row_vector_annihilates_laplacian() {
        let g = gen_thm2_family(3).unwrap();
        let lap = laplacian(&g);
        let prod = row_times_matrix(&[big(2), big(1), big(1)], &lap).unwrap();
        assert!(prod.iter().all(|x| x.is_zero()));
    }
}
