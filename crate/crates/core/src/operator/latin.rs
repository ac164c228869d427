//! Latin squares over a loop carrier `{0, .., n−1}` (0 is the identity).

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    entries: Vec<u32>,
}

impl LatinSquare {
    /// Wraps a row-major array without checking the Latin property.
    pub fn from_entries(n: usize, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), n * n);
        LatinSquare { n, entries }
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Self {
        let n = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n);
                r.iter().map(|&x| x as u32)
            })
            .collect();
        LatinSquare { n, entries }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                entries.push(f(x, y) as u32);
            }
        }
        LatinSquare { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.n + y] as usize
    }

    pub fn set(&mut self, x: usize, y: usize, v: usize) {
        self.entries[x * self.n + y] = v as u32;
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.get(x, y)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |x, y| self.get(y, x))
    }

    pub fn is_latin(&self) -> bool {
        let n = self.n;
        let mut seen = vec![0u32; n];
        let mut stamp = 0;
        for line in 0..2 * n {
            stamp += 1;
            for k in 0..n {
                let v = if line < n { self.get(line, k) } else { self.get(k, line - n) };
                if v >= n || seen[v] == stamp {
                    return false;
                }
                seen[v] = stamp;
            }
        }
        true
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.get(x, y) == self.get(y, x)))
    }

    /// `true` iff every diagonal entry is the identity `0`.
    pub fn is_unipotent(&self) -> bool {
        (0..self.n).all(|x| self.get(x, x) == 0)
    }
}

/// Calls `visit` on every symmetric Latin square of side `n` with zero
/// diagonal, in lexicographic order of the upper triangle, until `visit`
/// returns `false` or `limit` squares have been produced. Returns the number
/// of squares visited.
pub fn for_each_symmetric_unipotent(
    n: usize,
    limit: usize,
    mut visit: impl FnMut(&LatinSquare) -> bool,
) -> usize {
    if n == 0 || limit == 0 || (n % 2 == 1 && n > 1) {
        return 0;
    }
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let mut search = SymmetricSearch {
        n,
        sq: LatinSquare::from_entries(n, vec![0; n * n]),
        used: vec![vec![false; n]; n],
        count: 0,
        limit,
        stopped: false,
    };
    search.rec(&cells, &mut visit);
    search.count
}

struct SymmetricSearch {
    n: usize,
    sq: LatinSquare,
    /// `used[x][v]`: symbol `v` already occurs in row `x`.
    used: Vec<Vec<bool>>,
    count: usize,
    limit: usize,
    stopped: bool,
}

impl SymmetricSearch {
    fn rec(&mut self, cells: &[(usize, usize)], visit: &mut impl FnMut(&LatinSquare) -> bool) {
        let Some((&(x, y), rest)) = cells.split_first() else {
            self.count += 1;
            self.stopped = !visit(&self.sq) || self.count == self.limit;
            return;
        };
        for v in 1..self.n {
            if self.used[x][v] || self.used[y][v] {
                continue;
            }
            self.sq.set(x, y, v);
            self.sq.set(y, x, v);
            self.used[x][v] = true;
            self.used[y][v] = true;
            self.rec(rest, visit);
            self.used[x][v] = false;
            self.used[y][v] = false;
            if self.stopped {
                return;
            }
        }
    }
}
