use crate::error::{usage, HacError, Result};

/// An `n x n` matrix whose rows are permutations of `0..n`, and a target row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptiveMinInstance {
    pub rows: Vec<Vec<usize>>,
    pub x: usize,
}

impl AdaptiveMinInstance {
    pub fn new(rows: Vec<Vec<usize>>, x: usize) -> Result<Self> {
        let n = rows.len();
        if x >= n {
            return usage(format!("target index {x} outside 0..{n}"));
        }
        for (i, row) in rows.iter().enumerate() {
            if !is_permutation(row, n) {
                return usage(format!("row {i} is not a permutation of 0..{n}"));
            }
        }
        Ok(AdaptiveMinInstance { rows, x })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn with_target(&self, x: usize) -> Result<Self> {
        AdaptiveMinInstance::new(self.rows.clone(), x)
    }

    /// Line 1 `n x`, then `n` rows of `n` integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let ints = |line: usize, l: &str| -> Result<Vec<usize>> {
            l.split_whitespace()
                .map(|s| s.parse().map_err(|_| HacError::Parse { line, message: format!("invalid integer `{s}`") }))
                .collect()
        };
        let (line, header) = lines.next().ok_or(HacError::Parse { line: 1, message: "missing `n x` header".into() })?;
        let (n, x) = match ints(line, header)?[..] {
            [n, x] => (n, x),
            _ => return Err(HacError::Parse { line, message: "expected `n x`".into() }),
        };
        let mut rows = Vec::with_capacity(n);
        for (line, l) in lines {
            let row = ints(line, l)?;
            if row.len() != n || rows.len() == n {
                return Err(HacError::Parse { line, message: format!("expected {n} rows of {n} integers") });
            }
            if !is_permutation(&row, n) {
                return Err(HacError::Parse { line, message: format!("row is not a permutation of 0..{n}") });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(HacError::Parse { line: 0, message: format!("expected {n} rows, found {}", rows.len()) });
        }
        AdaptiveMinInstance::new(rows, x)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.x);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

fn is_permutation(row: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    row.len() == n && row.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// The literal elimination loop: returns `k_0, ..., k_x`.
pub fn simulate_adaptive_minimum(inst: &AdaptiveMinInstance) -> Vec<usize> {
    let mut alive = vec![true; inst.n()];
    (0..=inst.x)
        .map(|i| {
            let row = &inst.rows[i];
            let k = (0..inst.n()).filter(|&j| alive[j]).min_by_key(|&j| row[j]).expect("a column survives");
            alive[k] = false;
            k
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rows_pick_successive_columns() {
        let inst = AdaptiveMinInstance::new(vec![(0..4).collect(); 4], 3).unwrap();
        assert_eq!(simulate_adaptive_minimum(&inst), vec![0, 1, 2, 3]);
    }

    #[test]
    fn small_trace() {
        let inst = AdaptiveMinInstance::new(vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]], 2).unwrap();
        assert_eq!(simulate_adaptive_minimum(&inst), vec![1, 0, 2]);
    }

    #[test]
    fn single_cell() {
        let inst = AdaptiveMinInstance::new(vec![vec![0]], 0).unwrap();
        assert_eq!(simulate_adaptive_minimum(&inst), vec![0]);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(AdaptiveMinInstance::new(vec![vec![0, 0], vec![0, 1]], 0).is_err());
        assert!(AdaptiveMinInstance::new(vec![vec![0, 1], vec![1, 0]], 2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let inst = AdaptiveMinInstance::new(vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]], 1).unwrap();
        assert_eq!(AdaptiveMinInstance::parse(&inst.to_text()).unwrap(), inst);
        let err = AdaptiveMinInstance::parse("2 0\n0 1\n1 1\n").unwrap_err();
        assert!(matches!(err, HacError::Parse { line: 3, .. }));
    }
}
