use crate::error::{Error, Result};

/// A finite operation given by its full value table. Entries are listed in
/// lexicographic argument order with the first argument most significant, so
/// `values[a1 * n^(k-1) + a2 * n^(k-2) + ... + ak]` is the value at
/// `(a1, ..., ak)` over a domain of size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpTable {
    arity: usize,
    size: usize,
    values: Vec<usize>,
}

/// `size^arity` with overflow checking, the length of a table.
pub fn table_len(size: usize, arity: usize) -> Result<usize> {
    let mut len: usize = 1;
    for _ in 0..arity {
        len = len
            .checked_mul(size)
            .ok_or_else(|| Error::BudgetExceeded("operation table too large".into()))?;
    }
    Ok(len)
}

impl OpTable {
    pub fn new(arity: usize, size: usize, values: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: "domain must be nonempty".into(),
            });
        }
        let expect = table_len(size, arity)?;
        if values.len() != expect {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: format!("table length {} != {}^{} = {}", values.len(), size, arity, expect),
            });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= size) {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: format!("entry {} out of range [0, {})", v, size),
            });
        }
        Ok(OpTable { arity, size, values })
    }

    /// The `i`-th projection of the given arity.
    pub fn projection(arity: usize, size: usize, i: usize) -> Self {
        assert!(i < arity);
        let len = size.pow(arity as u32);
        let mut values = Vec::with_capacity(len);
        let mut args = vec![0usize; arity];
        for _ in 0..len {
            values.push(args[i]);
            for j in (0..arity).rev() {
                args[j] += 1;
                if args[j] < size {
                    break;
                }
                args[j] = 0;
            }
        }
        OpTable { arity, size, values }
    }

    pub fn constant(arity: usize, size: usize, value: usize) -> Self {
        assert!(value < size);
        OpTable {
            arity,
            size,
            values: vec![value; size.pow(arity as u32)],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn index_of(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let mut idx = 0;
        for &a in args {
            debug_assert!(a < self.size);
            idx = idx * self.size + a;
        }
        idx
    }

    pub fn apply(&self, args: &[usize]) -> usize {
        self.values[self.index_of(args)]
    }

    /// Composition `self(g1, ..., gk)` where all `gi` have a common arity and
    /// the same domain; the result has that common arity.
    pub fn compose(&self, inner: &[&OpTable]) -> OpTable {
        assert_eq!(inner.len(), self.arity);
        let m = if inner.is_empty() { 0 } else { inner[0].arity };
        for g in inner {
            assert_eq!(g.arity, m);
            assert_eq!(g.size, self.size);
        }
        let len = self.size.pow(m as u32);
        let mut values = Vec::with_capacity(len);
        let mut args = vec![0usize; self.arity];
        for idx in 0..len {
            for (j, g) in inner.iter().enumerate() {
                args[j] = g.values[idx];
            }
            values.push(self.apply(&args));
        }
        OpTable {
            arity: m,
            size: self.size,
            values,
        }
    }

    /// Coordinates the operation genuinely depends on: `i` is essential iff
    /// two argument tuples differing only at `i` give different values.
    pub fn essential_coords(&self) -> Vec<usize> {
        let mut essential = Vec::new();
        let n = self.size;
        'coord: for i in 0..self.arity {
            let stride = n.pow((self.arity - 1 - i) as u32);
            for (idx, &v) in self.values.iter().enumerate() {
                let digit = (idx / stride) % n;
                if digit + 1 < n && self.values[idx + stride] != v {
                    essential.push(i);
                    continue 'coord;
                }
            }
        }
        essential
    }

    pub fn essential_arity(&self) -> usize {
        self.essential_coords().len()
    }

    pub fn is_essentially_unary(&self) -> bool {
        self.essential_arity() <= 1
    }

    /// Whether the table maps `set`-tuples into `set`.
    pub fn preserves(&self, set: &[usize]) -> bool {
        let mut args = vec![0usize; self.arity];
        loop {
            let tuple: Vec<usize> = args.iter().map(|&j| set[j]).collect();
            if !set.contains(&self.apply(&tuple)) {
                return false;
            }
            if !next_tuple(&mut args, set.len()) {
                return true;
            }
        }
    }

    /// The table of the same operation restricted to `set`, with elements
    /// re-indexed by position in `set` (which must be sorted and closed).
    pub fn restrict(&self, set: &[usize]) -> OpTable {
        let m = set.len();
        let len = m.pow(self.arity as u32);
        let mut values = Vec::with_capacity(len);
        let mut args = vec![0usize; self.arity];
        for _ in 0..len {
            let tuple: Vec<usize> = args.iter().map(|&j| set[j]).collect();
            let v = self.apply(&tuple);
            let pos = set
                .iter()
                .position(|&x| x == v)
                .expect("restrict: set not closed under operation");
            values.push(pos);
            if !next_tuple(&mut args, m) {
                break;
            }
        }
        OpTable {
            arity: self.arity,
            size: m,
            values,
        }
    }
}

/// Advance `args` to the next tuple in lexicographic order over `0..size`;
/// returns false after the last tuple. Empty tuples have one instance.
pub fn next_tuple(args: &mut [usize], size: usize) -> bool {
    for j in (0..args.len()).rev() {
        args[j] += 1;
        if args[j] < size {
            return true;
        }
        args[j] = 0;
    }
    false
}

/// All tuples of the given length over `0..size`, lexicographically. The
/// empty tuple is the unique length-0 tuple; there are no tuples of positive
/// length over an empty range.
pub fn all_tuples(len: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 && len > 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut args = vec![0usize; len];
    loop {
        out.push(args.clone());
        if !next_tuple(&mut args, size) {
            return out;
        }
    }
}
