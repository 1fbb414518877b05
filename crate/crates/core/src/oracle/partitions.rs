use crate::error::{Error, Result};

/// Largest `n` accepted by the enumerators (Bell(12) = 4 213 597).
pub const MAX_ENUMERATION: usize = 12;

/// All set partitions of `0..n` as restricted growth strings: `a[0] = 0` and
/// `a[i] ≤ 1 + max(a[0..i])`. Yields exactly Bell(n) labelings.
pub fn enumerate_partitions(n: usize) -> Result<Partitions> {
    if n > MAX_ENUMERATION {
        return Err(Error::TooLarge { n, limit: MAX_ENUMERATION });
    }
    Ok(Partitions { labels: vec![0; n], prefix_max: vec![0; n], state: State::Fresh })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

#[derive(Debug, Clone)]
pub struct Partitions {
    labels: Vec<usize>,
    prefix_max: Vec<usize>,
    state: State,
}

impl Partitions {
    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        for i in (1..n).rev() {
            if self.labels[i] <= self.prefix_max[i - 1] {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }

    fn next_slice(&mut self) -> Option<&[usize]> {
        match self.state {
            State::Fresh => self.state = State::Running,
            State::Running => {
                if !self.advance() {
                    self.state = State::Done;
                }
            }
            State::Done => {}
        }
        (self.state != State::Done).then_some(&self.labels[..])
    }
}

impl Iterator for Partitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.next_slice().map(<[usize]>::to_vec)
    }
}

pub(crate) fn for_each_partition(n: usize, mut f: impl FnMut(&[usize])) {
    let mut it = enumerate_partitions(n).expect("caller checked the size");
    while let Some(labels) = it.next_slice() {
        f(labels);
    }
}

/// Bell numbers by the Bell triangle.
pub fn bell_number(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}
