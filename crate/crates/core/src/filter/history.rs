/// Fixed-length window over the most recent samples, newest first.
///
/// Stored twice over so the window is always one contiguous slice; a push
/// costs two writes and no shifting. Slots not yet written read as zero.
#[derive(Debug, Clone)]
pub struct History {
    buf: Vec<f64>,
    head: usize,
    len: usize,
}

impl History {
    pub fn new(len: usize) -> Self {
        assert!(len > 0, "history length must be positive");
        Self {
            buf: vec![0.0; 2 * len],
            head: 0,
            len,
        }
    }

    pub fn push(&mut self, v: f64) {
        self.head = if self.head == 0 { self.len - 1 } else { self.head - 1 };
        self.buf[self.head] = v;
        self.buf[self.head + self.len] = v;
    }

    /// `[v(n), v(n-1), ..., v(n-len+1)]`.
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.buf[self.head..self.head + self.len]
    }

    /// Sample `lag` steps back; zero beyond the window.
    #[inline]
    pub fn get(&self, lag: usize) -> f64 {
        if lag < self.len {
            self.buf[self.head + lag]
        } else {
            0.0
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newest_first_with_zero_prehistory() {
        let mut h = History::new(3);
        assert_eq!(h.as_slice(), &[0.0, 0.0, 0.0]);
        h.push(1.0);
        assert_eq!(h.as_slice(), &[1.0, 0.0, 0.0]);
        h.push(2.0);
        h.push(3.0);
        h.push(4.0);
        assert_eq!(h.as_slice(), &[4.0, 3.0, 2.0]);
        assert_eq!(h.get(2), 2.0);
        assert_eq!(h.get(3), 0.0);
    }
}
