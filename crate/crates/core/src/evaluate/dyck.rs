use std::collections::BTreeMap;

use super::EvalError;

pub const DYCK_MAX_SEMILENGTH: u32 = 12;

/// A Dyck path stored as a bit string: bit `i` set means step `i` goes up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: u32,
    semilength: u32,
    peaks: u32,
}

impl DyckPath {
    pub fn semilength(&self) -> u32 {
        self.semilength
    }

    /// Number of up-steps immediately followed by a down-step.
    pub fn peaks(&self) -> u32 {
        self.peaks
    }

    pub fn steps(&self) -> impl Iterator<Item = i8> + '_ {
        (0..2 * self.semilength).map(|i| if self.steps >> i & 1 == 1 { 1 } else { -1 })
    }

    /// `U`/`D` word, e.g. `UUDD`.
    pub fn word(&self) -> String {
        self.steps()
            .map(|s| if s > 0 { 'U' } else { 'D' })
            .collect()
    }
}

/// Every Dyck path of semilength `k`, by exhaustive depth-first search.
pub fn dyck_enumerate(k: u32) -> Result<Vec<DyckPath>, EvalError> {
    if k > DYCK_MAX_SEMILENGTH {
        return Err(EvalError::BoundExceeded {
            method: super::Method::Narayana,
            n: k as u64,
            max: DYCK_MAX_SEMILENGTH as u64,
        });
    }
    let mut out = Vec::new();
    extend(k, 0, 0, 0, 0, false, &mut out);
    Ok(out)
}

fn extend(
    k: u32,
    pos: u32,
    ups: u32,
    bits: u32,
    peaks: u32,
    last_up: bool,
    out: &mut Vec<DyckPath>,
) {
    if pos == 2 * k {
        out.push(DyckPath {
            steps: bits,
            semilength: k,
            peaks,
        });
        return;
    }
    let downs = pos - ups;
    if ups < k {
        extend(k, pos + 1, ups + 1, bits | 1 << pos, peaks, true, out);
    }
    if downs < ups {
        extend(k, pos + 1, ups, bits, peaks + last_up as u32, false, out);
    }
}

/// Peak count -> number of paths.
pub fn peak_histogram(paths: &[DyckPath]) -> BTreeMap<u32, u64> {
    let mut hist = BTreeMap::new();
    for p in paths {
        *hist.entry(p.peaks).or_insert(0) += 1;
    }
    hist
}
