use rayon::prelude::*;
use sdias_linalg::SparseVector;

pub const DEFAULT_MAX_VIOLATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Maximum number of violations kept in a report; the total count is
    /// always exact.
    pub max_violations: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_violations: DEFAULT_MAX_VIOLATIONS,
        }
    }
}

/// One failed instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub lhs: SparseVector,
    pub rhs: SparseVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationReport {
    pub identity: String,
    /// Sorted by `indices`, truncated to `max_violations`.
    pub violations: Vec<Violation>,
    pub total_violations: usize,
    pub checked: usize,
    pub passed: bool,
}

impl ViolationReport {
    pub fn pass(identity: impl Into<String>, checked: usize) -> Self {
        ViolationReport {
            identity: identity.into(),
            violations: Vec::new(),
            total_violations: 0,
            checked,
            passed: true,
        }
    }

    pub fn from_violations(
        identity: impl Into<String>,
        mut violations: Vec<Violation>,
        checked: usize,
        opts: &CheckOptions,
    ) -> Self {
        violations.sort_by(|a, b| a.indices.cmp(&b.indices));
        let total = violations.len();
        violations.truncate(opts.max_violations);
        ViolationReport {
            identity: identity.into(),
            passed: total == 0,
            violations,
            total_violations: total,
            checked,
        }
    }

    /// Concatenates reports; indices of each part are prefixed with its
    /// position so the merged list stays sorted.
    pub fn merge(identity: impl Into<String>, parts: Vec<ViolationReport>, opts: &CheckOptions) -> Self {
        let mut violations = Vec::new();
        let mut total = 0;
        let mut checked = 0;
        for (n, part) in parts.into_iter().enumerate() {
            total += part.total_violations;
            checked += part.checked;
            violations.extend(part.violations.into_iter().map(|mut v| {
                v.indices.insert(0, n);
                v
            }));
        }
        violations.truncate(opts.max_violations);
        ViolationReport {
            identity: identity.into(),
            passed: total == 0,
            violations,
            total_violations: total,
            checked,
        }
    }
}

/// Evaluates `f` on every index tuple of the box `dims`, in parallel over
/// the first one or two coordinates. `f` returns `Some((lhs, rhs))` for a
/// failed instance. Output order is lexicographic and independent of
/// scheduling.
pub fn grid_check<F>(identity: &str, dims: &[usize], opts: &CheckOptions, f: F) -> ViolationReport
where
    F: Fn(&[usize]) -> Option<(SparseVector, SparseVector)> + Sync,
{
    let total_cells: usize = dims.iter().product();
    if dims.is_empty() || total_cells == 0 {
        return ViolationReport::pass(identity, 0);
    }
    let split = dims.len().min(2);
    let outer: usize = dims[..split].iter().product();
    let inner_dims = &dims[split..];
    let cap = opts.max_violations;

    let chunks: Vec<(Vec<Violation>, usize)> = (0..outer)
        .into_par_iter()
        .map(|o| {
            let mut idx = vec![0usize; dims.len()];
            let mut rest = o;
            for k in (0..split).rev() {
                idx[k] = rest % dims[k];
                rest /= dims[k];
            }
            let mut found = Vec::new();
            let mut count = 0;
            loop {
                if let Some((lhs, rhs)) = f(&idx) {
                    count += 1;
                    if found.len() < cap {
                        found.push(Violation {
                            indices: idx.clone(),
                            lhs,
                            rhs,
                        });
                    }
                }
                // odometer over the inner coordinates
                let mut k = dims.len();
                loop {
                    if k == split {
                        return (found, count);
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < inner_dims[k - split] {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        })
        .collect();

    let mut violations = Vec::new();
    let mut total = 0;
    for (found, count) in chunks {
        total += count;
        if violations.len() < cap {
            violations.extend(found);
        }
    }
    violations.truncate(cap);
    ViolationReport {
        identity: identity.to_string(),
        passed: total == 0,
        violations,
        total_violations: total,
        checked: total_cells,
    }
}

/// `Some((lhs, rhs))` if they differ.
pub(crate) fn differ(lhs: SparseVector, rhs: SparseVector) -> Option<(SparseVector, SparseVector)> {
    (lhs != rhs).then_some((lhs, rhs))
}
