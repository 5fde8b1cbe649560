//! Walsh index assignment, distance cutoff and decoupling guard.

use super::model::{Channel, ResourceHamiltonian};
use super::CompileError;
use crate::graphdecomp::Matching;
use crate::walsh::WalshAssignment;

/// Class label per qubit: linked qubits share a label, the rest are singletons.
fn labels(groups: &[Vec<usize>], n: usize) -> Result<Vec<usize>, CompileError> {
    let mut label = vec![usize::MAX; n];
    for (g, members) in groups.iter().enumerate() {
        for &q in members {
            if q >= n {
                return Err(CompileError::InvalidTarget(format!("qubit {q} out of range")));
            }
            if label[q] != usize::MAX {
                return Err(CompileError::InvalidTarget(format!("qubit {q} in two groups")));
            }
            label[q] = g;
        }
    }
    let mut next = groups.len();
    for l in label.iter_mut().filter(|l| **l == usize::MAX) {
        *l = next;
        next += 1;
    }
    Ok(label)
}

/// Smallest index per class, never reusing an index held by an already assigned
/// qubit within `window` of any member (`None`: no reuse at all).
pub(crate) fn assign_groups(
    groups: &[Vec<usize>],
    n: usize,
    window: Option<usize>,
) -> Result<Vec<usize>, CompileError> {
    let label = labels(groups, n)?;
    let mut index = vec![usize::MAX; n];
    for q in 0..n {
        if index[q] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&p| label[p] == label[q]).collect();
        if let Some(w) = window {
            for (a, &p) in members.iter().enumerate() {
                for &r in &members[a + 1..] {
                    if p.abs_diff(r) > w {
                        return Err(CompileError::LinkBeyondCutoff { i: p, j: r, lambda: w });
                    }
                }
            }
        }
        let mut used: Vec<bool> = vec![false; n + 1];
        for p in 0..n {
            if index[p] == usize::MAX {
                continue;
            }
            let near = match window {
                None => true,
                Some(w) => members.iter().any(|&m| m.abs_diff(p) <= w),
            };
            if near && index[p] < used.len() {
                used[index[p]] = true;
            }
        }
        let pick = used.iter().position(|u| !u).expect("n + 1 slots for at most n classes");
        for &m in &members {
            index[m] = pick;
        }
    }
    Ok(index)
}

fn matching_groups(m: &Matching) -> Vec<Vec<usize>> {
    m.pairs().map(|(i, j)| vec![i, j]).collect()
}

/// Equal indices exactly on matched pairs, everything else distinct.
pub fn assign_indices(
    x_matching: &Matching,
    y_matching: &Matching,
    n: usize,
) -> Result<WalshAssignment, CompileError> {
    let x = assign_groups(&matching_groups(x_matching), n, None)?;
    let y = assign_groups(&matching_groups(y_matching), n, None)?;
    Ok(WalshAssignment::new(x, y)?)
}

/// Like [`assign_indices`] for a chain, but indices are reused once qubits are
/// more than `lambda_r` sites apart. Every index is at most `lambda_r`.
pub fn assign_indices_with_cutoff(
    x_matching: &Matching,
    y_matching: &Matching,
    n: usize,
    lambda_r: usize,
) -> Result<WalshAssignment, CompileError> {
    if lambda_r == 0 {
        return Err(CompileError::InvalidOption("cutoff distance must be positive".into()));
    }
    let x = assign_groups(&matching_groups(x_matching), n, Some(lambda_r))?;
    let y = assign_groups(&matching_groups(y_matching), n, Some(lambda_r))?;
    Ok(WalshAssignment::new(x, y)?)
}

/// Shifts indices so that no qubit has index 0 or equal X and Y indices, which
/// averages out every single-qubit field while keeping which qubits are linked.
pub fn dd_guard(a: &WalshAssignment) -> WalshAssignment {
    if a.is_dd_guarded() {
        return a.clone();
    }
    let x: Vec<usize> = a.x.iter().map(|v| v + 1).collect();
    let offset = x.iter().copied().max().unwrap_or(0) + 1;
    let y = a.y.iter().map(|v| v + offset).collect();
    WalshAssignment { x, y }
}

/// Resource couplings that an assignment keeps but a target would not: pairs with
/// equal indices that are not in the intended groups.
pub fn residual_couplings(
    a: &WalshAssignment,
    resource: &ResourceHamiltonian,
    x_linked: &Matching,
    y_linked: &Matching,
) -> Vec<(usize, usize, Channel, f64)> {
    let mut out = Vec::new();
    for i in 0..a.n_qubits() {
        for j in i + 1..a.n_qubits() {
            for (ch, idx, linked) in [(Channel::X, &a.x, x_linked), (Channel::Y, &a.y, y_linked)] {
                let c = resource.coupling(ch, i, j);
                if idx[i] == idx[j] && !linked.contains(i, j) && c != 0.0 {
                    out.push((i, j, ch, c));
                }
            }
        }
    }
    out
}
