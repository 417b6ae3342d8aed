//! Binary-Addition-Tree enumeration and first-connected-vector searches.

use crate::graph::Network;
use crate::state::StateVector;
use crate::Error;

/// Largest `k` enumerated without an explicit override.
pub const ENUMERATION_CAP: usize = 24;

/// Successor of `x` in BAT order: the first 0 bit becomes 1 and every bit
/// below it is cleared. `None` once `x` is all ones.
pub fn bat_next(x: &StateVector) -> Option<StateVector> {
    let i = (0..x.len()).find(|&i| !x.get(i))?;
    let mut next = x.clone();
    next.set(i, true);
    for j in 0..i {
        next.set(j, false);
    }
    Some(next)
}

/// Streams every length-`k` state vector in BAT order, starting at zero.
#[derive(Debug, Clone)]
pub struct BatIter {
    next: Option<StateVector>,
}

impl Iterator for BatIter {
    type Item = StateVector;

    fn next(&mut self) -> Option<StateVector> {
        let cur = self.next.take()?;
        self.next = bat_next(&cur);
        Some(cur)
    }
}

pub fn bat_enumerate(k: usize, force: bool) -> Result<BatIter, Error> {
    if k == 0 {
        return Err(Error::EmptyEnumeration);
    }
    check_cap(k, force)?;
    Ok(BatIter { next: Some(StateVector::zeros(k)) })
}

pub(crate) fn check_cap(m: usize, force: bool) -> Result<(), Error> {
    if m > ENUMERATION_CAP && !force {
        return Err(Error::CapExceeded { m, cap: ENUMERATION_CAP });
    }
    if m > 63 {
        // 2^m no longer fits a machine word; force does not help here.
        return Err(Error::CapExceeded { m, cap: 63 });
    }
    Ok(())
}

fn require_connected(net: &Network) -> Result<(), Error> {
    if net.reaches_sink(|_| true) {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Greedy forward-minimum-cut search, scanning arcs from `a_1` upward.
///
/// Arc `j` is tentatively failed with the lower arcs as already decided and
/// the higher arcs working; it is kept only when failing it disconnects the
/// network. On the six-node benchmark this returns `(0,1,0,0,1,0,0,1)`, which
/// is connected but not the first connected vector.
pub fn find_xfc_paper(net: &Network) -> Result<StateVector, Error> {
    require_connected(net)?;
    let mut x = StateVector::ones(net.m());
    for j in 0..net.m() {
        x.set(j, false);
        if !net.reaches_sink(|k| x.get(k)) {
            x.set(j, true);
        }
    }
    Ok(x)
}

/// BAT-minimal connected vector, fixing bits from `a_m` downward.
///
/// Arc `j` is tentatively failed with the higher arcs as already decided and
/// the lower arcs working; if that disconnects, no vector with this prefix
/// and bit `j` clear can be connected, so the bit must be 1.
pub fn find_xfc_correct(net: &Network) -> Result<StateVector, Error> {
    require_connected(net)?;
    let mut x = StateVector::ones(net.m());
    for j in (0..net.m()).rev() {
        x.set(j, false);
        if !net.reaches_sink(|k| x.get(k)) {
            x.set(j, true);
        }
    }
    Ok(x)
}
