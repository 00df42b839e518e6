#ifndef DMDSEG_SNAPSHOTS_HPP
#define DMDSEG_SNAPSHOTS_HPP

#include "dmdseg/image.hpp"

namespace dmdseg {

/// Time-shifted snapshot matrices: p1 holds columns 1..N-1 of the data
/// matrix, p2 columns 2..N, so that p2 = A p1 for the unknown propagator A.
/// Both are copies; mutating the source afterwards does not affect them.
struct SnapshotPair {
    Matrix p1;
    Matrix p2;
};

/// Splits a data matrix with N >= 2 columns into the shifted pair.
SnapshotPair split_snapshots(const Matrix& data);

} // namespace dmdseg

#endif
