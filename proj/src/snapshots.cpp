#include "dmdseg/snapshots.hpp"

namespace dmdseg {

SnapshotPair split_snapshots(const Matrix& data) {
    if (data.cols() < 2)
        throw ValidationError("split_snapshots: need at least 2 columns, got " +
                              std::to_string(data.cols()));
    const Eigen::Index n1 = data.cols() - 1;
    return SnapshotPair{data.leftCols(n1), data.rightCols(n1)};
}

} // namespace dmdseg
