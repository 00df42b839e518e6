#ifndef DMDSEG_IMAGE_HPP
#define DMDSEG_IMAGE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dmdseg/errors.hpp"

namespace dmdseg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// A single grayscale frame. Pixels are stored in row-major scan order
/// (row 0 left to right, then row 1, ...), promoted to double regardless
/// of the source bit depth. Row-major order is the pixel-index convention
/// for every module in this library: flattened data-matrix columns,
/// connected-component label maps and masks all agree on it.
struct ImageFrame {
    int width = 0;
    int height = 0;
    Vector pixels; // size width * height

    ImageFrame() = default;
    ImageFrame(int w, int h, Vector px);

    double operator()(int row, int col) const { return pixels[static_cast<Eigen::Index>(row) * width + col]; }
    double& operator()(int row, int col) { return pixels[static_cast<Eigen::Index>(row) * width + col]; }
    Eigen::Index size() const { return pixels.size(); }
};

/// Per-pixel boolean template, same row-major layout as ImageFrame.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits; // size width * height, 0 or 1

    BinaryMask() = default;
    BinaryMask(int w, int h);

    bool at(int row, int col) const { return bits[static_cast<std::size_t>(row) * width + col] != 0; }
    void set(int row, int col, bool v) { bits[static_cast<std::size_t>(row) * width + col] = v ? 1 : 0; }
    std::int64_t count() const;
    bool empty_mask() const { return count() == 0; }
};

bool same_shape(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);

/// Ordered stack of equally spaced frames with lag delta_t between them.
struct ImageSequence {
    std::vector<ImageFrame> frames;
    double delta_t = 1.0; // seconds

    ImageSequence() = default;
    ImageSequence(std::vector<ImageFrame> fr, double dt);

    int width() const { return frames.empty() ? 0 : frames.front().width; }
    int height() const { return frames.empty() ? 0 : frames.front().height; }
    int frame_count() const { return static_cast<int>(frames.size()); }
};

/// Stacks the sequence into an (m*n) x N data matrix: column r is frame r
/// scanned in row-major order.
Matrix flatten(const ImageSequence& seq);

/// Inverse of one flatten column.
ImageFrame unflatten(const Vector& column, int width, int height);

/// Inverse of flatten: rebuilds the sequence from a data matrix.
ImageSequence unflatten_all(const Matrix& data, int width, int height, double delta_t);

/// Loads a sequence from a manifest file or from a directory of PGM frames.
///
/// A directory is scanned for *.pgm files in lexicographic filename order
/// (zero-padded indices expected), unless it contains a `sequence.toml`
/// manifest, which then defines both the frame list and delta_t. A regular
/// file is parsed as a manifest. `delta_t_override`, when set, wins over
/// the manifest value and is required for bare directories (else 1.0).
ImageSequence load_sequence(const std::filesystem::path& path,
                            std::optional<double> delta_t_override = std::nullopt);

} // namespace dmdseg

#endif
