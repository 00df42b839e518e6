#ifndef DMDSEG_SEGMENTATION_HPP
#define DMDSEG_SEGMENTATION_HPP

#include <array>
#include <cstdint>
#include <string>

#include "dmdseg/image.hpp"

namespace dmdseg {

enum class Connectivity { four = 4, eight = 8 };

/// Label map produced by a top-to-bottom, left-to-right raster scan:
/// labels are assigned in first-encounter order (1, 2, ...), 0 is
/// background. areas[k-1] is the pixel count of label k.
struct LabeledComponents {
    int width = 0;
    int height = 0;
    std::vector<int> labels; // row-major, 0 = background
    std::vector<std::int64_t> areas;
    int count = 0;
};

/// Min-max normalization onto [0,1]; a constant image maps to all zeros.
ImageFrame normalize01(const ImageFrame& img);

/// 256-bin histogram of an image with values in [0,1]; bin = min(255,
/// floor(v * 256)).
std::array<std::int64_t, 256> histogram256(const ImageFrame& img);

/// Otsu's criterion over a 256-bin histogram: returns the bin index t
/// maximizing the between-class variance w0*w1*(mu0-mu1)^2 of the split
/// bins [0..t] vs [t+1..255]; ties resolved to the lowest bin.
int otsu_threshold_bin(const std::array<std::int64_t, 256>& hist);

/// Adaptive threshold for a [0,1] image: (otsu bin + 1) / 256, so the
/// threshold sits at the upper edge of the background class. A constant
/// image returns 0 (empty foreground once binarized with strict >).
double otsu_threshold(const ImageFrame& img);

/// bit = pixel > threshold (strict).
BinaryMask binarize(const ImageFrame& img, double threshold);

/// Maximal connected foreground regions under 4- or 8-adjacency.
LabeledComponents connected_components(const BinaryMask& mask, Connectivity conn);

/// Mask of the largest-area label; ties resolve to the smallest label
/// (earliest in raster order). Throws ValidationError when there is no
/// foreground component.
BinaryMask largest_component(const LabeledComponents& lc);

/// Union of the k largest components (area descending, ties by smallest
/// label). k >= component count returns the whole foreground.
BinaryMask top_k_components(const LabeledComponents& lc, int k);

struct ThresholdSpec {
    enum class Kind { otsu, fixed };
    Kind kind = Kind::otsu;
    double value = 0.0; // for Kind::fixed

    static ThresholdSpec parse(const std::string& text); // "otsu" | "fixed:<v>"
    std::string str() const;
};

struct SegmentationOptions {
    Connectivity connectivity = Connectivity::eight;
    int top_k = 1;
    ThresholdSpec threshold;
};

/// Full stage chain: normalize01 -> threshold -> binarize -> connected
/// components -> union of the top-k largest components.
BinaryMask segment(const ImageFrame& mode_image, const SegmentationOptions& opts = {});

} // namespace dmdseg

#endif
