#ifndef DMDSEG_SYNTHETIC_HPP
#define DMDSEG_SYNTHETIC_HPP

#include <cstdint>
#include <filesystem>
#include <variant>

#include "dmdseg/image.hpp"
#include "dmdseg/quantification.hpp"

namespace dmdseg {

struct Ellipse {
    double cx, cy, rx, ry; // pixel coordinates, x = column, y = row
};

struct Rect {
    double x0, y0, x1, y1; // inclusive bounds
};

/// Union of primitive shapes, rasterized onto a pixel grid. A pixel
/// (row, col) is inside an ellipse when ((col-cx)/rx)^2 + ((row-cy)/ry)^2
/// <= 1, and inside a rect when x0 <= col <= x1 and y0 <= row <= y1.
struct Region {
    std::vector<std::variant<Ellipse, Rect>> shapes;

    BinaryMask rasterize(int width, int height) const;
};

/// Phantom generator configuration. The organ time courses are the kidney
/// transient (Poisson bump blended with a log ramp) and the liver sigmoid;
/// the background is i.i.d. Gaussian noise. Defaults are tuned so the
/// kidney carries the dominant transient and separates into ordered
/// mode-2 of the decomposition.
struct PhantomSpec {
    int width = 64;
    int height = 64;
    int frames = 100;
    std::uint64_t seed = 42;
    double noise_sigma = 0.05;
    double delta_t = 1.0; // seconds, recorded in the manifest

    // kidney curve: w1 * Poisson(t; lambda)/max_t + w2 * ln(1+t)/ln(frames)
    double poisson_rate = 15.0;
    double transient_weight = 0.95;
    double log_weight = 0.05;
    // liver curve: 1 / (1 + exp(-(t - t0)/s))
    double sigmoid_center = 70.0; // t0, defaults to 0.7 * frames
    double sigmoid_scale = 100.0 / 12.0;

    Region kidney_region;
    Region liver_region;
};

/// Spec with default geometry for a given size: two mirrored kidney
/// ellipses (one centered ellipse when `simple`) below a rectangular
/// liver band.
PhantomSpec default_phantom_spec(int width = 64, int height = 64, int frames = 100,
                                 bool simple = false);

/// Throws ValidationError on out-of-bounds or overlapping regions, or
/// frames < 10.
void validate(const PhantomSpec& spec);

double kidney_curve_value(int t, const PhantomSpec& spec);
double liver_curve_value(int t, const PhantomSpec& spec);

struct PhantomOutput {
    ImageSequence sequence;
    BinaryMask kidney_mask;
    BinaryMask liver_mask;
    TimeIntensityCurve kidney_curve; // noise-free ground truth
    TimeIntensityCurve liver_curve;
};

/// Deterministic generation: frame t = kidney_curve(t) * kidney_mask +
/// liver_curve(t) * liver_mask + N(0, noise_sigma^2) per pixel. The noise
/// stream is mt19937_64 seeded with spec.seed, mapped through an explicit
/// Box-Muller transform (algorithm id "mt19937_64/box-muller-v1"), drawn
/// in frame order and row-major pixel order, so equal seeds give
/// bit-identical output.
PhantomOutput generate(const PhantomSpec& spec);

/// Writes the phantom as a PGM frame directory plus sequence.toml
/// manifest, ground-truth masks and ground-truth curve CSVs. Frames are
/// quantized to 16-bit with one affine map shared by the whole sequence
/// (recorded in the manifest header comments).
void write_phantom(const std::filesystem::path& dir, const PhantomOutput& phantom,
                   const PhantomSpec& spec);

} // namespace dmdseg

#endif
