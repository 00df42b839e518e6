#include "dmdseg/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "dmdseg/pgm.hpp"

namespace dmdseg {

namespace fs = std::filesystem;

BinaryMask Region::rasterize(int width, int height) const {
    BinaryMask mask(width, height);
    for (const auto& shape : shapes) {
        for (int row = 0; row < height; ++row) {
            for (int col = 0; col < width; ++col) {
                const bool inside = std::visit(
                    [&](const auto& s) {
                        using T = std::decay_t<decltype(s)>;
                        if constexpr (std::is_same_v<T, Ellipse>) {
                            const double dx = (col - s.cx) / s.rx;
                            const double dy = (row - s.cy) / s.ry;
                            return dx * dx + dy * dy <= 1.0;
                        } else {
                            return col >= s.x0 && col <= s.x1 && row >= s.y0 && row <= s.y1;
                        }
                    },
                    shape);
                if (inside)
                    mask.set(row, col, true);
            }
        }
    }
    return mask;
}

PhantomSpec default_phantom_spec(int width, int height, int frames, bool simple) {
    PhantomSpec spec;
    spec.width = width;
    spec.height = height;
    spec.frames = frames;
    spec.sigmoid_center = 0.7 * frames;
    spec.sigmoid_scale = frames / 12.0;

    const double w = width, h = height;
    if (simple) {
        spec.kidney_region.shapes = {Ellipse{0.5 * w, 0.625 * h, 0.16 * w, 0.19 * h}};
    } else {
        // mirrored pair, well apart so their joint bounding box is loose
        spec.kidney_region.shapes = {Ellipse{0.25 * w, 0.625 * h, 0.11 * w, 0.16 * h},
                                     Ellipse{0.75 * w, 0.625 * h, 0.11 * w, 0.16 * h}};
    }
    spec.liver_region.shapes = {Rect{0.0625 * w, 0.0625 * h, 0.6875 * w, 0.3125 * h}};
    return spec;
}

void validate(const PhantomSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0)
        throw ValidationError("phantom: size must be positive");
    if (spec.frames < 10)
        throw ValidationError("phantom: frames must be >= 10");
    if (spec.noise_sigma < 0)
        throw ValidationError("phantom: noise_sigma must be >= 0");
    if (spec.delta_t <= 0)
        throw ValidationError("phantom: delta_t must be > 0");
    if (spec.sigmoid_scale <= 0 || spec.poisson_rate <= 0)
        throw ValidationError("phantom: curve parameters must be positive");

    const BinaryMask kid = spec.kidney_region.rasterize(spec.width, spec.height);
    const BinaryMask liv = spec.liver_region.rasterize(spec.width, spec.height);
    if (kid.count() == 0 || liv.count() == 0)
        throw ValidationError("phantom: a region rasterizes to zero pixels");
    if (mask_and(kid, liv).count() != 0)
        throw ValidationError("overlapping regions");
}

namespace {

// Poisson pmf over t = 0..frames-1 via the stable recurrence
// p(t) = p(t-1) * lambda / t.
std::vector<double> poisson_pmf(int frames, double lambda) {
    std::vector<double> p(static_cast<std::size_t>(frames));
    p[0] = std::exp(-lambda);
    for (int t = 1; t < frames; ++t)
        p[static_cast<std::size_t>(t)] = p[static_cast<std::size_t>(t - 1)] * lambda / t;
    return p;
}

double poisson_peak(int frames, double lambda) {
    const auto p = poisson_pmf(frames, lambda);
    double peak = 0.0;
    for (double v : p)
        peak = std::max(peak, v);
    return peak;
}

// Deterministic standard-normal stream: mt19937_64 words mapped to (0,1]
// doubles, then Box-Muller. Identifier: mt19937_64/box-muller-v1.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = unit();
        const double u2 = unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double unit() {
        // 53 high bits, shifted into (0,1] so log() stays finite
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace

double kidney_curve_value(int t, const PhantomSpec& spec) {
    const auto p = poisson_pmf(spec.frames, spec.poisson_rate);
    const double peak = poisson_peak(spec.frames, spec.poisson_rate);
    return spec.transient_weight * p[static_cast<std::size_t>(t)] / peak +
           spec.log_weight * std::log1p(static_cast<double>(t)) / std::log(static_cast<double>(spec.frames));
}

double liver_curve_value(int t, const PhantomSpec& spec) {
    return 1.0 / (1.0 + std::exp(-(t - spec.sigmoid_center) / spec.sigmoid_scale));
}

PhantomOutput generate(const PhantomSpec& spec) {
    validate(spec);

    PhantomOutput out;
    out.kidney_mask = spec.kidney_region.rasterize(spec.width, spec.height);
    out.liver_mask = spec.liver_region.rasterize(spec.width, spec.height);

    const auto pmf = poisson_pmf(spec.frames, spec.poisson_rate);
    const double peak = poisson_peak(spec.frames, spec.poisson_rate);
    Vector kidney(spec.frames), liver(spec.frames), times(spec.frames);
    for (int t = 0; t < spec.frames; ++t) {
        kidney[t] = spec.transient_weight * pmf[static_cast<std::size_t>(t)] / peak +
                    spec.log_weight * std::log1p(static_cast<double>(t)) /
                        std::log(static_cast<double>(spec.frames));
        liver[t] = liver_curve_value(t, spec);
        times[t] = t * spec.delta_t;
    }
    out.kidney_curve = TimeIntensityCurve{kidney, times, out.kidney_mask.count()};
    out.liver_curve = TimeIntensityCurve{liver, times, out.liver_mask.count()};

    NormalStream noise(spec.seed);
    const Eigen::Index mn = static_cast<Eigen::Index>(spec.width) * spec.height;
    std::vector<ImageFrame> frames;
    frames.reserve(static_cast<std::size_t>(spec.frames));
    for (int t = 0; t < spec.frames; ++t) {
        Vector px = Vector::Zero(mn);
        for (Eigen::Index i = 0; i < mn; ++i) {
            if (out.kidney_mask.bits[static_cast<std::size_t>(i)])
                px[i] = kidney[t];
            else if (out.liver_mask.bits[static_cast<std::size_t>(i)])
                px[i] = liver[t];
            if (spec.noise_sigma > 0)
                px[i] += spec.noise_sigma * noise.next();
        }
        frames.emplace_back(spec.width, spec.height, std::move(px));
    }
    out.sequence = ImageSequence(std::move(frames), spec.delta_t);
    return out;
}

void write_phantom(const fs::path& dir, const PhantomOutput& phantom, const PhantomSpec& spec) {
    fs::create_directories(dir / "frames");
    fs::create_directories(dir / "ground_truth");

    // one affine map onto 0..65535 shared by every frame
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const ImageFrame& f : phantom.sequence.frames) {
        lo = std::min(lo, f.pixels.minCoeff());
        hi = std::max(hi, f.pixels.maxCoeff());
    }

    std::ostringstream manifest;
    manifest << "# phantom sequence\n";
    manifest << "# rng = mt19937_64/box-muller-v1\n";
    manifest << "# seed = " << spec.seed << "\n";
    manifest << "# noise_sigma = " << spec.noise_sigma << "\n";
    manifest << std::setprecision(17);
    manifest << "# intensity_lo = " << lo << "\n";
    manifest << "# intensity_hi = " << hi << "\n";
    manifest << "delta_t_seconds = " << spec.delta_t << "\n";

    int width = 1;
    for (int n = phantom.sequence.frame_count() - 1; n >= 10; n /= 10)
        ++width;
    for (int t = 0; t < phantom.sequence.frame_count(); ++t) {
        std::ostringstream name;
        name << "frame_" << std::setw(width) << std::setfill('0') << t << ".pgm";
        write_pgm16(dir / "frames" / name.str(), phantom.sequence.frames[static_cast<std::size_t>(t)],
                    lo, hi);
        manifest << "frame = frames/" << name.str() << "\n";
    }

    std::ofstream mf(dir / "sequence.toml");
    if (!mf)
        throw IoError("cannot write manifest: " + (dir / "sequence.toml").string());
    mf << manifest.str();
    mf.close();

    write_mask_pgm(dir / "ground_truth" / "kidney_mask.pgm", phantom.kidney_mask);
    write_mask_pgm(dir / "ground_truth" / "liver_mask.pgm", phantom.liver_mask);
    write_curve_csv(dir / "ground_truth" / "kidney_curve.csv", phantom.kidney_curve);
    write_curve_csv(dir / "ground_truth" / "liver_curve.csv", phantom.liver_curve);
}

} // namespace dmdseg
