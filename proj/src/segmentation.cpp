#include "dmdseg/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace dmdseg {

ImageFrame normalize01(const ImageFrame& img) {
    const double lo = img.pixels.minCoeff();
    const double hi = img.pixels.maxCoeff();
    if (hi == lo)
        return ImageFrame(img.width, img.height, Vector::Zero(img.size()));
    return ImageFrame(img.width, img.height, (img.pixels.array() - lo) / (hi - lo));
}

std::array<std::int64_t, 256> histogram256(const ImageFrame& img) {
    std::array<std::int64_t, 256> hist{};
    for (Eigen::Index i = 0; i < img.size(); ++i) {
        const double v = img.pixels[i];
        if (v < 0.0 || v > 1.0)
            throw ValidationError("histogram256: pixel outside [0,1]");
        hist[static_cast<std::size_t>(std::min(255.0, std::floor(v * 256.0)))] += 1;
    }
    return hist;
}

int otsu_threshold_bin(const std::array<std::int64_t, 256>& hist) {
    const std::int64_t total = std::accumulate(hist.begin(), hist.end(), std::int64_t{0});
    std::int64_t total_moment = 0;
    for (int b = 0; b < 256; ++b)
        total_moment += static_cast<std::int64_t>(b) * hist[static_cast<std::size_t>(b)];

    // Cumulative count/moment stay in exact integer arithmetic so the
    // argmax (and its ties) is reproducible against a brute-force scan.
    int best_bin = 0;
    double best_var = -1.0;
    std::int64_t w0 = 0, m0 = 0;
    for (int t = 0; t < 256; ++t) {
        w0 += hist[static_cast<std::size_t>(t)];
        m0 += static_cast<std::int64_t>(t) * hist[static_cast<std::size_t>(t)];
        const std::int64_t w1 = total - w0;
        double var = 0.0;
        if (w0 > 0 && w1 > 0) {
            const double mu0 = static_cast<double>(m0) / static_cast<double>(w0);
            const double mu1 = static_cast<double>(total_moment - m0) / static_cast<double>(w1);
            var = static_cast<double>(w0) * static_cast<double>(w1) * (mu0 - mu1) * (mu0 - mu1);
        }
        if (var > best_var) {
            best_var = var;
            best_bin = t;
        }
    }
    return best_bin;
}

double otsu_threshold(const ImageFrame& img) {
    if (img.pixels.minCoeff() == img.pixels.maxCoeff())
        return 0.0;
    const int bin = otsu_threshold_bin(histogram256(img));
    return (bin + 1) / 256.0;
}

BinaryMask binarize(const ImageFrame& img, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw ValidationError("binarize: threshold must be in [0,1]");
    BinaryMask mask(img.width, img.height);
    for (Eigen::Index i = 0; i < img.size(); ++i)
        mask.bits[static_cast<std::size_t>(i)] = img.pixels[i] > threshold ? 1 : 0;
    return mask;
}

LabeledComponents connected_components(const BinaryMask& mask, Connectivity conn) {
    LabeledComponents lc;
    lc.width = mask.width;
    lc.height = mask.height;
    lc.labels.assign(mask.bits.size(), 0);

    static constexpr int dr8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
    static constexpr int dc8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
    static constexpr int dr4[] = {-1, 0, 0, 1};
    static constexpr int dc4[] = {0, -1, 1, 0};
    const int* dr = conn == Connectivity::eight ? dr8 : dr4;
    const int* dc = conn == Connectivity::eight ? dc8 : dc4;
    const int ndirs = conn == Connectivity::eight ? 8 : 4;

    std::deque<std::pair<int, int>> queue;
    for (int row = 0; row < mask.height; ++row) {
        for (int col = 0; col < mask.width; ++col) {
            const std::size_t idx = static_cast<std::size_t>(row) * mask.width + col;
            if (!mask.bits[idx] || lc.labels[idx] != 0)
                continue;
            const int label = ++lc.count;
            std::int64_t area = 0;
            lc.labels[idx] = label;
            queue.emplace_back(row, col);
            while (!queue.empty()) {
                auto [r, c] = queue.front();
                queue.pop_front();
                ++area;
                for (int d = 0; d < ndirs; ++d) {
                    const int nr = r + dr[d], nc = c + dc[d];
                    if (nr < 0 || nr >= mask.height || nc < 0 || nc >= mask.width)
                        continue;
                    const std::size_t nidx = static_cast<std::size_t>(nr) * mask.width + nc;
                    if (mask.bits[nidx] && lc.labels[nidx] == 0) {
                        lc.labels[nidx] = label;
                        queue.emplace_back(nr, nc);
                    }
                }
            }
            lc.areas.push_back(area);
        }
    }
    return lc;
}

namespace {

// Labels of the k largest components; area descending, ties by smallest
// label so the raster-earliest component wins.
std::vector<int> largest_labels(const LabeledComponents& lc, int k) {
    std::vector<int> order(static_cast<std::size_t>(lc.count));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto area_a = lc.areas[static_cast<std::size_t>(a - 1)];
        const auto area_b = lc.areas[static_cast<std::size_t>(b - 1)];
        if (area_a != area_b)
            return area_a > area_b;
        return a < b;
    });
    order.resize(static_cast<std::size_t>(std::min<int>(k, lc.count)));
    return order;
}

BinaryMask mask_of_labels(const LabeledComponents& lc, const std::vector<int>& keep) {
    BinaryMask out(lc.width, lc.height);
    for (std::size_t i = 0; i < lc.labels.size(); ++i) {
        const int l = lc.labels[i];
        if (l != 0 && std::find(keep.begin(), keep.end(), l) != keep.end())
            out.bits[i] = 1;
    }
    return out;
}

} // namespace

BinaryMask largest_component(const LabeledComponents& lc) {
    if (lc.count == 0)
        throw ValidationError("empty segmentation: no foreground components");
    return mask_of_labels(lc, largest_labels(lc, 1));
}

BinaryMask top_k_components(const LabeledComponents& lc, int k) {
    if (lc.count == 0)
        throw ValidationError("empty segmentation: no foreground components");
    if (k < 1)
        throw ValidationError("top_k_components: k must be >= 1");
    return mask_of_labels(lc, largest_labels(lc, k));
}

ThresholdSpec ThresholdSpec::parse(const std::string& text) {
    if (text == "otsu")
        return ThresholdSpec{Kind::otsu, 0.0};
    if (text.rfind("fixed:", 0) == 0) {
        double v = 0.0;
        try {
            v = std::stod(text.substr(6));
        } catch (const std::exception&) {
            throw ValidationError("bad threshold spec `" + text + "`");
        }
        if (v < 0.0 || v > 1.0)
            throw ValidationError("fixed threshold must be in [0,1]");
        return ThresholdSpec{Kind::fixed, v};
    }
    throw ValidationError("bad threshold spec `" + text + "` (want otsu or fixed:<v>)");
}

std::string ThresholdSpec::str() const {
    return kind == Kind::otsu ? "otsu" : "fixed:" + std::to_string(value);
}

BinaryMask segment(const ImageFrame& mode_image, const SegmentationOptions& opts) {
    const ImageFrame norm = normalize01(mode_image);
    const double thr =
        opts.threshold.kind == ThresholdSpec::Kind::otsu ? otsu_threshold(norm) : opts.threshold.value;
    const BinaryMask fg = binarize(norm, thr);
    const LabeledComponents lc = connected_components(fg, opts.connectivity);
    return top_k_components(lc, opts.top_k);
}

} // namespace dmdseg
