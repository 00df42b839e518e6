#include "dmdseg/mode_ordering.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace dmdseg {

namespace {
constexpr double kPairTolerance = 1e-8;
}

OrderedModes order_modes(const DmdResult& result) {
    const Eigen::Index n = result.eigenvalues.size();
    if (n < 1)
        throw ValidationError("order_modes: need at least one mode");

    // Pair each negative-imaginary eigenvalue with its closest unpaired
    // conjugate and drop it, keeping the nonnegative-imaginary member.
    std::vector<bool> paired(static_cast<std::size_t>(n), false);
    std::vector<bool> drop(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (paired[i] || result.eigenvalues[i].imag() >= 0.0)
            continue;
        Eigen::Index best = -1;
        double best_dist = kPairTolerance;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i || paired[j] || result.eigenvalues[j].imag() < 0.0)
                continue;
            const double dist = std::abs(result.eigenvalues[j] - std::conj(result.eigenvalues[i]));
            if (dist <= best_dist) {
                best = j;
                best_dist = dist;
            }
        }
        if (best >= 0) {
            paired[i] = paired[best] = true;
            drop[i] = true;
        }
    }

    OrderedModes ordered;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (drop[i])
            continue;
        const Complex ev = result.eigenvalues[i];
        ordered.entries.push_back({static_cast<int>(i), ev, std::abs(std::atan2(ev.imag(), ev.real()))});
    }
    std::sort(ordered.entries.begin(), ordered.entries.end(),
              [](const OrderedMode& a, const OrderedMode& b) {
                  if (a.phase != b.phase)
                      return a.phase < b.phase;
                  const double ma = std::abs(a.eigenvalue), mb = std::abs(b.eigenvalue);
                  if (ma != mb)
                      return ma > mb;
                  return a.original_index < b.original_index;
              });
    return ordered;
}

ComplexVector select_mode(const DmdResult& result, const OrderedModes& ordered, int k) {
    if (k < 1 || k > static_cast<int>(ordered.entries.size()))
        throw ValidationError("mode index " + std::to_string(k) + " out of range: " +
                              std::to_string(ordered.entries.size()) + " ordered modes available");
    return result.modes.col(ordered.entries[static_cast<std::size_t>(k - 1)].original_index);
}

ImageFrame mode_to_image(const ComplexVector& mode_column, int width, int height) {
    if (mode_column.size() != static_cast<Eigen::Index>(width) * height)
        throw ValidationError("mode_to_image: column length " + std::to_string(mode_column.size()) +
                              " does not match " + std::to_string(width) + "x" + std::to_string(height));
    return ImageFrame(width, height, mode_column.cwiseAbs());
}

void write_spectrum_csv(std::ostream& out, const DmdResult& result, const OrderedModes& ordered) {
    out << "index,re_sigma,im_sigma,abs_sigma,phase,re_mu,im_mu,amplitude_abs\n";
    out << std::setprecision(17);
    int k = 1;
    for (const OrderedMode& m : ordered.entries) {
        const Complex mu = result.frequencies[m.original_index];
        const Complex b = result.amplitudes[m.original_index];
        out << k++ << ',' << m.eigenvalue.real() << ',' << m.eigenvalue.imag() << ','
            << std::abs(m.eigenvalue) << ',' << m.phase << ',' << mu.real() << ',' << mu.imag()
            << ',' << std::abs(b) << '\n';
    }
}

} // namespace dmdseg
