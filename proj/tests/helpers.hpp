#ifndef DMDSEG_TESTS_HELPERS_HPP
#define DMDSEG_TESTS_HELPERS_HPP

// Shared test utilities and independent oracles. The oracles deliberately
// avoid the library code paths they are used to check.

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <vector>

#include "dmdseg/image.hpp"

namespace dmdseg::testing {

// ---- scratch directories ----

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("dmdseg_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

// ---- random inputs ----

inline BinaryMask random_mask(std::mt19937& rng, int width, int height, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    BinaryMask mask(width, height);
    for (auto& b : mask.bits)
        b = bit(rng) ? 1 : 0;
    return mask;
}

inline ImageFrame random_frame(std::mt19937& rng, int width, int height) {
    std::uniform_real_distribution<double> val(0.0, 1.0);
    Vector px(static_cast<Eigen::Index>(width) * height);
    for (Eigen::Index i = 0; i < px.size(); ++i)
        px[i] = val(rng);
    return ImageFrame(width, height, px);
}

// ---- brute-force connected components (oracle) ----
//
// Recursive-style flood fill over an explicit stack, seeded in reverse
// raster order, then canonicalized to a partition: a set of pixel-index
// sets, one per component.

inline std::set<std::set<int>> flood_fill_partition(const BinaryMask& mask, int connectivity) {
    const int w = mask.width, h = mask.height;
    std::vector<char> seen(mask.bits.size(), 0);
    std::set<std::set<int>> partition;
    for (int start = static_cast<int>(mask.bits.size()) - 1; start >= 0; --start) {
        if (!mask.bits[static_cast<std::size_t>(start)] || seen[static_cast<std::size_t>(start)])
            continue;
        std::set<int> comp;
        std::vector<int> stack{start};
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const int idx = stack.back();
            stack.pop_back();
            comp.insert(idx);
            const int r = idx / w, c = idx % w;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0)
                        continue;
                    if (connectivity == 4 && dr != 0 && dc != 0)
                        continue;
                    const int nr = r + dr, nc = c + dc;
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w)
                        continue;
                    const int nidx = nr * w + nc;
                    if (mask.bits[static_cast<std::size_t>(nidx)] && !seen[static_cast<std::size_t>(nidx)]) {
                        seen[static_cast<std::size_t>(nidx)] = 1;
                        stack.push_back(nidx);
                    }
                }
            }
        }
        partition.insert(std::move(comp));
    }
    return partition;
}

// ---- brute-force Otsu (oracle) ----
//
// For every candidate bin t, sums counts and moments of both classes from
// scratch; all class statistics are exact integers, so the score matches
// the production code bit for bit and ties resolve identically.

inline int otsu_bruteforce_bin(const std::array<std::int64_t, 256>& hist) {
    int best = 0;
    double best_var = -1.0;
    for (int t = 0; t < 256; ++t) {
        std::int64_t w0 = 0, w1 = 0, m0 = 0, m1 = 0;
        for (int b = 0; b <= t; ++b) {
            w0 += hist[static_cast<std::size_t>(b)];
            m0 += static_cast<std::int64_t>(b) * hist[static_cast<std::size_t>(b)];
        }
        for (int b = t + 1; b < 256; ++b) {
            w1 += hist[static_cast<std::size_t>(b)];
            m1 += static_cast<std::int64_t>(b) * hist[static_cast<std::size_t>(b)];
        }
        double var = 0.0;
        if (w0 > 0 && w1 > 0) {
            const double mu0 = static_cast<double>(m0) / static_cast<double>(w0);
            const double mu1 = static_cast<double>(m1) / static_cast<double>(w1);
            var = static_cast<double>(w0) * static_cast<double>(w1) * (mu0 - mu1) * (mu0 - mu1);
        }
        if (var > best_var) {
            best_var = var;
            best = t;
        }
    }
    return best;
}

// ---- random diagonalizable linear systems ----

struct LinearSystem {
    Matrix a;                           // real dim x dim propagator
    std::vector<std::complex<double>> eigenvalues; // ground truth
};

// Spectrum of well-separated reals and conjugate pairs with magnitudes in
// [0.7, 1.05], mapped to a real block-diagonal form and conjugated by a
// random well-conditioned similarity.
inline LinearSystem random_linear_system(std::mt19937& rng, int dim) {
    std::uniform_real_distribution<double> mag(0.7, 1.05);
    std::uniform_real_distribution<double> angle(0.1, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<std::complex<double>> eigs;
    while (true) {
        eigs.clear();
        while (static_cast<int>(eigs.size()) < dim) {
            const double m = mag(rng);
            if (unit(rng) < 0.5 || static_cast<int>(eigs.size()) + 2 > dim) {
                eigs.emplace_back(unit(rng) < 0.8 ? m : -m, 0.0);
            } else {
                const double th = angle(rng);
                eigs.emplace_back(m * std::cos(th), m * std::sin(th));
                eigs.emplace_back(m * std::cos(th), -m * std::sin(th));
            }
        }
        bool separated = true;
        for (std::size_t i = 0; i < eigs.size() && separated; ++i)
            for (std::size_t j = i + 1; j < eigs.size(); ++j)
                if (std::abs(eigs[i] - eigs[j]) < 0.05) {
                    separated = false;
                    break;
                }
        if (separated)
            break;
    }

    Matrix block = Matrix::Zero(dim, dim);
    int i = 0;
    for (const auto& lam : eigs) {
        if (lam.imag() > 0) {
            block(i, i) = lam.real();
            block(i, i + 1) = lam.imag();
            block(i + 1, i) = -lam.imag();
            block(i + 1, i + 1) = lam.real();
            i += 2;
        } else if (lam.imag() == 0) {
            block(i, i) = lam.real();
            i += 1;
        }
    }

    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            g(r, c) = gauss(rng);
    const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
    Matrix r2(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            r2(r, c) = gauss(rng);
    const Matrix s = q * (0.2 * r2 + Matrix::Identity(dim, dim));

    return LinearSystem{s * block * s.inverse(), std::move(eigs)};
}

// Snapshot matrix x_{k+1} = A x_k from a random start.
inline Matrix propagate(std::mt19937& rng, const Matrix& a, int snapshots) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix x(a.rows(), snapshots);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        x(i, 0) = gauss(rng);
    for (int k = 1; k < snapshots; ++k)
        x.col(k) = a * x.col(k - 1);
    return x;
}

inline double hausdorff(const std::vector<std::complex<double>>& a,
                        const std::vector<std::complex<double>>& b) {
    auto one_sided = [](const auto& from, const auto& to) {
        double worst = 0.0;
        for (const auto& x : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& y : to)
                best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

// ---- binary morphology (pseudo-expert construction) ----

inline BinaryMask morph(const BinaryMask& mask, bool dilate) {
    BinaryMask out(mask.width, mask.height);
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            bool hit = dilate ? false : true;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const int nr = r + dr, nc = c + dc;
                    const bool v = nr >= 0 && nr < mask.height && nc >= 0 && nc < mask.width
                                       ? mask.at(nr, nc)
                                       : false;
                    if (dilate)
                        hit = hit || v;
                    else
                        hit = hit && v;
                }
            }
            out.set(r, c, hit);
        }
    }
    return out;
}

inline BinaryMask dilate(const BinaryMask& m) { return morph(m, true); }
inline BinaryMask erode(const BinaryMask& m) { return morph(m, false); }

// Seeded random flips restricted to the mask boundary.
inline BinaryMask jitter_boundary(const BinaryMask& mask, std::uint32_t seed, double rate = 0.3) {
    std::mt19937 rng(seed);
    std::bernoulli_distribution flip(rate);
    const BinaryMask er = erode(mask), di = dilate(mask);
    BinaryMask out = mask;
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        const bool boundary = di.bits[i] != er.bits[i];
        if (boundary && flip(rng))
            out.bits[i] ^= 1;
    }
    return out;
}

} // namespace dmdseg::testing

#endif
