#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>

#include "dmdseg/mode_ordering.hpp"

using namespace dmdseg;

namespace {

// DmdResult stub with given eigenvalues and arbitrary distinct mode columns.
DmdResult make_result(const std::vector<Complex>& eigs) {
    DmdResult r;
    const auto n = static_cast<Eigen::Index>(eigs.size());
    r.rank = static_cast<int>(n);
    r.eigenvalues.resize(n);
    r.modes.resize(4, n);
    r.frequencies.resize(n);
    r.amplitudes = ComplexVector::Ones(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        r.eigenvalues[j] = eigs[static_cast<std::size_t>(j)];
        r.modes.col(j).setConstant(Complex(static_cast<double>(j + 1), 0));
        r.frequencies[j] = std::log(eigs[static_cast<std::size_t>(j)]);
    }
    return r;
}

} // namespace

TEST_CASE("conjugate pairs deduplicate and sort by phase") {
    const DmdResult r = make_result({{0.9, 0.0}, {0.5, 0.5}, {0.5, -0.5}});
    const OrderedModes ordered = order_modes(r);
    REQUIRE(ordered.entries.size() == 2);
    CHECK(ordered.entries[0].eigenvalue == Complex(0.9, 0.0));
    CHECK(ordered.entries[0].phase == 0.0);
    CHECK(ordered.entries[1].eigenvalue == Complex(0.5, 0.5)); // nonnegative member kept
    CHECK(ordered.entries[1].phase == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("all-real spectra tie-break by descending magnitude") {
    const DmdResult r = make_result({{0.2, 0.0}, {0.7, 0.0}, {1.0, 0.0}});
    const OrderedModes ordered = order_modes(r);
    REQUIRE(ordered.entries.size() == 3);
    CHECK(ordered.entries[0].eigenvalue.real() == 1.0);
    CHECK(ordered.entries[1].eigenvalue.real() == 0.7);
    CHECK(ordered.entries[2].eigenvalue.real() == 0.2);
}

TEST_CASE("a negative real eigenvalue (phase pi) sorts last") {
    const DmdResult r = make_result({{-0.5, 0.0}, {0.3, 0.4}, {0.3, -0.4}, {1.0, 0.0}});
    const OrderedModes ordered = order_modes(r);
    REQUIRE(ordered.entries.size() == 3);
    CHECK(ordered.entries[0].eigenvalue == Complex(1.0, 0.0));
    CHECK(ordered.entries[1].eigenvalue == Complex(0.3, 0.4));
    CHECK(ordered.entries[2].eigenvalue == Complex(-0.5, 0.0));
}

TEST_CASE("select_mode is 1-based and bounds-checked") {
    const DmdResult r = make_result({{1.0, 0.0}, {0.5, 0.0}});
    const OrderedModes ordered = order_modes(r);
    const ComplexVector top = select_mode(r, ordered, 1);
    CHECK(top == r.modes.col(0)); // sigma = 1 mode comes first

    CHECK_THROWS_AS(select_mode(r, ordered, 0), ValidationError);
    CHECK_THROWS_WITH_AS(select_mode(r, ordered, 5),
                         "mode index 5 out of range: 2 ordered modes available", ValidationError);
}

TEST_CASE("mode_to_image takes the element-wise modulus") {
    ComplexVector col(2);
    col << Complex(-1, 0), Complex(2, 0);
    const ImageFrame img = mode_to_image(col, 2, 1);
    CHECK(img.pixels[0] == 1.0);
    CHECK(img.pixels[1] == 2.0);

    ComplexVector imag(2);
    imag << Complex(0, 1), Complex(0, 1);
    CHECK(mode_to_image(imag, 1, 2).pixels.isOnes());

    CHECK_THROWS_AS(mode_to_image(col, 3, 1), ValidationError);
}

TEST_CASE("modulus image is invariant under a global unit phase") {
    std::mt19937 rng(31);
    std::normal_distribution<double> val(0.0, 1.0);
    std::uniform_real_distribution<double> theta(0.0, 2 * std::numbers::pi);
    for (int it = 0; it < 20; ++it) {
        ComplexVector col(12);
        for (Eigen::Index i = 0; i < col.size(); ++i)
            col[i] = Complex(val(rng), val(rng));
        const Complex rot = std::polar(1.0, theta(rng));
        const ImageFrame a = mode_to_image(col, 4, 3);
        const ImageFrame b = mode_to_image(rot * col, 4, 3);
        CHECK((a.pixels - b.pixels).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("ordering is canonical under input permutation") {
    std::mt19937 rng(67);
    std::uniform_real_distribution<double> mag(0.1, 1.2);
    std::uniform_real_distribution<double> ang(0.05, 3.0);
    std::bernoulli_distribution coin(0.5);

    for (int it = 0; it < 25; ++it) {
        std::vector<Complex> eigs;
        const int reals = 1 + static_cast<int>(rng() % 3);
        const int pairs = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < reals; ++i)
            eigs.emplace_back(coin(rng) ? mag(rng) : -mag(rng), 0.0);
        for (int i = 0; i < pairs; ++i) {
            const double m = mag(rng), th = ang(rng);
            eigs.emplace_back(m * std::cos(th), m * std::sin(th));
            eigs.emplace_back(m * std::cos(th), -m * std::sin(th));
        }

        const OrderedModes a = order_modes(make_result(eigs));
        std::shuffle(eigs.begin(), eigs.end(), rng);
        const OrderedModes b = order_modes(make_result(eigs));

        // dedup count: one entry per real eigenvalue plus one per pair
        REQUIRE(a.entries.size() == static_cast<std::size_t>(reals + pairs));
        REQUIRE(b.entries.size() == a.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            CHECK(std::abs(a.entries[i].eigenvalue - b.entries[i].eigenvalue) < 1e-12);
            if (i > 0)
                CHECK(a.entries[i].phase >= a.entries[i - 1].phase);
        }
        // no two survivors are conjugates of each other
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            for (std::size_t j = i + 1; j < a.entries.size(); ++j) {
                const Complex ci = a.entries[i].eigenvalue;
                const Complex cj = a.entries[j].eigenvalue;
                if (std::abs(ci.imag()) > 1e-8)
                    CHECK(std::abs(std::conj(ci) - cj) > 1e-8);
            }
    }
}

TEST_CASE("spectrum csv lists ordered modes with the documented header") {
    const DmdResult r = make_result({{0.8, 0.0}, {0.2, 0.6}, {0.2, -0.6}});
    const OrderedModes ordered = order_modes(r);
    std::ostringstream out;
    write_spectrum_csv(out, r, ordered);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,re_sigma,im_sigma,abs_sigma,phase,re_mu,im_mu,amplitude_abs");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty())
            ++rows;
    CHECK(rows == 2);
}
