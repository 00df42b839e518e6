#include <doctest.h>

#include <fstream>

#include "dmdseg/image.hpp"
#include "dmdseg/pgm.hpp"
#include "helpers.hpp"

using namespace dmdseg;
using dmdseg::testing::TempDir;

TEST_CASE("flatten scans frames row-major into columns") {
    Vector px(4);
    px << 1, 2, 3, 4;
    ImageSequence seq({ImageFrame(2, 2, px)}, 1.0);
    const Matrix data = flatten(seq);
    REQUIRE(data.rows() == 4);
    REQUIRE(data.cols() == 1);
    CHECK(data(0, 0) == 1);
    CHECK(data(1, 0) == 2);
    CHECK(data(2, 0) == 3);
    CHECK(data(3, 0) == 4);
}

TEST_CASE("flatten shape is mn x N") {
    std::vector<ImageFrame> frames;
    for (int i = 0; i < 7; ++i)
        frames.emplace_back(3, 5, Vector::Constant(15, i));
    const Matrix data = flatten(ImageSequence(std::move(frames), 0.5));
    CHECK(data.rows() == 15);
    CHECK(data.cols() == 7);
}

TEST_CASE("unflatten inverts column extraction") {
    Vector col(4);
    col << 1, 2, 3, 4;
    const ImageFrame img = unflatten(col, 2, 2);
    CHECK(img(0, 0) == 1);
    CHECK(img(0, 1) == 2);
    CHECK(img(1, 0) == 3);
    CHECK(img(1, 1) == 4);

    CHECK(unflatten(Vector::Zero(6), 3, 2).pixels.isZero());
    CHECK_THROWS_AS(unflatten(Vector::Zero(5), 2, 2), ValidationError);
}

TEST_CASE("flatten/unflatten round trip is exact for random shapes") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dim(1, 17);
    for (int it = 0; it < 50; ++it) {
        const int w = dim(rng), h = dim(rng);
        std::vector<ImageFrame> frames;
        const int n = 1 + dim(rng) % 6;
        for (int k = 0; k < n; ++k)
            frames.push_back(dmdseg::testing::random_frame(rng, w, h));
        const ImageSequence seq(frames, 2.0);
        const ImageSequence back = unflatten_all(flatten(seq), w, h, 2.0);
        REQUIRE(back.frame_count() == n);
        for (int k = 0; k < n; ++k)
            CHECK(back.frames[k].pixels == seq.frames[k].pixels);
    }
}

TEST_CASE("frame and sequence invariants are enforced") {
    CHECK_THROWS_AS(ImageFrame(2, 2, Vector::Zero(3)), ValidationError);
    Vector bad(1);
    bad << std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ImageFrame(1, 1, bad), ValidationError);

    std::vector<ImageFrame> mixed{ImageFrame(2, 2, Vector::Zero(4)), ImageFrame(3, 2, Vector::Zero(6))};
    CHECK_THROWS_WITH_AS(ImageSequence(std::move(mixed), 1.0), "dimension mismatch at frame 2",
                         ValidationError);
    CHECK_THROWS_AS(ImageSequence({ImageFrame(1, 1, Vector::Zero(1))}, 0.0), ValidationError);
}

TEST_CASE("pgm round trip: masks and 16-bit frames") {
    TempDir tmp("pgm");
    BinaryMask mask(3, 2);
    mask.set(0, 1, true);
    mask.set(1, 2, true);
    write_mask_pgm(tmp.path / "m.pgm", mask);
    const BinaryMask back = read_mask_pgm(tmp.path / "m.pgm");
    CHECK(back.bits == mask.bits);

    Vector px(6);
    px << 0, 13.25, 500, 65535, 7, 42;
    write_pgm16(tmp.path / "f.pgm", ImageFrame(3, 2, px), 0.0, 65535.0);
    const ImageFrame fr = read_pgm(tmp.path / "f.pgm");
    CHECK(fr.pixels[0] == 0);
    CHECK(fr.pixels[1] == 13); // rounded
    CHECK(fr.pixels[2] == 500);
    CHECK(fr.pixels[3] == 65535);
}

TEST_CASE("ascii P2 frames read with comments") {
    TempDir tmp("p2");
    std::ofstream out(tmp.path / "a.pgm");
    out << "P2 # ascii\n# full-line comment\n3 1\n255\n0 128 255\n";
    out.close();
    const ImageFrame fr = read_pgm(tmp.path / "a.pgm");
    REQUIRE(fr.width == 3);
    CHECK(fr.pixels[1] == 128);
}

TEST_CASE("ill-formed pgm files are rejected") {
    TempDir tmp("badpgm");
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(tmp.path / name, std::ios::binary);
        out << content;
    };
    write("magic.pgm", "P6\n1 1\n255\nx");
    CHECK_THROWS_AS(read_pgm(tmp.path / "magic.pgm"), IoError);
    write("maxval.pgm", "P2\n1 1\n70000\n1");
    CHECK_THROWS_AS(read_pgm(tmp.path / "maxval.pgm"), IoError);
    write("short.pgm", "P5\n4 4\n255\nab");
    CHECK_THROWS_AS(read_pgm(tmp.path / "short.pgm"), IoError);
    CHECK_THROWS_AS(read_pgm(tmp.path / "missing.pgm"), IoError);
}

TEST_CASE("load_sequence from a directory preserves count and order") {
    TempDir tmp("loaddir");
    Vector px = Vector::Constant(4096, 3.0);
    for (int i = 0; i < 100; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "img_%03d.pgm", i);
        write_pgm16(tmp.path / name, ImageFrame(64, 64, px), 0.0, 65535.0);
    }
    const ImageSequence seq = load_sequence(tmp.path, 2.5);
    CHECK(seq.frame_count() == 100);
    CHECK(seq.frames.front().size() == 4096);
    CHECK(seq.delta_t == 2.5);
}

TEST_CASE("load_sequence error paths") {
    TempDir tmp("loaderr");
    CHECK_THROWS_WITH_AS(load_sequence(tmp.path), "no frames found", IoError);
    CHECK_THROWS_AS(load_sequence(tmp.path / "nope"), IoError);

    write_pgm16(tmp.path / "a.pgm", ImageFrame(2, 2, Vector::Zero(4)), 0.0, 1.0);
    write_pgm16(tmp.path / "b.pgm", ImageFrame(3, 2, Vector::Zero(6)), 0.0, 1.0);
    CHECK_THROWS_WITH_AS(load_sequence(tmp.path), "dimension mismatch at frame 2", ValidationError);
}

TEST_CASE("manifest defines order and delta_t") {
    TempDir tmp("manifest");
    write_pgm16(tmp.path / "x.pgm", ImageFrame(2, 1, Vector::Constant(2, 1.0)), 0.0, 65535.0);
    write_pgm16(tmp.path / "y.pgm", ImageFrame(2, 1, Vector::Constant(2, 0.5)), 0.0, 65535.0);
    std::ofstream out(tmp.path / "sequence.toml");
    out << "# comment line\ndelta_t_seconds = 2.875\nframe = y.pgm\nframe = x.pgm\n";
    out.close();

    const ImageSequence seq = load_sequence(tmp.path);
    REQUIRE(seq.frame_count() == 2);
    CHECK(seq.delta_t == doctest::Approx(2.875));
    CHECK(seq.frames[0].pixels[0] < seq.frames[1].pixels[0]); // manifest order, not lexicographic

    const ImageSequence overridden = load_sequence(tmp.path / "sequence.toml", 9.0);
    CHECK(overridden.delta_t == 9.0);
}
