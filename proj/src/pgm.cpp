#include "dmdseg/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>

namespace dmdseg {

namespace {

// Next non-comment token: `#` comments run to end of line.
std::string next_token(std::istream& in, const std::string& file) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
        } else if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
                tok.push_back(static_cast<char>(in.get()));
            return tok;
        }
    }
    throw IoError("ill-formed PGM (unexpected end of header): " + file);
}

long parse_int(std::istream& in, const std::string& file) {
    const std::string tok = next_token(in, file);
    try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw IoError("ill-formed PGM (bad integer `" + tok + "`): " + file);
    }
}

} // namespace

ImageFrame read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open frame file: " + path.string());
    const std::string file = path.string();

    const std::string magic = next_token(in, file);
    if (magic != "P5" && magic != "P2")
        throw IoError("ill-formed PGM (magic `" + magic + "`, want P5 or P2): " + file);

    const long width = parse_int(in, file);
    const long height = parse_int(in, file);
    const long maxval = parse_int(in, file);
    if (width <= 0 || height <= 0)
        throw IoError("ill-formed PGM (bad dimensions): " + file);
    if (maxval <= 0 || maxval > 65535)
        throw IoError("ill-formed PGM (maxval " + std::to_string(maxval) + " out of range): " + file);

    const Eigen::Index n = static_cast<Eigen::Index>(width) * height;
    Vector pixels(n);

    if (magic == "P2") {
        for (Eigen::Index i = 0; i < n; ++i) {
            const long v = parse_int(in, file);
            if (v < 0 || v > maxval)
                throw IoError("ill-formed PGM (sample out of range): " + file);
            pixels[i] = static_cast<double>(v);
        }
    } else {
        // single whitespace byte separates maxval from the raster
        in.get();
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(static_cast<std::size_t>(n) * bytes);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size()))
            throw IoError("ill-formed PGM (truncated raster): " + file);
        if (bytes == 1) {
            for (Eigen::Index i = 0; i < n; ++i)
                pixels[i] = static_cast<double>(raw[static_cast<std::size_t>(i)]);
        } else {
            for (Eigen::Index i = 0; i < n; ++i) {
                const std::size_t o = static_cast<std::size_t>(i) * 2;
                pixels[i] = static_cast<double>((raw[o] << 8) | raw[o + 1]); // big-endian
            }
        }
    }
    return ImageFrame(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

BinaryMask read_mask_pgm(const std::filesystem::path& path) {
    const ImageFrame img = read_pgm(path);
    BinaryMask mask(img.width, img.height);
    for (Eigen::Index i = 0; i < img.size(); ++i)
        mask.bits[static_cast<std::size_t>(i)] = img.pixels[i] != 0.0 ? 1 : 0;
    return mask;
}

void write_mask_pgm(const std::filesystem::path& path, const BinaryMask& mask) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write mask file: " + path.string());
    out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
    std::vector<unsigned char> raw(mask.bits.size());
    for (std::size_t i = 0; i < mask.bits.size(); ++i)
        raw[i] = mask.bits[i] ? 255 : 0;
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out)
        throw IoError("write failed: " + path.string());
}

void write_pgm16(const std::filesystem::path& path, const ImageFrame& frame,
                 double lo, double hi) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write frame file: " + path.string());
    out << "P5\n" << frame.width << " " << frame.height << "\n65535\n";
    const double span = hi - lo;
    std::vector<unsigned char> raw(static_cast<std::size_t>(frame.size()) * 2);
    for (Eigen::Index i = 0; i < frame.size(); ++i) {
        double v = span > 0 ? (frame.pixels[i] - lo) / span * 65535.0 : 0.0;
        v = std::clamp(v, 0.0, 65535.0);
        const auto q = static_cast<std::uint16_t>(std::llround(v));
        raw[static_cast<std::size_t>(i) * 2] = static_cast<unsigned char>(q >> 8);
        raw[static_cast<std::size_t>(i) * 2 + 1] = static_cast<unsigned char>(q & 0xff);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out)
        throw IoError("write failed: " + path.string());
}

void write_normalized_pgm16(const std::filesystem::path& path, const ImageFrame& frame) {
    write_pgm16(path, frame, frame.pixels.minCoeff(), frame.pixels.maxCoeff());
}

} // namespace dmdseg
