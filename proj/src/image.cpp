#include "dmdseg/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "dmdseg/pgm.hpp"

namespace dmdseg {

namespace fs = std::filesystem;

ImageFrame::ImageFrame(int w, int h, Vector px) : width(w), height(h), pixels(std::move(px)) {
    if (width <= 0 || height <= 0)
        throw ValidationError("ImageFrame: dimensions must be positive");
    if (pixels.size() != static_cast<Eigen::Index>(width) * height)
        throw ValidationError("ImageFrame: pixel count does not match width x height");
    if (!pixels.allFinite())
        throw ValidationError("ImageFrame: non-finite intensity");
}

BinaryMask::BinaryMask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {
    if (w <= 0 || h <= 0)
        throw ValidationError("BinaryMask: dimensions must be positive");
}

std::int64_t BinaryMask::count() const {
    return std::accumulate(bits.begin(), bits.end(), std::int64_t{0});
}

bool same_shape(const BinaryMask& a, const BinaryMask& b) {
    return a.width == b.width && a.height == b.height;
}

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
    if (!same_shape(a, b))
        throw ValidationError("mask_and: dimension mismatch");
    BinaryMask out(a.width, a.height);
    for (std::size_t i = 0; i < out.bits.size(); ++i)
        out.bits[i] = a.bits[i] & b.bits[i];
    return out;
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
    if (!same_shape(a, b))
        throw ValidationError("mask_or: dimension mismatch");
    BinaryMask out(a.width, a.height);
    for (std::size_t i = 0; i < out.bits.size(); ++i)
        out.bits[i] = a.bits[i] | b.bits[i];
    return out;
}

ImageSequence::ImageSequence(std::vector<ImageFrame> fr, double dt)
    : frames(std::move(fr)), delta_t(dt) {
    if (delta_t <= 0)
        throw ValidationError("ImageSequence: delta_t must be > 0");
    for (std::size_t i = 1; i < frames.size(); ++i) {
        if (frames[i].width != frames[0].width || frames[i].height != frames[0].height)
            throw ValidationError("dimension mismatch at frame " + std::to_string(i + 1));
    }
}

Matrix flatten(const ImageSequence& seq) {
    if (seq.frames.empty())
        throw ValidationError("flatten: empty sequence");
    const Eigen::Index mn = seq.frames.front().size();
    Matrix data(mn, seq.frame_count());
    for (int r = 0; r < seq.frame_count(); ++r)
        data.col(r) = seq.frames[r].pixels;
    return data;
}

ImageFrame unflatten(const Vector& column, int width, int height) {
    if (column.size() != static_cast<Eigen::Index>(width) * height)
        throw ValidationError("unflatten: column length " + std::to_string(column.size()) +
                              " does not match " + std::to_string(width) + "x" +
                              std::to_string(height));
    return ImageFrame(width, height, column);
}

ImageSequence unflatten_all(const Matrix& data, int width, int height, double delta_t) {
    std::vector<ImageFrame> frames;
    frames.reserve(static_cast<std::size_t>(data.cols()));
    for (Eigen::Index c = 0; c < data.cols(); ++c)
        frames.push_back(unflatten(data.col(c), width, height));
    return ImageSequence(std::move(frames), delta_t);
}

namespace {

struct Manifest {
    double delta_t = 0.0;
    bool has_delta_t = false;
    std::vector<fs::path> frames;
};

// Plain-text manifest: `delta_t_seconds = <float>` plus one
// `frame = <path>` line per frame in temporal order. `#` starts a comment.
Manifest parse_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open manifest: " + path.string());
    Manifest m;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto is_space = [](unsigned char c) { return std::isspace(c); };
        line.erase(line.begin(), std::find_if_not(line.begin(), line.end(), is_space));
        line.erase(std::find_if_not(line.rbegin(), line.rend(), is_space).base(), line.end());
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected `key = value`");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        key.erase(std::find_if_not(key.rbegin(), key.rend(), is_space).base(), key.end());
        value.erase(value.begin(), std::find_if_not(value.begin(), value.end(), is_space));
        if (key == "delta_t_seconds") {
            try {
                m.delta_t = std::stod(value);
            } catch (const std::exception&) {
                throw IoError(path.string() + ":" + std::to_string(lineno) +
                              ": bad delta_t_seconds value `" + value + "`");
            }
            m.has_delta_t = true;
        } else if (key == "frame") {
            m.frames.push_back(path.parent_path() / value);
        }
        // unknown keys (generator metadata) are ignored
    }
    return m;
}

ImageSequence load_frames(const std::vector<fs::path>& files, double delta_t) {
    if (files.empty())
        throw IoError("no frames found");
    std::vector<ImageFrame> frames;
    frames.reserve(files.size());
    for (const auto& f : files)
        frames.push_back(read_pgm(f));
    for (std::size_t i = 1; i < frames.size(); ++i) {
        if (frames[i].width != frames[0].width || frames[i].height != frames[0].height)
            throw ValidationError("dimension mismatch at frame " + std::to_string(i + 1));
    }
    return ImageSequence(std::move(frames), delta_t);
}

} // namespace

ImageSequence load_sequence(const fs::path& path, std::optional<double> delta_t_override) {
    if (!fs::exists(path))
        throw IoError("no such path: " + path.string());

    fs::path manifest_path;
    if (fs::is_regular_file(path)) {
        manifest_path = path;
    } else if (fs::is_directory(path) && fs::exists(path / "sequence.toml")) {
        manifest_path = path / "sequence.toml";
    }

    if (!manifest_path.empty()) {
        Manifest m = parse_manifest(manifest_path);
        double dt = delta_t_override.value_or(m.has_delta_t ? m.delta_t : 1.0);
        return load_frames(m.frames, dt);
    }

    if (!fs::is_directory(path))
        throw IoError("not a directory or manifest: " + path.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    return load_frames(files, delta_t_override.value_or(1.0));
}

} // namespace dmdseg
