#include "dmdseg/quantification.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace dmdseg {

TimeIntensityCurve apply_template(const ImageSequence& seq, const BinaryMask& mask) {
    if (mask.width != seq.width() || mask.height != seq.height())
        throw ValidationError("apply_template: mask dimensions do not match frames");
    const std::int64_t area = mask.count();
    if (area == 0)
        throw ValidationError("apply_template: empty mask");

    TimeIntensityCurve curve;
    curve.mask_area = area;
    curve.values.resize(seq.frame_count());
    curve.times.resize(seq.frame_count());
    for (int k = 0; k < seq.frame_count(); ++k) {
        double sum = 0.0;
        const Vector& px = seq.frames[static_cast<std::size_t>(k)].pixels;
        for (std::size_t i = 0; i < mask.bits.size(); ++i)
            if (mask.bits[i])
                sum += px[static_cast<Eigen::Index>(i)];
        curve.values[k] = sum / static_cast<double>(area);
        curve.times[k] = k * seq.delta_t;
    }
    return curve;
}

TimeIntensityCurve normalize_curve(const TimeIntensityCurve& curve) {
    TimeIntensityCurve out = curve;
    const double lo = curve.values.minCoeff();
    const double hi = curve.values.maxCoeff();
    if (hi == lo)
        out.values.setZero();
    else
        out.values = (curve.values.array() - lo) / (hi - lo);
    return out;
}

void write_curve_csv(std::ostream& out, const TimeIntensityCurve& curve) {
    out << "t_seconds,mean_intensity\n" << std::setprecision(17);
    for (Eigen::Index k = 0; k < curve.values.size(); ++k)
        out << curve.times[k] << ',' << curve.values[k] << '\n';
}

void write_curve_csv(const std::filesystem::path& path, const TimeIntensityCurve& curve) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write curve file: " + path.string());
    write_curve_csv(out, curve);
    if (!out)
        throw IoError("write failed: " + path.string());
}

TimeIntensityCurve read_curve_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open curve file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("t_seconds,mean_intensity", 0) != 0)
        throw IoError("bad curve CSV header in " + path.string());

    std::vector<double> times, values;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream row(line);
        double t = 0, v = 0;
        char comma = 0;
        if (!(row >> t >> comma >> v) || comma != ',')
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad curve row");
        times.push_back(t);
        values.push_back(v);
    }
    if (values.empty())
        throw IoError("empty curve file: " + path.string());

    TimeIntensityCurve curve;
    curve.times = Eigen::Map<const Vector>(times.data(), static_cast<Eigen::Index>(times.size()));
    curve.values = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
    curve.mask_area = 0;
    return curve;
}

} // namespace dmdseg
