#ifndef DMDSEG_QUANTIFICATION_HPP
#define DMDSEG_QUANTIFICATION_HPP

#include <filesystem>
#include <iosfwd>

#include "dmdseg/image.hpp"

namespace dmdseg {

/// Mean masked intensity per frame: the quantified organ function.
struct TimeIntensityCurve {
    Vector values;            // one per frame, source intensity units
    Vector times;             // seconds, k * delta_t
    std::int64_t mask_area = 0; // 0 when loaded from CSV (unknown)
};

/// values[k] = sum of frame k over mask pixels / mask area.
TimeIntensityCurve apply_template(const ImageSequence& seq, const BinaryMask& mask);

/// Min-max normalization onto [0,1]; a constant curve maps to all zeros.
TimeIntensityCurve normalize_curve(const TimeIntensityCurve& curve);

/// CSV with header `t_seconds,mean_intensity`, full double precision.
void write_curve_csv(std::ostream& out, const TimeIntensityCurve& curve);
void write_curve_csv(const std::filesystem::path& path, const TimeIntensityCurve& curve);
TimeIntensityCurve read_curve_csv(const std::filesystem::path& path);

} // namespace dmdseg

#endif
