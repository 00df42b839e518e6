#ifndef DMDSEG_PGM_HPP
#define DMDSEG_PGM_HPP

#include <filesystem>

#include "dmdseg/image.hpp"

namespace dmdseg {

/// Reads a binary (P5) or ASCII (P2) PGM file, maxval up to 65535.
/// 16-bit P5 samples are big-endian. Values are promoted to double
/// without rescaling.
ImageFrame read_pgm(const std::filesystem::path& path);

/// Reads a PGM as a mask: nonzero sample -> true.
BinaryMask read_mask_pgm(const std::filesystem::path& path);

/// Writes a mask as binary P5 with values {0, 255}.
void write_mask_pgm(const std::filesystem::path& path, const BinaryMask& mask);

/// Writes a frame as 16-bit binary P5, min-max normalized onto 0..65535.
/// A constant frame writes as all zeros.
void write_normalized_pgm16(const std::filesystem::path& path, const ImageFrame& frame);

/// Writes a frame as 16-bit binary P5 with a caller-chosen affine map
/// value -> (value - lo) / (hi - lo) * 65535, clamped to [0, 65535].
void write_pgm16(const std::filesystem::path& path, const ImageFrame& frame,
                 double lo, double hi);

} // namespace dmdseg

#endif
