#ifndef DMDSEG_MODE_ORDERING_HPP
#define DMDSEG_MODE_ORDERING_HPP

#include <iosfwd>

#include "dmdseg/dmd.hpp"

namespace dmdseg {

struct OrderedMode {
    int original_index = 0; // column in DmdResult::modes
    Complex eigenvalue;
    double phase = 0.0; // |atan2(Im, Re)| in [0, pi]
};

/// Modes with one member of each conjugate pair removed, sorted ascending
/// by absolute phase angle. Entry k-1 is "mode-k".
struct OrderedModes {
    std::vector<OrderedMode> entries;
};

/// Canonical ordering: the conjugate-pair member with negative imaginary
/// part is discarded (pairing tolerance 1e-8), survivors sort by ascending
/// |phase|, ties by descending |sigma|, then by original index.
OrderedModes order_modes(const DmdResult& result);

/// 1-based selection of the k-th ordered mode's column.
ComplexVector select_mode(const DmdResult& result, const OrderedModes& ordered, int k);

/// Element-wise complex modulus of a mode column, reshaped to an image.
/// Invariant under multiplication of the column by any unit complex scalar.
ImageFrame mode_to_image(const ComplexVector& mode_column, int width, int height);

/// Debug spectrum dump, one row per ordered mode:
/// index,re_sigma,im_sigma,abs_sigma,phase,re_mu,im_mu,amplitude_abs
void write_spectrum_csv(std::ostream& out, const DmdResult& result, const OrderedModes& ordered);

} // namespace dmdseg

#endif
