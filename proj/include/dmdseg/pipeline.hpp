#ifndef DMDSEG_PIPELINE_HPP
#define DMDSEG_PIPELINE_HPP

#include "dmdseg/dmd.hpp"
#include "dmdseg/mode_ordering.hpp"
#include "dmdseg/quantification.hpp"
#include "dmdseg/segmentation.hpp"

namespace dmdseg {

struct PipelineOptions {
    int mode_k = 2; // 1-based ordered mode index
    double svd_cutoff = 1e-10;
    SegmentationOptions segmentation;
};

struct PipelineResult {
    DmdResult dmd;
    OrderedModes ordered;
    int mode_k = 0;
    ImageFrame mode_image;
    double threshold = 0.0;
    BinaryMask binarized; // after thresholding, before component selection
    BinaryMask mask;      // final template
    TimeIntensityCurve curve;
};

/// End-to-end run: decomposition, phase-angle ordering, mode-k image,
/// threshold/binarize/component selection, and projection of the template
/// back onto the sequence. Requires at least 4 frames.
PipelineResult run_segmentation_pipeline(const ImageSequence& seq,
                                         const PipelineOptions& opts = {});

/// 1-based index of the ordered mode whose magnitude image has the
/// largest mean over `region` — the data-driven way to locate an organ's
/// mode when a reference region is available.
int pick_mode_by_region_mean(const DmdResult& result, const OrderedModes& ordered,
                             const BinaryMask& region);

} // namespace dmdseg

#endif
