#include "dmdseg/pipeline.hpp"

namespace dmdseg {

PipelineResult run_segmentation_pipeline(const ImageSequence& seq, const PipelineOptions& opts) {
    if (seq.frame_count() < 4)
        throw ValidationError("pipeline: need at least 4 frames, got " +
                              std::to_string(seq.frame_count()));

    PipelineResult out;
    const Matrix data = flatten(seq);
    out.dmd = run_dmd(data, seq.delta_t, opts.svd_cutoff);
    out.ordered = order_modes(out.dmd);
    out.mode_k = opts.mode_k;
    out.mode_image =
        mode_to_image(select_mode(out.dmd, out.ordered, opts.mode_k), seq.width(), seq.height());

    const ImageFrame norm = normalize01(out.mode_image);
    out.threshold = opts.segmentation.threshold.kind == ThresholdSpec::Kind::otsu
                        ? otsu_threshold(norm)
                        : opts.segmentation.threshold.value;
    out.binarized = binarize(norm, out.threshold);
    const LabeledComponents lc = connected_components(out.binarized, opts.segmentation.connectivity);
    out.mask = top_k_components(lc, opts.segmentation.top_k);
    out.curve = apply_template(seq, out.mask);
    return out;
}

int pick_mode_by_region_mean(const DmdResult& result, const OrderedModes& ordered,
                             const BinaryMask& region) {
    if (region.count() == 0)
        throw ValidationError("pick_mode_by_region_mean: empty region");
    int best_k = 1;
    double best_mean = -1.0;
    for (std::size_t i = 0; i < ordered.entries.size(); ++i) {
        const ComplexVector col = result.modes.col(ordered.entries[i].original_index);
        double sum = 0.0;
        for (std::size_t p = 0; p < region.bits.size(); ++p)
            if (region.bits[p])
                sum += std::abs(col[static_cast<Eigen::Index>(p)]);
        const double mean = sum / static_cast<double>(region.count());
        if (mean > best_mean) {
            best_mean = mean;
            best_k = static_cast<int>(i) + 1;
        }
    }
    return best_k;
}

} // namespace dmdseg
