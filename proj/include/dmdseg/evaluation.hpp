#ifndef DMDSEG_EVALUATION_HPP
#define DMDSEG_EVALUATION_HPP

#include <iosfwd>
#include <optional>

#include "dmdseg/image.hpp"
#include "dmdseg/quantification.hpp"

namespace dmdseg {

/// Jaccard similarity |A ∩ B| / |A ∪ B| of two equal-sized masks.
/// Two empty masks compare as 1 (equal sets); empty vs nonempty is 0.
double jaccard(const BinaryMask& a, const BinaryMask& b);

/// Cross-expert ground truths: g_i is the mutual agreement (intersection)
/// of the two experts other than expert i.
struct GroundTruthSet {
    BinaryMask g1, g2, g3;
};

GroundTruthSet build_ground_truths(const BinaryMask& e1, const BinaryMask& e2,
                                   const BinaryMask& e3);

/// E_i = J(e_i, G_i), expert i scored against the agreement of the other
/// two experts.
double score_expert(const BinaryMask& e_i, const BinaryMask& g_i);

struct DmdScores {
    double d1 = 0, d2 = 0, d3 = 0;
    double mean = 0;
};

/// D_i = J(d, G_i) and their arithmetic mean.
DmdScores score_dmd(const BinaryMask& d, const GroundTruthSet& gts);

/// Filled axis-aligned rectangle tightly enclosing e1 ∪ e2 ∪ e3.
/// Throws ValidationError when all three are empty.
BinaryMask bounding_box_mask(const BinaryMask& e1, const BinaryMask& e2,
                             const BinaryMask& e3);

/// (1/N) Σ (a_k - b_k)^2 over curve values. Callers comparing curves from
/// different masks normalize both with normalize_curve first.
double mse(const TimeIntensityCurve& a, const TimeIntensityCurve& b);

/// One evaluation row mirroring the published table layout. MSE fields are
/// present only when a sequence was available to project curves from.
struct EvaluationReport {
    DmdScores dmd;
    double e1 = 0, e2 = 0, e3 = 0;
    double bbox = 0;
    std::optional<double> mse_dmd;            // mean over the three G_i curves
    std::optional<double> mse_e1, mse_e2, mse_e3; // expert i vs G_i curve
    std::optional<double> mse_bbox;           // mean over the three G_i curves
    std::optional<double> mse_bbox_g1, mse_bbox_g2, mse_bbox_g3;
};

/// Builds the full report from a DMD mask and three expert masks; when a
/// sequence is given, time-intensity curves are projected through every
/// mask and compared (min-max normalized) with MSE.
EvaluationReport evaluate(const BinaryMask& dmd_mask, const BinaryMask& e1,
                          const BinaryMask& e2, const BinaryMask& e3,
                          const ImageSequence* seq = nullptr);

void write_report_csv(std::ostream& out, const EvaluationReport& r);
void write_report_table(std::ostream& out, const EvaluationReport& r);

} // namespace dmdseg

#endif
